#pragma once

#include <ostream>

#include "colombeau/format.hpp"
#include "colombeau/gsf.hpp"

namespace colombeau {

// Structured evidence forms used inside report documents.
SExpr ternary_form(Ternary t);
SExpr member_form(Member m);
SExpr valuation_form(const ValuationEstimate& v);
SExpr classification_form(const Classification& c);

// CSV sample tables for external plotting. Magnitude tables carry a
// log-domain column alongside the raw value.
void write_net_csv(std::ostream& os, const NetExpr& net, const EpsGrid& grid);
void write_distance_csv(std::ostream& os, const GenNumber& x, const GenNumber& y,
                        const EpsGrid& grid);
// Difference-quotient decay table: one row per probed order k.
void write_ratio_csv(std::ostream& os, const AfjProbe& probe);

}  // namespace colombeau
