#pragma once

#include <map>
#include <string>

#include "colombeau/gsf.hpp"
#include "colombeau/sexpr.hpp"
#include "colombeau/topology.hpp"

namespace colombeau {

// Shortest decimal form that parses back to the same double; "inf", "-inf"
// and "nan" for the non-finite values.
std::string fmt_double(double v);
double parse_double_text(std::string_view text);

// Atom -> number with source positions in the error.
double number_of(const SExpr& e);
int int_of(const SExpr& e);

// Named definitions visible while parsing forms; every map is optional.
struct NameTable {
    std::map<std::string, NetExpr> nets;
    std::map<std::string, IndexSet> isets;
    std::map<std::string, GenNumber> points;
    std::map<std::string, SetFamily> families;
    std::map<std::string, SmoothExpr> smooths;
    std::map<std::string, GSFDef> gsfs;
    std::map<std::string, RadiiSet> radii;
};

// Parsers for the prefix text format. Bare numeric atoms are constants;
// other bare atoms are name references into the table (spatial variables
// x1..xd in smooth expressions excepted).
NetExpr parse_net(const SExpr& e, const NameTable& names = {});
IndexSet parse_iset(const SExpr& e, const NameTable& names = {});
GenNumber parse_point(const SExpr& e, const NameTable& names = {});
SetFamily parse_family(const SExpr& e, const NameTable& names = {});
SmoothExpr parse_smooth(const SExpr& e, const NameTable& names = {});
GSFDef parse_gsf(const SExpr& e, std::string name, const NameTable& names = {});
RadiiSet parse_radii(const SExpr& e, const NameTable& names = {});

// Printers; print always expands references structurally, so a round trip
// yields an equivalent (not necessarily identical) document.
SExpr net_form(const NetExpr& n);
SExpr iset_form(const IndexSet& s);
SExpr point_form(const GenNumber& x);
SExpr family_form(const SetFamily& f);
SExpr smooth_form(const SmoothExpr& s);
SExpr gsf_form(const GSFDef& f);
SExpr radii_form(const RadiiSet& r);

}  // namespace colombeau
