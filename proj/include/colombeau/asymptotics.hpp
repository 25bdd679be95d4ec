#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "colombeau/grid.hpp"
#include "colombeau/net_expr.hpp"
#include "colombeau/verdicts.hpp"

namespace colombeau {

// Numeric policy, pinned here once. Exact (canonical) answers never consult
// these; they gate only the sampled/regression paths.
struct Tolerances {
    double residual_tol = 0.1;      // rms fit residual acceptance, slope units
    double negligible_order = 15.0; // fitted order >= this => numerically negligible
    double moderate_gate = 20.0;    // N_max: magnitude gate before the growth-trend test
    double ladder_top = 1e-1;       // infinitesimal ladder, decades down to...
    double ladder_bottom = 1e-6;
    int min_fit_samples = 6;
};

const Tolerances& tolerances();

// Least-squares line fit; residual_slope is the rms residual divided by the
// spread of the regressor, so it is comparable across windows.
struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_slope = 0.0;
    double rms = 0.0;
    int n = 0;
};

SlopeFit fit_log_eps(const std::vector<std::pair<double, double>>& eps_y);  // x = ln eps
SlopeFit fit_inv_eps(const std::vector<std::pair<double, double>>& eps_y);  // x = 1/eps

// (eps, log|u_eps|) over the augmented tail window, eps descending;
// log-magnitude is -infinity at exact zeros.
std::vector<std::pair<double, double>> tail_logmags(const NetExpr& net, const EpsGrid& grid);

// Shared sampled-classification core for anything that produces tail
// magnitudes (nets, distance samples, sampled sups).
Classification classify_tail_logmags(const std::vector<std::pair<double, double>> & pts);

// Exact on the canonical subalgebra, least-squares slope otherwise.
ValuationEstimate valuation(const NetExpr& net, const EpsGrid& grid);

// Numeric path only (exact zero tails still report +infinity). Exists so the
// two routes can be compared against each other.
ValuationEstimate valuation_regression(const NetExpr& net, const EpsGrid& grid);

// Vector valuation: min over componentwise valuations (equals the valuation
// of the Euclidean norm net).
ValuationEstimate valuation_of(const GenNumber& x, const EpsGrid& grid);

Classification classify(const NetExpr& net, const EpsGrid& grid);
Classification classify(const GenNumber& x, const EpsGrid& grid);  // cached per grid

// exp(-valuation); exactly 0 iff the classification is negligible. Throws
// PreconditionError on non-moderate input.
double sharp_norm(const GenNumber& x, const EpsGrid& grid);
double sharp_distance(const GenNumber& x, const GenNumber& y, const EpsGrid& grid);

struct EqVerdict {
    Ternary equal = Ternary::Undetermined;
    Classification difference;
};

// Ring equality via the classification of x - y. Numerically negligible
// differences count as equal by policy (the documented operational reading).
EqVerdict eq_in_ring(const GenNumber& x, const GenNumber& y, const EpsGrid& grid);

struct LeqVerdict {
    Ternary holds = Ternary::Undetermined;
    Classification positive_part;
};

// x <= y iff max(x - y, 0) is negligible. Scalars only.
LeqVerdict leq(const GenNumber& x, const GenNumber& y, const EpsGrid& grid);

struct InvertVerdict {
    Ternary verdict = Ternary::Undetermined;
    double witness_n = 0.0;  // |x_eps| >= eps^witness_n on the tail when true
    std::optional<double> zero_witness_eps;
    std::string note;
};

InvertVerdict is_invertible(const GenNumber& x, const EpsGrid& grid);

Ternary is_infinitesimal(const GenNumber& x, const EpsGrid& grid);

// Componentwise limit as eps -> 0 when the tail converges in R.
std::optional<std::vector<double>> standard_part(const GenNumber& x, const EpsGrid& grid);

// |st(x) - st(y)|; PreconditionError naming the offending argument when one
// is not near-standard.
double fermat_pseudometric(const GenNumber& x, const GenNumber& y, const EpsGrid& grid);

}  // namespace colombeau
