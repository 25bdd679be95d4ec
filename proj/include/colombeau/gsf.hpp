#pragma once

#include <string>
#include <vector>

#include "colombeau/membership.hpp"
#include "colombeau/smooth_family.hpp"

namespace colombeau {

// A generalized smooth function: smooth symbolic outputs over a domain
// family. Smoothness comes for free from the symbolic layer; what gsf_check
// certifies is moderateness of all derivatives at generalized points of the
// domain and along sampled sups over its slices.
struct GSFDef {
    std::string name;
    std::vector<SmoothExpr> outputs;
    SetFamily domain;
    // true: the domain is read as the strongly internal set of its slices;
    // false: as the plain internal set.
    bool strongly_internal_domain = true;

    int domain_dim() const { return domain.dim(); }
    int codomain_dim() const { return static_cast<int>(outputs.size()); }
};

GSFDef make_gsf(std::string name, std::vector<SmoothExpr> outputs, SetFamily domain,
                bool strongly_internal = true);

// Substitute the point's component nets into every output (no membership
// check; composition of nets is exact).
GenNumber gsf_eval(const GSFDef& f, const GenNumber& x);

// Componentwise exact partial derivative.
GSFDef gsf_derivative(const GSFDef& f, int var);

// f after g; the caller guarantees g maps its domain into f's domain (the
// composite keeps g's domain).
GSFDef gsf_compose(const GSFDef& f, const GSFDef& g);

// All multi-indices over `dim` variables with order <= kmax, by order.
std::vector<std::vector<int>> multi_indices(int dim, int kmax);

// Moderateness certificate at one generalized point: one classification per
// derivative multi-index, all of which must come out moderate or negligible.
struct Certificate {
    GenNumber point;
    std::vector<std::pair<std::vector<int>, Classification>> orders;
    Ternary moderate = Ternary::Undetermined;
};

// Slice-uniform bound per derivative order: the sampled sup of |D^alpha f|
// over the (eroded) domain slices must stay within a power of 1/eps.
struct SupBound {
    int order = 0;
    Classification cls;
    Ternary bounded = Ternary::Undetermined;
};

struct GsfCheckReport {
    Ternary verdict = Ternary::Undetermined;
    std::vector<Certificate> certificates;
    std::vector<SupBound> sup_bounds;
    std::vector<std::string> notes;
};

GsfCheckReport gsf_check(const GSFDef& f, const EpsGrid& grid, int kmax = 3,
                         int probe_points = 3, unsigned seed = 42,
                         std::vector<GenNumber> extra_probes = {});

// Outputs at x and at a negligibly shifted representative must agree in the
// ring; differences whose order is pinned at or above 10 count as agreement.
// Refuses (PreconditionError) shifts that are not themselves negligible,
// since those change the point, not the representative.
struct RepIndependence {
    Ternary verdict = Ternary::Undetermined;
    double shift_order = 0.0;
    std::vector<Classification> differences;
};
RepIndependence representative_independence(const GSFDef& f, const GenNumber& x,
                                            const EpsGrid& grid, double shift_order = 20.0);

// Whether f vanishes on the region: the sampled sup of |f| over its slices
// must classify negligible.
struct NullCheck {
    Ternary is_null = Ternary::Undetermined;
    Classification sup;
};
NullCheck null_check(const GSFDef& f, const SetFamily& region, const EpsGrid& grid,
                     const SupParams& params = {});

// chi_domain * f on all of R^d; agrees with f bit for bit at points whose
// slice depth clears the cutoff band.
GSFDef cutoff_globalize(const GSFDef& f);

// Per-eps sampled sup of the gradient norm over the region, inflated by 1/64
// for the sampling gap and returned as a tabulated net L. The verdict is the
// classification of L; the probe also validates |f(x)-f(y)| <= L|x-y| in the
// ring (leq) on sampled constant pairs of the region.
struct LipschitzReport {
    NetExpr bound;
    Classification cls;
    Ternary moderate = Ternary::Undetermined;
    int pairs = 0;
    int violations = 0;
    std::vector<std::string> notes;
};
LipschitzReport lipschitz_probe(const GSFDef& f, const SetFamily& region, const EpsGrid& grid,
                                int pairs = 16, unsigned seed = 42);

// Difference-quotient differentiability in the sharp metric: the remainder
// (f(x + eps^k) - f(x)) / eps^k - f'(x) must lose sharp size as k grows.
struct AfjProbe {
    std::vector<std::pair<double, double>> decay;  // (k, sharp norm of the remainder)
    Ternary differentiable = Ternary::Undetermined;
    std::string note;
};
AfjProbe afj_probe(const GSFDef& f, const GenNumber& x, const EpsGrid& grid, int kmax = 6);

// Worked examples, including the scaled delta spike and a function that is
// smooth only past an infinitesimal threshold.
std::vector<GSFDef> gsf_gallery();

}  // namespace colombeau
