#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/sampling.hpp"
#include "colombeau/set_family.hpp"

namespace colombeau {

// Membership of a generalized point in the internal set [A_eps]: the
// distance net d(x_eps, A_eps) must be negligible.
Member internal_member(const GenNumber& x, const SetFamily& A, const EpsGrid& grid);

struct StrongVerdict {
    Member verdict = Member::Undetermined;
    // Sharp route: d(x_eps, complement) >= eps^witness_order on the tail.
    double witness_order = 0.0;
    // Real-radius route: d(x_eps, complement) >= witness_radius on the tail.
    double witness_radius = 0.0;
    std::optional<double> exit_eps;  // tail sample where the point left the slice
    std::string note;
};

// Strong membership in <A_eps>: the distance to the complement must
// eventually dominate some eps^q (sharp route) or some fixed real radius
// (the route the coarser real-parameter topology sees).
StrongVerdict strong_member(const GenNumber& x, const SetFamily& A, const EpsGrid& grid);
StrongVerdict strong_member_fermat(const GenNumber& x, const SetFamily& A, const EpsGrid& grid);

struct SubsetVerdict {
    Ternary holds = Ternary::Undetermined;
    double witness_order = 0.0;
    std::string note;
    // (eps, point) found inside the probe erosion of A but outside B.
    std::optional<std::pair<double, std::vector<double>>> counterexample;
};

// <A> subset of <B>, probed through the eps^probe_order erosion of A: the
// sampled min of B's sdf over that erosion must stay above a fixed power of
// eps. Sampled verdicts; counterexamples are exact points of the slice.
SubsetVerdict strong_subset(const SetFamily& A, const SetFamily& B, const EpsGrid& grid,
                            double probe_order = 1.0, const SupParams& params = {});

// [A] subset of [B]: the sampled sup over A's slice of the distance to B
// must be negligible.
struct InternalSubsetVerdict {
    Ternary holds = Ternary::Undetermined;
    Classification excess;
};
InternalSubsetVerdict internal_subset(const SetFamily& A, const SetFamily& B,
                                      const EpsGrid& grid, const SupParams& params = {});

// <A> = <B> via the Hausdorff distance of the complements inside a bounded
// window: both one-sided excesses must classify negligible.
struct SameSetVerdict {
    Ternary equal = Ternary::Undetermined;
    Classification hausdorff;
};
SameSetVerdict same_strong_set(const SetFamily& A, const SetFamily& B, const SetFamily& window,
                               const EpsGrid& grid, const SupParams& params = {});

// Containment in some ball of radius eps^-N; decided in the log domain so
// exponentially large slices are recognized as unbounded rather than
// saturating.
struct BoundedVerdict {
    Ternary verdict = Ternary::Undetermined;
    double witness_n = 0.0;
    std::string note;
};
BoundedVerdict sharply_bounded(const SetFamily& A, const EpsGrid& grid);

// Kind-aware interior probe points, returned as generalized points built
// from the family's own defining nets so they track moving slices.
std::vector<GenNumber> interior_probes(const SetFamily& A, int count, unsigned seed = 42);

// Two-sided decomposition probe: strong members must fall inside eroded
// slices of matching order, and points of eroded slices must be strong
// members with a witness bounded by the erosion order.
struct SigmaReport {
    int probes = 0;
    int confirmed = 0;
    std::vector<std::string> failures;
};
SigmaReport sigma_decomposition_check(const SetFamily& A, const EpsGrid& grid, int orders = 3,
                                      unsigned seed = 42);

// Strong membership in an intersection implies strong membership in both
// factors (the converse fails in general and is not asserted).
struct IntersectionReport {
    int probes = 0;
    int confirmed = 0;
    std::vector<std::string> failures;
};
IntersectionReport intersection_check(const SetFamily& A, const SetFamily& B,
                                      const EpsGrid& grid, int probes = 12, unsigned seed = 42);

// For a point that is internal but not strong, produce a negligible shift z
// such that the representative x + z leaves the slices pointwise along the
// tail: the shift acts exactly at samples whose slice depth is negligible
// and crosses the boundary there (a slice counts as exited when the moved
// point is no longer strictly inside). Returns nothing when no tail sample
// exits — that is, when x sits strongly inside, so membership is immune to
// every negligible change of representative.
struct PerturbationWitness {
    GenNumber shift;
    int exit_count = 0;
    int tail_count = 0;
    Classification shift_class;
};
std::optional<PerturbationWitness> representative_exit_witness(const GenNumber& x,
                                                               const SetFamily& A,
                                                               const EpsGrid& grid);

// Hypothesis: every catalog point internal in B sits strongly inside Omega.
// Conclusion, tested only when the hypothesis survives: the slices B_eps are
// eventually contained in Omega_eps pointwise (sampled). B must be sharply
// bounded.
struct ContainmentReport {
    Ternary hypothesis = Ternary::Undetermined;
    Ternary conclusion = Ternary::Undetermined;
    // Largest grid sample from which containment held at every deeper one.
    std::optional<double> contained_from_eps;
    std::vector<std::string> notes;
};
ContainmentReport containment_shadow(const SetFamily& B, const SetFamily& Omega,
                                     const EpsGrid& grid, std::span<const GenNumber> catalog,
                                     const SupParams& params = {});

// Strongly internal sets are open for the sharp metric: every point within
// sharp distance exp(-(q+1)) of a strong member with witness q must itself
// be strong.
struct OpennessReport {
    int probes = 0;
    int confirmed = 0;
    std::vector<std::string> failures;
};
OpennessReport openness_probe(const GenNumber& x, const SetFamily& A, const EpsGrid& grid,
                              int directions = 4);

}  // namespace colombeau
