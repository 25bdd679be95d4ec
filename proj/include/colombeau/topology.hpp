#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colombeau/asymptotics.hpp"

namespace colombeau {

// A set of admissible ball radii; each choice induces its own topology on
// generalized points. Sharp admits every positive invertible net, Fermat
// only the positive reals, PowerBand(a) the powers eps^q with 0 <= q <= a,
// Generated(h) the positive real multiples of one generating net.
class RadiiSet {
public:
    enum class Kind { Sharp, Fermat, PowerBand, Generated };

    static RadiiSet sharp();
    static RadiiSet fermat();
    static RadiiSet power_band(double a);
    static RadiiSet generated(NetExpr h);

    Kind kind() const { return kind_; }
    double band() const { return band_; }
    const NetExpr& generator() const;

    // Representative members, for axiom probes.
    std::vector<NetExpr> sample_radii(int count) const;

private:
    RadiiSet() = default;
    Kind kind_ = Kind::Sharp;
    double band_ = 0.0;
    std::optional<NetExpr> generator_;
};

// Whether rho qualifies as a radius of the set: positive on the tail plus
// the kind's asymptotic shape condition.
Ternary radii_contains(const RadiiSet& r, const NetExpr& rho, const EpsGrid& grid);

// x inside the open rho-ball around center, provided rho belongs to the set.
Ternary ball_member(const RadiiSet& r, const GenNumber& center, const NetExpr& rho,
                    const GenNumber& x, const EpsGrid& grid);

// Whether the topology induced by the radii set cannot separate x from y:
// ring equality for Sharp, infinitesimal difference for Fermat, a valuation
// threshold for PowerBand; Generated only identifies provably equal points.
Ternary tau_identified(const RadiiSet& r, const GenNumber& x, const GenNumber& y,
                       const EpsGrid& grid);

// Downward directedness: the pointwise min of two admissible radii is again
// admissible (the filter-base axiom behind the neighborhood systems).
struct RadiiAxiomReport {
    int probes = 0;
    int confirmed = 0;
    std::vector<std::string> failures;
};
RadiiAxiomReport radii_axiom_probe(const RadiiSet& r, const EpsGrid& grid, int count = 4);

// Identification must be monotone along the refinement chain
// Sharp -> PowerBand(a) -> Fermat: coarser topologies identify more.
struct ChainReport {
    int probes = 0;
    int confirmed = 0;
    std::vector<std::string> failures;
};
ChainReport topology_chain_probe(const GenNumber& x, const GenNumber& y, const EpsGrid& grid);

}  // namespace colombeau
