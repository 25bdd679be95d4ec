#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "colombeau/net_expr.hpp"
#include "colombeau/topology.hpp"

using namespace colombeau;

namespace {
GenNumber sc(double v) { return GenNumber::scalar(v); }
GenNumber net(NetExpr n) { return GenNumber(std::move(n)); }
}  // namespace

TEST_CASE("radius admissibility by kind") {
    const EpsGrid grid = EpsGrid::dyadic();

    const RadiiSet sharp = RadiiSet::sharp();
    CHECK(radii_contains(sharp, NetExpr::eps_pow(3.0), grid) == Ternary::True);
    CHECK(radii_contains(sharp, NetExpr::constant(0.5), grid) == Ternary::True);
    CHECK(radii_contains(sharp, NetExpr::constant(-1.0), grid) == Ternary::False);
    CHECK(radii_contains(sharp, NetExpr::constant(0.0), grid) == Ternary::False);

    const RadiiSet fermat = RadiiSet::fermat();
    CHECK(radii_contains(fermat, NetExpr::constant(0.5), grid) == Ternary::True);
    CHECK(radii_contains(fermat, NetExpr::eps_pow(1.0), grid) == Ternary::False);

    const RadiiSet band = RadiiSet::power_band(5.0);
    CHECK(radii_contains(band, NetExpr::eps_pow(3.0), grid) == Ternary::True);
    CHECK(radii_contains(band, NetExpr::constant(1.0), grid) == Ternary::True);
    CHECK(radii_contains(band, NetExpr::eps_pow(7.0), grid) == Ternary::False);

    const RadiiSet gen = RadiiSet::generated(NetExpr::eps_pow(2.0));
    CHECK(radii_contains(gen, NetExpr::prod(NetExpr::constant(3.0), NetExpr::eps_pow(2.0)),
                         grid) == Ternary::True);
    CHECK(radii_contains(gen, NetExpr::eps_pow(1.0), grid) == Ternary::False);
}

TEST_CASE("ball membership under different radii sets") {
    const EpsGrid grid = EpsGrid::dyadic();
    const RadiiSet fermat = RadiiSet::fermat();
    CHECK(ball_member(fermat, sc(0.0), NetExpr::constant(0.5), sc(0.3), grid) == Ternary::True);
    CHECK(ball_member(fermat, sc(0.0), NetExpr::constant(0.5), sc(0.7), grid) == Ternary::False);

    const RadiiSet sharp = RadiiSet::sharp();
    CHECK(ball_member(sharp, sc(0.0), NetExpr::eps_pow(2.0), net(NetExpr::eps_pow(3.0)),
                      grid) == Ternary::True);
    CHECK(ball_member(sharp, sc(0.0), NetExpr::eps_pow(3.0), net(NetExpr::eps_pow(2.0)),
                      grid) == Ternary::False);
}

TEST_CASE("identification coarsens along the refinement chain") {
    const EpsGrid grid = EpsGrid::dyadic();
    const GenNumber zero = sc(0.0);
    const GenNumber tiny = net(NetExpr::eps_pow(1.0));
    const GenNumber deep = net(NetExpr::eps_pow(20.0));
    const GenNumber mid = net(NetExpr::eps_pow(6.0));
    const GenNumber half = sc(0.5);

    const RadiiSet sharp = RadiiSet::sharp();
    const RadiiSet fermat = RadiiSet::fermat();
    const RadiiSet band = RadiiSet::power_band(5.0);

    // The sharp topology separates all non-equal points; ring-equal points
    // cannot be separated by any admissible radius.
    CHECK(tau_identified(sharp, zero, tiny, grid) == Ternary::False);
    CHECK(tau_identified(sharp, zero, deep, grid) == Ternary::True);

    // Fermat identifies infinitesimally close points.
    CHECK(tau_identified(fermat, zero, tiny, grid) == Ternary::True);
    CHECK(tau_identified(fermat, zero, half, grid) == Ternary::False);

    // The power band sits strictly between the two.
    CHECK(tau_identified(band, zero, mid, grid) == Ternary::True);
    CHECK(tau_identified(band, zero, tiny, grid) == Ternary::False);

    for (const GenNumber* y : {&tiny, &deep, &mid, &half}) {
        const ChainReport rep = topology_chain_probe(zero, *y, grid);
        CHECK(rep.probes > 0);
        CHECK(rep.confirmed == rep.probes);
        CHECK(rep.failures.empty());
    }
}

TEST_CASE("admissible radii are downward directed") {
    const EpsGrid grid = EpsGrid::dyadic();
    for (const RadiiSet& r : {RadiiSet::sharp(), RadiiSet::fermat(), RadiiSet::power_band(4.0),
                              RadiiSet::generated(NetExpr::eps_pow(2.0))}) {
        const RadiiAxiomReport rep = radii_axiom_probe(r, grid);
        CHECK(rep.probes > 0);
        CHECK(rep.confirmed == rep.probes);
        CHECK(rep.failures.empty());
    }
    CHECK(RadiiSet::sharp().sample_radii(3).size() == 3);
}
