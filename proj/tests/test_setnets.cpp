#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "colombeau/membership.hpp"
#include "colombeau/net_expr.hpp"
#include "colombeau/sampling.hpp"
#include "colombeau/set_family.hpp"

using namespace colombeau;

namespace {
GenNumber sc(double v) { return GenNumber::scalar(v); }
double at(const SetFamily& f, double p, double eps) {
    const std::vector<double> q = {p};
    return f.sdf(q, eps);
}
}  // namespace

TEST_CASE("signed distances of the primitive shapes") {
    const double eps = 0.125;
    const SetFamily ball = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));
    CHECK(at(ball, 0.0, eps) == 1.0);
    CHECK(at(ball, 0.5, eps) == 0.5);
    CHECK(at(ball, -2.0, eps) == -1.0);

    const SetFamily box = SetFamily::box(sc(0.0), sc(2.0));
    CHECK(at(box, 1.0, eps) == 1.0);
    CHECK(at(box, 0.25, eps) == 0.25);
    CHECK(at(box, 2.5, eps) == -0.5);

    const SetFamily half = SetFamily::half_space({1.0}, NetExpr::constant(1.0));
    CHECK(at(half, 0.0, eps) == 1.0);
    CHECK(at(half, 2.0, eps) == -1.0);

    const SetFamily punct = SetFamily::punctured_ball(sc(0.0), NetExpr::constant(1.0));
    CHECK(at(punct, 0.0, eps) == 0.0);
    CHECK(at(punct, 0.1, eps) == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(at(punct, 0.6, eps) == doctest::Approx(0.4).epsilon(1e-12));

    const SetFamily no_origin = SetFamily::complement(SetFamily::points({sc(0.0)}));
    CHECK(at(no_origin, 0.3, eps) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(at(no_origin, 0.0, eps) == 0.0);

    CHECK(at(SetFamily::full(1), 7.0, eps) == std::numeric_limits<double>::infinity());
    CHECK(at(SetFamily::empty(1), 7.0, eps) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("combinators bound the distance from the correct side") {
    const double eps = 0.125;
    const SetFamily a = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));
    const SetFamily b = SetFamily::box(sc(0.0), sc(2.0));

    const SetFamily i = SetFamily::set_intersection(a, b);
    const SetFamily u = SetFamily::set_union(a, b);
    for (const double p : {-0.5, 0.25, 0.75, 1.5, 2.5}) {
        CHECK(at(i, p, eps) == std::min(at(a, p, eps), at(b, p, eps)));
        CHECK(at(u, p, eps) == std::max(at(a, p, eps), at(b, p, eps)));
    }
    CHECK(at(SetFamily::complement(a), 0.25, eps) == -at(a, 0.25, eps));

    const SetFamily er = SetFamily::eroded(a, 1.0);
    const SetFamily di = SetFamily::dilated(a, 1.0);
    CHECK(at(er, 0.5, eps) == doctest::Approx(0.5 - eps).epsilon(1e-12));
    CHECK(at(di, 0.5, eps) == doctest::Approx(0.5 + eps).epsilon(1e-12));
}

TEST_CASE("moving slices follow their defining nets") {
    const SetFamily moving = SetFamily::ball(sc(0.0), NetExpr::eps_pow(1.0));
    CHECK(at(moving, 0.0, 0.25) == 0.25);
    CHECK(at(moving, 0.2, 0.25) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(at(moving, 0.5, 0.25) < 0.0);

    const SetFamily drift = SetFamily::box(GenNumber(NetExpr::eps_pow(1.0)),
                                           GenNumber(NetExpr::sum(NetExpr::constant(1.0),
                                                                  NetExpr::eps_pow(1.0))));
    CHECK(at(drift, 0.5, 0.25) == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("planar distances") {
    const double eps = 0.125;
    const std::vector<double> origin = {0.0, 0.0};
    const GenNumber center = GenNumber::point(origin);
    const SetFamily disc = SetFamily::ball(center, NetExpr::constant(1.0));
    const std::vector<double> p = {0.6, 0.8};
    CHECK(disc.sdf(p, eps) == doctest::Approx(0.0).epsilon(1e-12));
    const std::vector<double> q = {0.3, 0.4};
    CHECK(disc.sdf(q, eps) == doctest::Approx(0.5).epsilon(1e-12));

    const std::vector<GenNumber> tri = {GenNumber::point(std::vector<double>{0.0, 0.0}),
                                        GenNumber::point(std::vector<double>{2.0, 0.0}),
                                        GenNumber::point(std::vector<double>{0.0, 2.0})};
    const SetFamily hull = SetFamily::convex_hull(tri);
    const std::vector<double> inside = {0.5, 0.5};
    CHECK(hull.sdf(inside, eps) > 0.0);
    const std::vector<double> outside = {2.0, 2.0};
    CHECK(hull.sdf(outside, eps) < 0.0);

    const auto w = caratheodory_witness(hull, inside, eps);
    REQUIRE(w.has_value());
    double total = 0.0, px = 0.0, py = 0.0;
    for (std::size_t i = 0; i < w->index.size(); ++i) {
        CHECK(w->weight[i] >= -1e-12);
        total += w->weight[i];
        const auto v = tri[static_cast<std::size_t>(w->index[i])].eval(eps);
        px += w->weight[i] * v[0];
        py += w->weight[i] * v[1];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(px == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(py == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(w->index.size() <= 3);
}

TEST_CASE("strong and internal membership split on boundary behavior") {
    const EpsGrid grid = EpsGrid::dyadic();
    const SetFamily ball = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));

    CHECK(strong_member(sc(0.5), ball, grid).verdict == Member::In);
    CHECK(strong_member(sc(2.0), ball, grid).verdict == Member::Out);
    CHECK(internal_member(sc(1.0), SetFamily::box(sc(0.0), sc(1.0)), grid) == Member::In);
    CHECK(strong_member(sc(1.0), SetFamily::box(sc(0.0), sc(1.0)), grid).verdict == Member::Out);

    const StrongVerdict sv = strong_member(GenNumber(NetExpr::eps_pow(1.0)),
                                           SetFamily::box(sc(0.0), sc(1.0)), grid);
    CHECK(sv.verdict == Member::In);
    CHECK(sv.witness_order >= 1.0);
}

TEST_CASE("interior probes land strongly inside") {
    const EpsGrid grid = EpsGrid::dyadic();
    const SetFamily ball = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));
    const auto probes = interior_probes(ball, 5);
    CHECK(probes.size() == 5);
    for (const GenNumber& p : probes)
        CHECK(strong_member(p, ball, grid).verdict == Member::In);

    CHECK(interior_probes(SetFamily::empty(2), 4).empty());
}

TEST_CASE("subset verdicts carry counterexamples when they fail") {
    const EpsGrid grid = EpsGrid::dyadic();
    const SetFamily small = SetFamily::ball(sc(0.0), NetExpr::constant(0.5));
    const SetFamily big = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));

    const SubsetVerdict ok = strong_subset(small, big, grid);
    CHECK(ok.holds == Ternary::True);
    CHECK(!ok.counterexample.has_value());

    const SubsetVerdict bad = strong_subset(big, small, grid);
    CHECK(bad.holds == Ternary::False);
    REQUIRE(bad.counterexample.has_value());
    const auto& [ceps, cpt] = *bad.counterexample;
    CHECK(big.sdf(cpt, ceps) > -1e-12);
    CHECK(small.sdf(cpt, ceps) <= 0.0);
}

TEST_CASE("sharp boundedness distinguishes balls from their complements") {
    const EpsGrid grid = EpsGrid::dyadic();
    const SetFamily ball = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));
    CHECK(sharply_bounded(ball, grid).verdict == Ternary::True);
    CHECK(sharply_bounded(SetFamily::complement(ball), grid).verdict == Ternary::False);
    // Growing like a power of 1/eps still counts as sharply bounded...
    CHECK(sharply_bounded(SetFamily::ball(sc(0.0), NetExpr::eps_pow(-3.0)), grid).verdict ==
          Ternary::True);
    // ...while exponential growth does not.
    CHECK(sharply_bounded(SetFamily::ball(sc(0.0), NetExpr::exp_inv_eps()), grid).verdict ==
          Ternary::False);
}

TEST_CASE("sampled sup of a linear field over the unit ball") {
    const SetFamily ball = SetFamily::ball(sc(0.0), NetExpr::constant(1.0));
    SupParams params;
    const SupResult r = sampled_sup(
        ball, 0.01, [](std::span<const double> p) { return p[0]; }, params);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(r.samples > 0);
}

TEST_CASE("bounds and outer radius reflect the slice geometry") {
    const SetFamily ball = SetFamily::ball(sc(0.0), NetExpr::constant(2.0));
    const auto bb = ball.bounds(0.125);
    REQUIRE(bb.lo.size() == 1);
    CHECK(bb.lo[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(bb.hi[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(!bb.empty());
    CHECK(ball.log_outer_radius(0.125) == doctest::Approx(std::log(2.0)).epsilon(1e-9));
    CHECK(SetFamily::empty(1).bounds(0.125).empty());
    CHECK(SetFamily::full(1).log_outer_radius(0.125) ==
          std::numeric_limits<double>::infinity());
}
