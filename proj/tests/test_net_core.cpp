#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "colombeau/errors.hpp"
#include "colombeau/grid.hpp"
#include "colombeau/index_set.hpp"
#include "colombeau/net_expr.hpp"

using namespace colombeau;

TEST_CASE("default grid shape") {
    const EpsGrid g = EpsGrid::dyadic();
    CHECK(g.size() >= 12);
    CHECK(g.max_sample() <= 1.0);
    CHECK(g.min_sample() > 0.0);
    CHECK(g.min_sample() <= std::ldexp(1.0, -24));
    for (std::size_t i = 1; i < g.size(); ++i) CHECK(g.sample(i) < g.sample(i - 1));
    CHECK(g.size() - g.tail_begin() >= 8);
    CHECK(g.sample(0) == g.max_sample());
    CHECK(g.sample(g.size() - 1) == g.min_sample());
}

TEST_CASE("net evaluation matches hand oracles") {
    const double eps = 0.125;
    CHECK(NetExpr::constant(3.5).eval(eps) == 3.5);
    CHECK(NetExpr::eps_pow(3.0).eval(eps) == doctest::Approx(eps * eps * eps).epsilon(1e-15));
    CHECK(NetExpr::exp_inv_eps().eval(eps) == doctest::Approx(std::exp(8.0)).epsilon(1e-15));
    CHECK(NetExpr::sum(NetExpr::constant(1.0), NetExpr::constant(2.0)).eval(eps) == 3.0);
    CHECK(NetExpr::prod(NetExpr::constant(2.0), NetExpr::eps_pow(1.0)).eval(eps) == 0.25);
    CHECK(NetExpr::neg(NetExpr::constant(4.0)).eval(eps) == -4.0);
    CHECK(NetExpr::abs(NetExpr::constant(-4.0)).eval(eps) == 4.0);
    CHECK(NetExpr::min(NetExpr::constant(1.0), NetExpr::constant(2.0)).eval(eps) == 1.0);
    CHECK(NetExpr::max(NetExpr::constant(1.0), NetExpr::constant(2.0)).eval(eps) == 2.0);
    CHECK(NetExpr::recip(NetExpr::constant(4.0)).eval(eps) == 0.25);
    CHECK(NetExpr::apply(Prim::Sin, NetExpr::constant(0.5)).eval(eps) ==
          doctest::Approx(std::sin(0.5)).epsilon(1e-15));
    CHECK(NetExpr::apply(Prim::Sqrt, NetExpr::constant(9.0)).eval(eps) == 3.0);
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(NetExpr::constant(1.0).eval(0.0), EvalError);
    CHECK_THROWS_AS(NetExpr::constant(1.0).eval(1.5), EvalError);
    CHECK_THROWS_AS(NetExpr::recip(NetExpr::constant(0.0)).eval(0.5), EvalError);
    CHECK_THROWS_AS(NetExpr::apply(Prim::Log, NetExpr::constant(-1.0)).eval(0.5), EvalError);
    CHECK_THROWS_AS(NetExpr::apply(Prim::Sqrt, NetExpr::constant(-1.0)).eval(0.5), EvalError);
}

TEST_CASE("signed-log evaluation agrees in range and survives out of range") {
    const EpsGrid g = EpsGrid::dyadic();
    const std::vector<NetExpr> nets = {
        NetExpr::prod(NetExpr::constant(-2.0), NetExpr::eps_pow(3.0)),
        NetExpr::sum(NetExpr::constant(1.0), NetExpr::eps_pow(1.0)),
        NetExpr::apply(Prim::Tanh, NetExpr::eps_pow(-1.0)),
    };
    for (const NetExpr& n : nets) {
        for (const double eps : g.samples()) {
            const double direct = n.eval(eps);
            const SignedLog sl = n.signed_log_eval(eps);
            CHECK(sl.to_double() == doctest::Approx(direct).epsilon(1e-12));
        }
    }
    // A magnitude far beyond double range keeps an exact finite log form.
    const NetExpr big = NetExpr::eps_pow(-100.0);
    const double eps = std::ldexp(1.0, -30);
    CHECK(std::isinf(big.eval(eps)));
    const SignedLog sl = big.signed_log_eval(eps);
    CHECK(sl.sign == 1);
    CHECK(sl.logabs == doctest::Approx(3000.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(big.log_abs_eval(eps) == doctest::Approx(3000.0 * std::log(2.0)).epsilon(1e-12));
    // Exact zero encodes as sign 0.
    CHECK(NetExpr::constant(0.0).signed_log_eval(0.5).sign == 0);
}

TEST_CASE("masks and idempotents take values in {0,1} and split the identity") {
    const IndexSet s = IndexSet::interval(0.25, 0.75);
    const NetExpr e = NetExpr::idempotent(s);
    const NetExpr ec = NetExpr::idempotent(s.complement());
    for (const double eps : {0.1, 0.25, 0.3, 0.5, 0.75, 0.8, 1.0}) {
        const double v = e.eval(eps);
        CHECK((v == 0.0 || v == 1.0));
        CHECK(v == (s.contains(eps) ? 1.0 : 0.0));
        CHECK(v + ec.eval(eps) == 1.0);
    }
    const NetExpr m = NetExpr::mask(s, NetExpr::constant(7.0));
    CHECK(m.eval(0.5) == 7.0);
    CHECK(m.eval(0.1) == 0.0);
    CHECK(m.eval(0.75) == 7.0);   // intervals are half-open (a, b]
    CHECK(m.eval(0.25) == 0.0);
}

TEST_CASE("index set shapes") {
    const IndexSet i1 = IndexSet::interval(0.2, 0.5);
    CHECK(i1.contains(0.3));
    CHECK(i1.contains(0.5));
    CHECK(!i1.contains(0.2));
    CHECK(!i1.contains(0.7));
    CHECK(!i1.accumulates_at_zero());
    CHECK(IndexSet::interval(0.0, 0.5).accumulates_at_zero());

    const IndexSet c = i1.complement();
    CHECK(!c.contains(0.3));
    CHECK(c.contains(0.1));
    CHECK(c.contains(0.7));
    CHECK(c.accumulates_at_zero());

    const IndexSet geo = IndexSet::geometric(0.5, 0.25);
    CHECK(geo.contains(0.5));
    CHECK(geo.contains(0.125));
    CHECK(geo.contains(0.5 * 0.25 * 0.25));
    CHECK(!geo.contains(0.3));
    CHECK(geo.accumulates_at_zero());
    CHECK(!geo.complement().contains(0.125));
    CHECK(geo.complement().contains(0.3));

    const IndexSet two = IndexSet::intervals({{0.1, 0.2}, {0.6, 0.9}});
    CHECK(two.contains(0.15));
    CHECK(two.contains(0.7));
    CHECK(!two.contains(0.4));
    CHECK(IndexSet::all().contains(1.0));
    CHECK(IndexSet::all().accumulates_at_zero());
}

TEST_CASE("tabulated nets are exact at knots and interpolate between them") {
    const NetExpr d = NetExpr::tabulated({{0.1, 10.0}, {0.001, 1000.0}});
    CHECK(d.eval(0.1) == 10.0);
    CHECK(d.eval(0.001) == 1000.0);
    // log-linear in eps, linear in value: 0.01 is the log midpoint.
    CHECK(d.eval(0.01) == doctest::Approx(505.0).epsilon(1e-12));
    // clamped outside the table range
    CHECK(d.eval(0.5) == 10.0);
    CHECK(d.eval(1e-6) == 1000.0);
}

TEST_CASE("generalized numbers evaluate componentwise and carry ring operations") {
    const GenNumber x = GenNumber::scalar(2.0);
    const GenNumber y(NetExpr::eps_pow(1.0));
    CHECK(x.dim() == 1);
    const std::vector<double> coords = {1.0, -2.0};
    const GenNumber p = GenNumber::point(coords);
    CHECK(p.dim() == 2);
    CHECK(p.eval(0.5)[0] == 1.0);
    CHECK(p.eval(0.5)[1] == -2.0);

    const double eps = 0.25;
    CHECK((x + y).eval(eps)[0] == 2.0 + eps);
    CHECK((x - y).eval(eps)[0] == 2.0 - eps);
    CHECK((x * y).eval(eps)[0] == 2.0 * eps);
    CHECK(wedge(x, GenNumber::scalar(1.5)).eval(eps)[0] == 1.5);
}

TEST_CASE("interleave is exactly x on the set and y off it") {
    const IndexSet s = IndexSet::geometric(0.5, 0.5);
    const GenNumber z = interleave(s, GenNumber::scalar(1.0), GenNumber::scalar(-1.0));
    CHECK(z.eval(0.5)[0] == 1.0);
    CHECK(z.eval(0.25)[0] == 1.0);
    CHECK(z.eval(0.3)[0] == -1.0);
    CHECK(z.eval(1.0)[0] == -1.0);
}

TEST_CASE("grid augmentation keeps every original sample and stays a valid grid") {
    const EpsGrid g = EpsGrid::dyadic(4, 32, 0.4);
    const NetExpr e = NetExpr::idempotent(IndexSet::geometric(0.3, 0.4));
    const EpsGrid g2 = augmented_grid(g, e);
    CHECK(g2.size() >= g.size());
    for (std::size_t i = 1; i < g2.size(); ++i) CHECK(g2.sample(i) < g2.sample(i - 1));
    for (const double eps : g.samples()) {
        bool found = false;
        for (const double e2 : g2.samples()) found = found || e2 == eps;
        CHECK(found);
    }
    // Witnesses on both sides of the geometric points it can reach.
    int on_set = 0;
    for (const double eps : g2.samples()) on_set += e.eval(eps) == 1.0 ? 1 : 0;
    CHECK(on_set > 0);
}

TEST_CASE("equal trees at equal eps are bit-identical") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> expo(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const double a = expo(rng);
        const NetExpr u = NetExpr::sum(NetExpr::prod(NetExpr::constant(1.5), NetExpr::eps_pow(a)),
                                       NetExpr::apply(Prim::Cos, NetExpr::eps_pow(1.0)));
        const NetExpr w = NetExpr::sum(NetExpr::prod(NetExpr::constant(1.5), NetExpr::eps_pow(a)),
                                       NetExpr::apply(Prim::Cos, NetExpr::eps_pow(1.0)));
        const double eps = 0.5 * std::pow(0.7, i % 10);
        CHECK(u.eval(eps) == w.eval(eps));
    }
}
