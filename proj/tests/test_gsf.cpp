#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/gsf.hpp"
#include "colombeau/net_expr.hpp"
#include "colombeau/set_family.hpp"
#include "colombeau/smooth_family.hpp"

using namespace colombeau;

namespace {
const GSFDef& entry(const std::vector<GSFDef>& gallery, const std::string& name) {
    for (const auto& f : gallery)
        if (f.name == name) return f;
    throw UnsupportedError("missing gallery entry " + name);
}

double eval1(const GSFDef& f, double x, double eps) {
    return gsf_eval(f, GenNumber::scalar(x)).eval(eps)[0];
}
}  // namespace

TEST_CASE("symbolic derivatives match central differences") {
    const auto gallery = gsf_gallery();
    const EpsGrid grid = EpsGrid::dyadic();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pos(-0.9, 0.9);
    std::uniform_int_distribution<std::size_t> idx(0, 11);

    for (const char* name : {"square", "sine", "steep-tanh", "delta-spike"}) {
        const GSFDef& f = entry(gallery, name);
        const GSFDef df = gsf_derivative(f, 0);
        for (int i = 0; i < 15; ++i) {
            const double x = pos(rng);
            const double eps = grid.sample(idx(rng));
            const double h = 1e-4 * eps * std::max(1.0, std::abs(x));
            const double sym = eval1(df, x, eps);
            const double num = (eval1(f, x + h, eps) - eval1(f, x - h, eps)) / (2.0 * h);
            CHECK(std::abs(sym - num) <= 1e-5 * (1.0 + std::abs(sym)));
        }
    }
}

TEST_CASE("derivative algebra") {
    const EpsGrid grid = EpsGrid::dyadic();
    // d/dx (3 x^2 + sin x) = 6 x + cos x
    const SmoothExpr expr = SmoothExpr::sum(
        SmoothExpr::prod(SmoothExpr::constant(3.0), SmoothExpr::int_pow(SmoothExpr::var(0), 2)),
        SmoothExpr::apply(Prim::Sin, SmoothExpr::var(0)));
    const GSFDef f = make_gsf("poly-sine", {expr}, SetFamily::full(1));
    const GSFDef df = gsf_derivative(f, 0);
    for (const double x : {-0.7, 0.0, 0.4, 1.3}) {
        CHECK(eval1(df, x, 0.125) ==
              doctest::Approx(6.0 * x + std::cos(x)).epsilon(1e-12));
    }

    // The derivative of a constant output is negligible everywhere.
    const GSFDef c = make_gsf("constant", {SmoothExpr::constant(4.0)}, SetFamily::full(1));
    const GSFDef dc = gsf_derivative(c, 0);
    CHECK(classify(gsf_eval(dc, GenNumber::scalar(0.3)), grid).verdict ==
          NetClass::ExactNegligible);

    // Coefficient nets ride along unchanged.
    const SmoothExpr scaled =
        SmoothExpr::prod(SmoothExpr::coeff(NetExpr::eps_pow(2.0)), SmoothExpr::var(0));
    const GSFDef g = make_gsf("scaled-id", {scaled}, SetFamily::full(1));
    const GSFDef dg = gsf_derivative(g, 0);
    CHECK(eval1(dg, 0.77, 0.25) == doctest::Approx(0.0625).epsilon(1e-12));
}

TEST_CASE("multi indices are ordered by total degree starting at zero") {
    const auto mi = multi_indices(2, 2);
    CHECK(mi.size() == 6);
    int prev = 0;
    for (const auto& alpha : mi) {
        int total = 0;
        for (const int a : alpha) total += a;
        CHECK(total >= prev);
        prev = total;
    }
    CHECK(mi.front() == std::vector<int>{0, 0});

    CHECK(SmoothExpr::var(0).arity() == 1);
    CHECK(SmoothExpr::var(2).arity() == 3);
}

TEST_CASE("substitution closes smooth expressions into nets") {
    const SmoothExpr expr = SmoothExpr::sum(
        SmoothExpr::prod(SmoothExpr::constant(3.0), SmoothExpr::int_pow(SmoothExpr::var(0), 2)),
        SmoothExpr::apply(Prim::Sin, SmoothExpr::var(0)));
    const std::vector<NetExpr> at = {NetExpr::eps_pow(1.0)};
    const NetExpr closed = expr.substitute(at);
    const double eps = 0.125;
    CHECK(closed.eval(eps) ==
          doctest::Approx(3.0 * eps * eps + std::sin(eps)).epsilon(1e-14));
    const std::vector<double> p = {0.3};
    CHECK(expr.eval(p, eps) == doctest::Approx(3.0 * 0.09 + std::sin(0.3)).epsilon(1e-14));
}

TEST_CASE("cutoff steps only admit the identity substitution") {
    const auto fam = std::make_shared<const SetFamily>(
        SetFamily::ball(GenNumber::scalar(0.0), NetExpr::constant(1.0)));
    const SmoothExpr step = SmoothExpr::cutoff_step(fam);
    const std::vector<SmoothExpr> identity = {SmoothExpr::var(0)};
    CHECK_NOTHROW(step.compose(identity));
    const std::vector<SmoothExpr> curves = {SmoothExpr::int_pow(SmoothExpr::var(0), 2)};
    CHECK_THROWS_AS(step.compose(curves), UnsupportedError);
}

TEST_CASE("composition evaluates as nesting") {
    const auto gallery = gsf_gallery();
    const GSFDef& square = entry(gallery, "square");
    const GSFDef& sine = entry(gallery, "sine");
    const GSFDef comp = gsf_compose(square, sine);  // x -> sin(x)^2
    for (const double x : {-0.5, 0.2, 1.1}) {
        const double v = eval1(comp, x, 0.125);
        CHECK(v == doctest::Approx(std::sin(x) * std::sin(x)).epsilon(1e-13));
    }
}

TEST_CASE("certification of a polynomial and the composed Lipschitz bound") {
    const EpsGrid grid = EpsGrid::dyadic();
    const auto gallery = gsf_gallery();
    const GSFDef& square = entry(gallery, "square");
    const GSFDef& sine = entry(gallery, "sine");

    const GsfCheckReport rep = gsf_check(square, grid, 2, 3, 42);
    CHECK(rep.verdict == Ternary::True);
    REQUIRE(!rep.certificates.empty());
    int zero_total = 0;
    for (const int a : rep.certificates.front().orders.front().first) zero_total += a;
    CHECK(zero_total == 0);

    const SetFamily ball = SetFamily::ball(GenNumber::scalar(0.0), NetExpr::constant(1.0));
    const LipschitzReport lip = lipschitz_probe(gsf_compose(square, sine), ball, grid, 20, 42);
    CHECK(lip.moderate == Ternary::True);
    CHECK(lip.violations == 0);
    CHECK(lip.pairs == 20);
}
