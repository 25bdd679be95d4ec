#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "colombeau/asymptotics.hpp"
#include "colombeau/errors.hpp"
#include "colombeau/net_expr.hpp"

using namespace colombeau;

namespace {
// Independent least-squares slope over (ln eps, log-magnitude) pairs.
double ls_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [eps, y] : pts) {
        const double x = std::log(eps);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}
}  // namespace

TEST_CASE("valuation is exact on monomials and matches an independent fit") {
    const EpsGrid grid = EpsGrid::dyadic();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> expo(-10.0, 10.0);
    for (int i = 0; i < 40; ++i) {
        const double a = expo(rng);
        const NetExpr u = NetExpr::prod(NetExpr::constant(1.7), NetExpr::eps_pow(a));
        const ValuationEstimate ve = valuation(u, grid);
        CHECK(ve.exact());
        CHECK(ve.value == a);

        const ValuationEstimate vr = valuation_regression(u, grid);
        CHECK(!vr.exact());
        CHECK(vr.value == doctest::Approx(a).epsilon(1e-9));

        const auto pts = tail_logmags(u, grid);
        CHECK(pts.size() >= 6);
        CHECK(ls_slope(pts) == doctest::Approx(a).epsilon(1e-9));
    }
}

TEST_CASE("frozen log-magnitude oracle far beyond double range") {
    const EpsGrid grid = EpsGrid::dyadic();
    const NetExpr u = NetExpr::eps_pow(-100.0);
    // At eps = 2^-40 the magnitude is 2^4000; the log-domain pipeline must
    // report ln|u| = 4000 ln 2 instead of overflowing.
    bool found = false;
    for (const auto& [eps, lm] : tail_logmags(u, grid)) {
        if (eps == std::ldexp(1.0, -40)) {
            found = true;
            CHECK(lm == doctest::Approx(4000.0 * std::log(2.0)).epsilon(1e-12));
        }
        CHECK(std::isfinite(lm));
    }
    CHECK(found);
    const ValuationEstimate ve = valuation(u, grid);
    CHECK(ve.exact());
    CHECK(ve.value == -100.0);
}

TEST_CASE("classification verdicts on the reference nets") {
    const EpsGrid grid = EpsGrid::dyadic();

    CHECK(classify(NetExpr::constant(0.0), grid).verdict == NetClass::ExactNegligible);
    CHECK(classify(NetExpr::prod(NetExpr::constant(0.0), NetExpr::eps_pow(-3.0)), grid).verdict ==
          NetClass::ExactNegligible);

    const Classification mod = classify(NetExpr::eps_pow(-3.0), grid);
    CHECK(mod.verdict == NetClass::Moderate);
    CHECK(mod.estimate.value == -3.0);

    // An exact order at or past the negligibility threshold classifies
    // negligible, matching what the regression route would conclude.
    const Classification deep = classify(NetExpr::eps_pow(20.0), grid);
    CHECK(deep.verdict == NetClass::NumericallyNegligible);
    CHECK(deep.estimate.value == 20.0);
    CHECK(classify(NetExpr::eps_pow(3.0), grid).verdict == NetClass::Moderate);

    CHECK(classify(NetExpr::exp_inv_eps(), grid).verdict == NetClass::NonModerate);
    CHECK(classify(NetExpr::apply(Prim::Exp, NetExpr::eps_pow(-1.0)), grid).verdict ==
          NetClass::NonModerate);

    // Non-canonical but moderate: classified through the sampled route.
    const Classification stair = classify(NetExpr::apply(Prim::Tanh, NetExpr::eps_pow(-2.0)), grid);
    CHECK(stair.verdict == NetClass::Moderate);
}

TEST_CASE("sharp norm is exp(-valuation), zero exactly on negligibles") {
    const EpsGrid grid = EpsGrid::dyadic();
    CHECK(sharp_norm(GenNumber(NetExpr::eps_pow(2.0)), grid) ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK(sharp_norm(GenNumber::scalar(5.0), grid) == 1.0);
    CHECK(sharp_norm(GenNumber::scalar(0.0), grid) == 0.0);
    CHECK(sharp_norm(GenNumber(NetExpr::eps_pow(20.0)), grid) == 0.0);
    CHECK_THROWS_AS(sharp_norm(GenNumber(NetExpr::exp_inv_eps()), grid), PreconditionError);

    // Ultrametric inequality with an engineered cancellation.
    const GenNumber u(NetExpr::sum(NetExpr::constant(1.0), NetExpr::eps_pow(2.0)));
    const GenNumber w(NetExpr::constant(-1.0));
    const double ns = sharp_norm(u + w, grid);
    CHECK(ns <= std::max(sharp_norm(u, grid), sharp_norm(w, grid)));
    CHECK(ns == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
}

TEST_CASE("vector valuation takes the minimum over components") {
    const EpsGrid grid = EpsGrid::dyadic();
    const GenNumber v(std::vector<NetExpr>{NetExpr::eps_pow(3.0), NetExpr::eps_pow(1.0)});
    const ValuationEstimate ve = valuation_of(v, grid);
    CHECK(ve.exact());
    CHECK(ve.value == 1.0);
    CHECK(sharp_distance(v, GenNumber::point(std::vector<double>{0.0, 0.0}), grid) ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("ring equality and order verdicts") {
    const EpsGrid grid = EpsGrid::dyadic();
    const GenNumber x = GenNumber::scalar(1.0);
    const GenNumber shifted(NetExpr::sum(NetExpr::constant(1.0), NetExpr::eps_pow(20.0)));
    const GenNumber nearby(NetExpr::sum(NetExpr::constant(1.0), NetExpr::eps_pow(1.0)));

    CHECK(eq_in_ring(x, shifted, grid).equal == Ternary::True);
    CHECK(eq_in_ring(x, nearby, grid).equal == Ternary::False);
    CHECK(eq_in_ring(x, x, grid).difference.verdict == NetClass::ExactNegligible);

    CHECK(leq(GenNumber::scalar(1.0), GenNumber::scalar(2.0), grid).holds == Ternary::True);
    CHECK(leq(GenNumber::scalar(2.0), GenNumber::scalar(1.0), grid).holds == Ternary::False);
    CHECK(leq(x, nearby, grid).holds == Ternary::True);   // 1 <= 1 + eps
    CHECK(leq(nearby, x, grid).holds == Ternary::False);  // the excess eps is not negligible
}

TEST_CASE("infinitesimals, invertibility, and standard parts") {
    const EpsGrid grid = EpsGrid::dyadic();
    CHECK(is_infinitesimal(GenNumber(NetExpr::eps_pow(1.0)), grid) == Ternary::True);
    CHECK(is_infinitesimal(GenNumber::scalar(0.0), grid) == Ternary::True);
    CHECK(is_infinitesimal(GenNumber::scalar(0.5), grid) == Ternary::False);

    CHECK(is_invertible(GenNumber::scalar(2.0), grid).verdict == Ternary::True);
    CHECK(is_invertible(GenNumber(NetExpr::eps_pow(3.0)), grid).verdict == Ternary::True);
    CHECK(is_invertible(GenNumber::scalar(0.0), grid).verdict == Ternary::False);

    const auto sp = standard_part(
        GenNumber(NetExpr::sum(NetExpr::constant(0.3), NetExpr::eps_pow(1.0))), grid);
    REQUIRE(sp.has_value());
    CHECK((*sp)[0] == doctest::Approx(0.3).epsilon(1e-9));
    CHECK(!standard_part(GenNumber(NetExpr::eps_pow(-1.0)), grid).has_value());

    CHECK(fermat_pseudometric(GenNumber::scalar(0.25),
                              GenNumber(NetExpr::sum(NetExpr::constant(0.75),
                                                     NetExpr::eps_pow(2.0))),
                              grid) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(fermat_pseudometric(GenNumber(NetExpr::eps_pow(-1.0)),
                                        GenNumber::scalar(0.0), grid),
                    PreconditionError);
}

TEST_CASE("idempotent-supported nets classify through the augmented grid") {
    const EpsGrid grid = EpsGrid::dyadic();
    // A net supported on a geometric set that accumulates at zero is not
    // negligible; masked to a set bounded away from zero it is exactly zero
    // on the tail.
    const IndexSet geo = IndexSet::geometric(1.0 / 3.0, 1.0 / 3.0);
    const Classification on = classify(NetExpr::mask(geo, NetExpr::constant(1.0)), grid);
    CHECK(on.verdict != NetClass::ExactNegligible);
    const Classification off =
        classify(NetExpr::mask(IndexSet::interval(0.5, 1.0), NetExpr::constant(1.0)), grid);
    CHECK(off.verdict == NetClass::ExactNegligible);
}

TEST_CASE("fit helpers recover slopes with residual diagnostics") {
    std::vector<std::pair<double, double>> pts;
    for (int k = 4; k < 20; ++k) {
        const double eps = std::ldexp(1.0, -k);
        pts.emplace_back(eps, 2.5 * std::log(eps) + 1.0);
    }
    const SlopeFit f = fit_log_eps(pts);
    CHECK(f.slope == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.residual_slope == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(f.n == static_cast<int>(pts.size()));

    std::vector<std::pair<double, double>> inv;
    for (int k = 4; k < 20; ++k) {
        const double eps = std::ldexp(1.0, -k);
        inv.emplace_back(eps, 3.0 / eps - 2.0);
    }
    const SlopeFit g = fit_inv_eps(inv);
    CHECK(g.slope == doctest::Approx(3.0).epsilon(1e-12));
}
