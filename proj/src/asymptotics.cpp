#include "colombeau/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "colombeau/canonical.hpp"
#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

SlopeFit fit_line(const std::vector<std::pair<double, double>>& xy) {
    SlopeFit f;
    f.n = static_cast<int>(xy.size());
    if (f.n < 2) {
        f.residual_slope = kInf;
        f.rms = kInf;
        return f;
    }
    double sx = 0, sy = 0;
    for (const auto& [x, y] : xy) {
        sx += x;
        sy += y;
    }
    const double mx = sx / f.n, my = sy / f.n;
    double sxx = 0, sxy = 0;
    for (const auto& [x, y] : xy) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if (sxx <= 0) {
        f.residual_slope = kInf;
        f.rms = kInf;
        return f;
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0;
    for (const auto& [x, y] : xy) {
        const double r = y - (f.intercept + f.slope * x);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / f.n);
    f.residual_slope = f.rms / std::sqrt(sxx / f.n);
    return f;
}

}  // namespace

const Tolerances& tolerances() {
    static const Tolerances t{};
    return t;
}

SlopeFit fit_log_eps(const std::vector<std::pair<double, double>>& eps_y) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(eps_y.size());
    for (const auto& [eps, y] : eps_y) xy.emplace_back(std::log(eps), y);
    return fit_line(xy);
}

SlopeFit fit_inv_eps(const std::vector<std::pair<double, double>>& eps_y) {
    std::vector<std::pair<double, double>> xy;
    xy.reserve(eps_y.size());
    for (const auto& [eps, y] : eps_y) xy.emplace_back(1.0 / eps, y);
    return fit_line(xy);
}

std::vector<std::pair<double, double>> tail_logmags(const NetExpr& net, const EpsGrid& grid) {
    const EpsGrid g = augmented_grid(grid, net);
    std::vector<std::pair<double, double>> pts;
    pts.reserve(g.size() - g.tail_begin());
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        pts.emplace_back(eps, net.log_abs_eval(eps));
    }
    return pts;
}

Classification classify_tail_logmags(const std::vector<std::pair<double, double>>& pts) {
    const Tolerances& tol = tolerances();
    Classification c;
    c.estimate.method = FitMethod::Regression;
    if (!pts.empty()) {
        c.estimate.window_hi = pts.front().first;
        c.estimate.window_lo = pts.back().first;
    }

    std::vector<std::pair<double, double>> finite;
    bool any_overflow = false;
    for (const auto& [eps, lm] : pts) {
        if (lm == kInf || std::isnan(lm)) {
            any_overflow = true;
        } else if (lm > -kInf) {
            finite.emplace_back(eps, lm);
        }
    }

    if (finite.empty() && !any_overflow) {
        // Zero at every tail sample: negligible by inspection, no fit needed.
        c.verdict = NetClass::ExactNegligible;
        c.estimate = ValuationEstimate::at_infinity();
        c.estimate.window_hi = pts.empty() ? 0.0 : pts.front().first;
        c.estimate.window_lo = pts.empty() ? 0.0 : pts.back().first;
        c.note = "zero at every tail sample";
        return c;
    }
    if (finite.empty()) {
        c.verdict = NetClass::NonModerate;
        c.note = "magnitude overflows double range on the tail";
        c.upper_order = -kInf;
        c.lower_order = -kInf;
        return c;
    }

    // Per-sample implied order q with |u_eps| = eps^q.
    double min_q = kInf, max_q = -kInf;
    for (const auto& [eps, lm] : finite) {
        const double q = lm / std::log(eps);
        min_q = std::min(min_q, q);
        max_q = std::max(max_q, q);
    }
    c.lower_order = min_q;
    c.upper_order = std::max(0.0, -min_q);
    c.estimate.samples = static_cast<int>(finite.size());

    if (static_cast<int>(finite.size()) < tol.min_fit_samples) {
        c.verdict = NetClass::Undetermined;
        c.note = "too few nonzero tail samples for a stable fit";
        return c;
    }

    const SlopeFit ll = fit_log_eps(finite);
    const SlopeFit rc = fit_inv_eps(finite);
    c.estimate.value = ll.slope;
    c.estimate.residual = ll.residual_slope;

    // Growth beyond the polynomial gate, confirmed by trend: the 1/eps model
    // must fit better than log-log and its coefficient must be positive and
    // stable across the two halves of the window.
    const bool exceeds_gate = any_overflow || min_q < -tol.moderate_gate;
    if (exceeds_gate) {
        const std::size_t half = finite.size() / 2;
        std::vector<std::pair<double, double>> a(finite.begin(), finite.begin() + half);
        std::vector<std::pair<double, double>> b(finite.begin() + half, finite.end());
        const SlopeFit ra = fit_inv_eps(a), rb = fit_inv_eps(b);
        const bool stable = ra.slope > 0 && rb.slope > 0 && rb.slope < 4 * ra.slope &&
                            ra.slope < 4 * rb.slope;
        if (any_overflow || (rc.rms < ll.rms && rc.slope > 0 && stable)) {
            c.verdict = NetClass::NonModerate;
            c.note = any_overflow ? "magnitude overflows double range on the tail"
                                  : "super-polynomial growth (1/eps model preferred)";
            return c;
        }
        c.verdict = NetClass::Undetermined;
        c.note = "magnitudes exceed the polynomial gate but no stable growth model";
        return c;
    }

    if (ll.residual_slope <= tol.residual_tol) {
        if (ll.slope >= tol.negligible_order) {
            c.verdict = NetClass::NumericallyNegligible;
            c.note = "fitted order clears the negligibility threshold";
        } else {
            c.verdict = NetClass::Moderate;
        }
        return c;
    }

    // Super-polynomial decay also defeats the log-log fit; it is negligible.
    if (rc.rms < ll.rms && rc.slope < 0 && min_q >= tol.negligible_order) {
        c.verdict = NetClass::NumericallyNegligible;
        c.note = "super-polynomial decay (1/eps model preferred)";
        return c;
    }

    c.verdict = NetClass::Undetermined;
    c.note = "no stable asymptotic model on the tail window";
    return c;
}

namespace {

Classification classify_exact(const canon::Form& form) {
    Classification c;
    c.estimate.method = FitMethod::Exact;
    c.estimate.residual = 0.0;
    if (canon::exact_is_zero(form)) {
        c.verdict = NetClass::ExactNegligible;
        c.estimate = ValuationEstimate::at_infinity();
        c.note = "canonical form vanishes near zero";
        return c;
    }
    const double v = canon::exact_valuation(form);
    c.estimate = ValuationEstimate::exact_value(v);
    c.lower_order = v;
    c.upper_order = std::max(0.0, -v);
    // The negligibility bucket is an order policy; an exact order at or above
    // the threshold must not come out stricter than the regression verdict
    // the same net would get.
    if (v >= tolerances().negligible_order) {
        c.verdict = NetClass::NumericallyNegligible;
        c.note = "exact order clears the negligibility threshold";
    } else {
        c.verdict = NetClass::Moderate;
    }
    return c;
}

}  // namespace

Classification classify(const NetExpr& net, const EpsGrid& grid) {
    if (auto form = canon::canonicalize(net)) return classify_exact(*form);
    return classify_tail_logmags(tail_logmags(net, grid));
}

ValuationEstimate valuation(const NetExpr& net, const EpsGrid& grid) {
    if (auto form = canon::canonicalize(net)) {
        if (canon::exact_is_zero(*form)) return ValuationEstimate::at_infinity();
        return ValuationEstimate::exact_value(canon::exact_valuation(*form));
    }
    return valuation_regression(net, grid);
}

ValuationEstimate valuation_regression(const NetExpr& net, const EpsGrid& grid) {
    const auto pts = tail_logmags(net, grid);
    std::vector<std::pair<double, double>> finite;
    for (const auto& [eps, lm] : pts)
        if (std::isfinite(lm)) finite.emplace_back(eps, lm);
    if (finite.empty()) {
        // Exactly zero at every tail sample.
        auto v = ValuationEstimate::at_infinity();
        if (!pts.empty()) {
            v.window_hi = pts.front().first;
            v.window_lo = pts.back().first;
        }
        return v;
    }
    ValuationEstimate est;
    est.method = FitMethod::Regression;
    est.window_hi = finite.front().first;
    est.window_lo = finite.back().first;
    est.samples = static_cast<int>(finite.size());
    const SlopeFit f = fit_log_eps(finite);
    est.value = f.slope;
    est.residual = f.n >= 2 ? f.residual_slope : kInf;
    return est;
}

ValuationEstimate valuation_of(const GenNumber& x, const EpsGrid& grid) {
    // v(|x|) = min over components, with +infinity from exactly-zero ones.
    ValuationEstimate best = ValuationEstimate::at_infinity();
    bool all_exact = true;
    for (const auto& comp : x.comps()) {
        const ValuationEstimate v = valuation(comp, grid);
        if (v.method != FitMethod::Exact) all_exact = false;
        if (v.value < best.value) best = v;
    }
    if (all_exact) best.method = FitMethod::Exact;
    return best;
}

Classification classify(const GenNumber& x, const EpsGrid& grid) {
    if (auto hit = x.cached_class(grid)) return *hit;
    Classification out;
    out.verdict = NetClass::ExactNegligible;
    out.estimate = ValuationEstimate::at_infinity();
    bool any_numeric_negligible = false;
    for (const auto& comp : x.comps()) {
        const Classification c = classify(comp, grid);
        switch (c.verdict) {
            case NetClass::ExactNegligible:
                break;
            case NetClass::NumericallyNegligible:
                any_numeric_negligible = true;
                break;
            case NetClass::Moderate:
                if (out.verdict != NetClass::NonModerate &&
                    out.verdict != NetClass::Undetermined)
                    out.verdict = NetClass::Moderate;
                break;
            case NetClass::Undetermined:
                if (out.verdict != NetClass::NonModerate) out.verdict = NetClass::Undetermined;
                break;
            case NetClass::NonModerate:
                out.verdict = NetClass::NonModerate;
                break;
        }
        if (c.verdict == NetClass::Moderate || c.verdict == NetClass::NonModerate) {
            if (c.estimate.value < out.estimate.value) out.estimate = c.estimate;
            out.lower_order = std::min(out.lower_order == 0 ? c.lower_order : out.lower_order,
                                       c.lower_order);
            out.upper_order = std::max(out.upper_order, c.upper_order);
            if (!c.note.empty()) out.note = c.note;
        }
    }
    if (out.verdict == NetClass::ExactNegligible && any_numeric_negligible)
        out.verdict = NetClass::NumericallyNegligible;
    x.store_class(grid, out);
    return out;
}

double sharp_norm(const GenNumber& x, const EpsGrid& grid) {
    const Classification c = classify(x, grid);
    if (c.negligible()) return 0.0;
    if (c.verdict == NetClass::NonModerate)
        throw PreconditionError("sharp_norm: input is not moderate");
    return std::exp(-c.estimate.value);
}

double sharp_distance(const GenNumber& x, const GenNumber& y, const EpsGrid& grid) {
    return sharp_norm(x - y, grid);
}

EqVerdict eq_in_ring(const GenNumber& x, const GenNumber& y, const EpsGrid& grid) {
    EqVerdict v;
    v.difference = classify(x - y, grid);
    switch (v.difference.verdict) {
        case NetClass::ExactNegligible:
        case NetClass::NumericallyNegligible:
            v.equal = Ternary::True;
            break;
        case NetClass::Moderate:
        case NetClass::NonModerate:
            v.equal = Ternary::False;
            break;
        case NetClass::Undetermined:
            v.equal = Ternary::Undetermined;
            break;
    }
    return v;
}

LeqVerdict leq(const GenNumber& x, const GenNumber& y, const EpsGrid& grid) {
    if (x.dim() != 1 || y.dim() != 1)
        throw PreconditionError("leq: the ring order is defined for scalars");
    LeqVerdict v;
    const NetExpr slack =
        NetExpr::max(NetExpr::sum(x.comp(0), NetExpr::neg(y.comp(0))), NetExpr::constant(0.0));
    v.positive_part = classify(slack, grid);
    switch (v.positive_part.verdict) {
        case NetClass::ExactNegligible:
        case NetClass::NumericallyNegligible:
            v.holds = Ternary::True;
            break;
        case NetClass::Moderate:
        case NetClass::NonModerate:
            v.holds = Ternary::False;
            break;
        case NetClass::Undetermined:
            v.holds = Ternary::Undetermined;
            break;
    }
    return v;
}

InvertVerdict is_invertible(const GenNumber& x, const EpsGrid& grid) {
    if (x.dim() != 1) throw PreconditionError("is_invertible: scalars only");
    InvertVerdict out;
    const NetExpr& net = x.comp(0);

    if (auto form = canon::canonicalize(net)) {
        if (canon::exact_is_zero(*form)) {
            out.verdict = Ternary::False;
            out.note = "the net is zero in the ring";
            return out;
        }
        if (!canon::exact_invertible(*form)) {
            out.verdict = Ternary::False;
            out.note = "the net vanishes on a subsequence accumulating at zero";
            return out;
        }
        double worst = 0.0;
        for (const auto& atom : canon::accumulating_atoms(*form))
            if (!atom.terms.empty()) worst = std::max(worst, atom.terms.front().first);
        out.verdict = Ternary::True;
        out.witness_n = std::max(1.0, std::ceil(worst) + 1.0);
        return out;
    }

    const auto pts = tail_logmags(net, grid);
    std::vector<double> q;
    for (const auto& [eps, lm] : pts) {
        if (lm == -kInf) {
            out.verdict = Ternary::False;
            out.zero_witness_eps = eps;
            out.note = "exact zero on the tail";
            return out;
        }
        q.push_back(lm / std::log(eps));
    }
    if (q.size() < 6) {
        out.note = "tail window too thin";
        return out;
    }
    const std::size_t half = q.size() / 2;
    const double m1 = *std::max_element(q.begin(), q.begin() + half);
    const double m2 = *std::max_element(q.begin() + half, q.end());
    if (m2 > m1 + 3.0) {
        out.verdict = Ternary::False;
        out.note = "required lower-bound order grows along the tail";
        return out;
    }
    const double peak = std::max(m1, m2);
    if (std::abs(peak) > 2 * tolerances().moderate_gate) {
        out.verdict = Ternary::Undetermined;
        out.note = "lower-bound order outside the trusted range";
        return out;
    }
    out.verdict = Ternary::True;
    out.witness_n = std::max(1.0, std::ceil(peak) + 1.0);
    return out;
}

namespace {

Ternary scalar_infinitesimal(const NetExpr& net, const EpsGrid& grid) {
    if (auto form = canon::canonicalize(net)) {
        if (canon::exact_is_zero(*form)) return Ternary::True;
        return canon::exact_valuation(*form) > 0 ? Ternary::True : Ternary::False;
    }
    const auto pts = tail_logmags(net, grid);
    std::vector<double> mag;
    mag.reserve(pts.size());
    for (const auto& [eps, lm] : pts) mag.push_back(lm == -kInf ? 0.0 : std::exp(lm));
    if (mag.size() < 8) return Ternary::Undetermined;

    std::vector<double> suffix(mag.size());
    double run = 0.0;
    for (std::size_t i = mag.size(); i-- > 0;) {
        run = std::max(run, mag[i]);
        suffix[i] = run;
    }
    const Tolerances& tol = tolerances();
    bool all_rungs = true;
    for (double r = tol.ladder_top; r >= tol.ladder_bottom * 0.999; r /= 10.0) {
        bool ok = false;
        for (std::size_t i = 0; i + 4 <= mag.size(); ++i)
            if (suffix[i] < r) {
                ok = true;
                break;
            }
        if (!ok) {
            all_rungs = false;
            break;
        }
    }
    if (all_rungs) return Ternary::True;

    const double head = *std::max_element(mag.begin(), mag.begin() + 4);
    const double deep = suffix[mag.size() - 4];
    if (head > 0 && deep > 0.5 * head) return Ternary::False;  // no decay across the tail
    return Ternary::Undetermined;
}

}  // namespace

Ternary is_infinitesimal(const GenNumber& x, const EpsGrid& grid) {
    bool undet = false;
    for (const auto& comp : x.comps()) {
        switch (scalar_infinitesimal(comp, grid)) {
            case Ternary::False:
                return Ternary::False;
            case Ternary::Undetermined:
                undet = true;
                break;
            case Ternary::True:
                break;
        }
    }
    return undet ? Ternary::Undetermined : Ternary::True;
}

std::optional<std::vector<double>> standard_part(const GenNumber& x, const EpsGrid& grid) {
    std::vector<double> out;
    out.reserve(x.dim());
    for (const auto& comp : x.comps()) {
        if (auto form = canon::canonicalize(comp)) {
            const canon::ExactStandardPart sp = canon::exact_standard_part(*form);
            if (!sp.exists) return std::nullopt;
            out.push_back(sp.value);
            continue;
        }
        const EpsGrid g = augmented_grid(grid, comp);
        std::vector<double> vals;
        for (std::size_t i = g.tail_begin(); i < g.size(); ++i)
            vals.push_back(comp.eval(g.sample(i)));
        const std::size_t w = std::min<std::size_t>(8, vals.size());
        double lo = kInf, hi = -kInf, mean = 0.0;
        for (std::size_t i = vals.size() - w; i < vals.size(); ++i) {
            if (!std::isfinite(vals[i])) return std::nullopt;
            lo = std::min(lo, vals[i]);
            hi = std::max(hi, vals[i]);
            mean += vals[i];
        }
        mean /= static_cast<double>(w);
        const double scale = std::max(1.0, std::abs(mean));
        if (hi - lo > 1e-7 * scale) return std::nullopt;
        out.push_back(vals.back());
    }
    return out;
}

double fermat_pseudometric(const GenNumber& x, const GenNumber& y, const EpsGrid& grid) {
    const auto sx = standard_part(x, grid);
    if (!sx) throw PreconditionError("fermat_pseudometric: first argument is not near-standard");
    const auto sy = standard_part(y, grid);
    if (!sy) throw PreconditionError("fermat_pseudometric: second argument is not near-standard");
    if (sx->size() != sy->size())
        throw PreconditionError("fermat_pseudometric: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < sx->size(); ++i) {
        const double d = (*sx)[i] - (*sy)[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace colombeau
