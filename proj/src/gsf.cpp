#include "colombeau/gsf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int rank(NetClass c) {
    switch (c) {
        case NetClass::ExactNegligible: return 0;
        case NetClass::NumericallyNegligible: return 1;
        case NetClass::Moderate: return 2;
        case NetClass::Undetermined: return 3;
        case NetClass::NonModerate: return 4;
    }
    return 3;
}

void collect_smooth_sets(const SmoothExpr& e, std::vector<IndexSet>& out) {
    const auto& n = e.node();
    if (n.kind == SmoothExpr::Kind::Coeff) n.coeff->collect_geometric(out);
    if (n.kind == SmoothExpr::Kind::CutoffStep) n.family->collect_geometric(out);
    for (const auto& k : n.kids) collect_smooth_sets(k, out);
}

SmoothExpr derive_alpha(const SmoothExpr& e, const std::vector<int>& alpha) {
    SmoothExpr d = e;
    for (std::size_t i = 0; i < alpha.size(); ++i)
        for (int t = 0; t < alpha[i]; ++t) d = d.differentiate(static_cast<int>(i));
    return d;
}

Ternary moderate_of(const std::vector<std::pair<std::vector<int>, Classification>>& orders) {
    bool undet = false;
    for (const auto& [alpha, c] : orders) {
        if (c.verdict == NetClass::NonModerate) return Ternary::False;
        if (c.verdict == NetClass::Undetermined) undet = true;
    }
    return undet ? Ternary::Undetermined : Ternary::True;
}

}  // namespace

GSFDef make_gsf(std::string name, std::vector<SmoothExpr> outputs, SetFamily domain,
                bool strongly_internal) {
    if (outputs.empty()) throw PreconditionError("make_gsf: needs at least one output");
    for (const auto& o : outputs)
        if (o.arity() > domain.dim())
            throw PreconditionError("make_gsf: output uses more variables than the domain has");
    return GSFDef{std::move(name), std::move(outputs), std::move(domain), strongly_internal};
}

GenNumber gsf_eval(const GSFDef& f, const GenNumber& x) {
    if (x.dim() != f.domain_dim())
        throw PreconditionError("gsf_eval: point dimension does not match the domain");
    std::vector<NetExpr> comps;
    comps.reserve(f.outputs.size());
    for (const auto& o : f.outputs) comps.push_back(o.substitute(x.comps()));
    return GenNumber(std::move(comps));
}

GSFDef gsf_derivative(const GSFDef& f, int var) {
    if (var < 0 || var >= f.domain_dim())
        throw PreconditionError("gsf_derivative: variable index out of range");
    GSFDef d = f;
    d.name = f.name + "'";
    for (auto& o : d.outputs) o = o.differentiate(var);
    return d;
}

GSFDef gsf_compose(const GSFDef& f, const GSFDef& g) {
    if (g.codomain_dim() != f.domain_dim())
        throw PreconditionError("gsf_compose: codomain/domain dimensions do not match");
    GSFDef c{f.name + "(" + g.name + ")", {}, g.domain, g.strongly_internal_domain};
    for (const auto& o : f.outputs) c.outputs.push_back(o.compose(g.outputs));
    return c;
}

std::vector<std::vector<int>> multi_indices(int dim, int kmax) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(dim), 0);
    for (int order = 0; order <= kmax; ++order) {
        // Enumerate compositions of `order` into `dim` parts.
        const std::function<void(int, int)> rec = [&](int pos, int left) {
            if (pos == dim - 1) {
                cur[static_cast<std::size_t>(pos)] = left;
                out.push_back(cur);
                return;
            }
            for (int v = left; v >= 0; --v) {
                cur[static_cast<std::size_t>(pos)] = v;
                rec(pos + 1, left - v);
            }
        };
        if (dim > 0) rec(0, order);
    }
    return out;
}

GsfCheckReport gsf_check(const GSFDef& f, const EpsGrid& grid, int kmax, int probe_points,
                         unsigned seed, std::vector<GenNumber> extra_probes) {
    GsfCheckReport rep;
    const int d = f.domain_dim();

    // Probe points that certifiably belong to the domain in the declared sense.
    std::vector<GenNumber> probes;
    for (const GenNumber& x : interior_probes(f.domain, probe_points, seed)) {
        const bool ok = f.strongly_internal_domain
                            ? strong_member(x, f.domain, grid).verdict == Member::In
                            : internal_member(x, f.domain, grid) == Member::In;
        if (ok) probes.push_back(x);
    }
    if (probes.empty() && extra_probes.empty())
        rep.notes.push_back("no probe point certifiably inside the domain");
    probes.insert(probes.end(), extra_probes.begin(), extra_probes.end());

    const auto alphas = multi_indices(d, kmax);

    // Per-point certificates.
    for (const GenNumber& x : probes) {
        Certificate cert;
        cert.point = x;
        for (const auto& alpha : alphas) {
            Classification worst;
            worst.verdict = NetClass::ExactNegligible;
            worst.estimate = ValuationEstimate::at_infinity();
            for (const auto& o : f.outputs) {
                const NetExpr net = derive_alpha(o, alpha).substitute(x.comps());
                const Classification c = classify(net, grid);
                if (rank(c.verdict) > rank(worst.verdict) ||
                    (rank(c.verdict) == rank(worst.verdict) &&
                     c.estimate.value < worst.estimate.value))
                    worst = c;
            }
            cert.orders.emplace_back(alpha, worst);
        }
        cert.moderate = moderate_of(cert.orders);
        rep.certificates.push_back(std::move(cert));
    }

    // Slice-uniform sup bounds per derivative order, over the eroded domain
    // for strongly internal domains (unbounded slices are windowed by the
    // sampler's fallback box).
    const SetFamily region = f.strongly_internal_domain ? SetFamily::eroded(f.domain, 1.0)
                                                        : f.domain;
    std::vector<IndexSet> sets;
    f.domain.collect_geometric(sets);
    for (const auto& o : f.outputs) collect_smooth_sets(o, sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    SupParams sup_params;
    sup_params.budget = 128;
    sup_params.refine_seeds = 2;
    sup_params.refine_steps = 10;
    sup_params.seed = seed;

    for (int order = 0; order <= kmax; ++order) {
        std::vector<SmoothExpr> exprs;
        for (const auto& alpha : alphas) {
            int s = 0;
            for (int a : alpha) s += a;
            if (s != order) continue;
            for (const auto& o : f.outputs) exprs.push_back(derive_alpha(o, alpha));
        }
        std::vector<std::pair<double, double>> tail;
        for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
            const double eps = g.sample(i);
            const SupResult sup = sampled_sup(
                region, eps,
                [&](std::span<const double> p) {
                    double m = -kInf;
                    for (const auto& e : exprs) {
                        double v;
                        try {
                            v = std::abs(e.eval(p, eps));
                        } catch (const EvalError&) {
                            continue;
                        }
                        m = std::max(m, v);
                    }
                    return m;
                },
                sup_params);
            if (sup.samples == 0 || sup.value == -kInf) continue;
            tail.emplace_back(eps, sup.value > 0 ? std::log(sup.value) : -kInf);
        }
        SupBound b;
        b.order = order;
        b.cls = classify_tail_logmags(tail);
        if (b.cls.negligible() || b.cls.verdict == NetClass::Moderate)
            b.bounded = Ternary::True;
        else if (b.cls.verdict == NetClass::NonModerate)
            b.bounded = Ternary::False;
        rep.sup_bounds.push_back(std::move(b));
    }

    bool any_false = false, any_undet = false;
    for (const auto& c : rep.certificates) {
        if (c.moderate == Ternary::False) any_false = true;
        if (c.moderate == Ternary::Undetermined) any_undet = true;
    }
    for (const auto& b : rep.sup_bounds) {
        if (b.bounded == Ternary::False) any_false = true;
        if (b.bounded == Ternary::Undetermined) any_undet = true;
    }
    if (rep.certificates.empty() && rep.sup_bounds.empty()) any_undet = true;
    rep.verdict = any_false ? Ternary::False
                            : (any_undet ? Ternary::Undetermined : Ternary::True);
    return rep;
}

RepIndependence representative_independence(const GSFDef& f, const GenNumber& x,
                                            const EpsGrid& grid, double shift_order) {
    RepIndependence rep;
    rep.shift_order = shift_order;
    std::vector<NetExpr> zc;
    for (int i = 0; i < x.dim(); ++i)
        zc.push_back(NetExpr::prod(NetExpr::constant(i % 2 == 0 ? 1.0 : -1.0),
                                   NetExpr::eps_pow(shift_order)));
    const GenNumber shift{std::move(zc)};
    if (!classify(shift, grid).negligible())
        throw PreconditionError(
            "representative_independence: the shift is not negligible, so it changes the "
            "point rather than the representative");
    const GenNumber y = x + shift;
    const GenNumber fx = gsf_eval(f, x);
    const GenNumber fy = gsf_eval(f, y);

    bool any_false = false, any_undet = false;
    for (int j = 0; j < f.codomain_dim(); ++j) {
        const NetExpr diff = NetExpr::sum(fx.comp(j), NetExpr::neg(fy.comp(j)));
        const Classification c = classify(diff, grid);
        // A pinned order of 10 or better counts as ring agreement even when
        // it sits below the blanket negligibility threshold: the shift was
        // eps^12, so the echo in the output is expected at that scale.
        const bool ok =
            c.negligible() || (c.verdict == NetClass::Moderate && c.estimate.value >= 10.0);
        if (!ok) {
            if (c.verdict == NetClass::Undetermined)
                any_undet = true;
            else
                any_false = true;
        }
        rep.differences.push_back(c);
    }
    rep.verdict = any_false ? Ternary::False
                            : (any_undet ? Ternary::Undetermined : Ternary::True);
    return rep;
}

NullCheck null_check(const GSFDef& f, const SetFamily& region, const EpsGrid& grid,
                     const SupParams& params) {
    NullCheck out;
    std::vector<IndexSet> sets;
    region.collect_geometric(sets);
    for (const auto& o : f.outputs) collect_smooth_sets(o, sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    std::vector<std::pair<double, double>> tail;
    for (std::size_t i = g.tail_begin(); i < g.size(); ++i) {
        const double eps = g.sample(i);
        const SupResult sup = sampled_sup(
            region, eps,
            [&](std::span<const double> p) {
                double m = -kInf;
                for (const auto& o : f.outputs) {
                    try {
                        m = std::max(m, std::abs(o.eval(p, eps)));
                    } catch (const EvalError&) {
                    }
                }
                return m;
            },
            params);
        if (sup.samples == 0 || sup.value == -kInf) continue;
        tail.emplace_back(eps, sup.value > 0 ? std::log(sup.value) : -kInf);
    }
    out.sup = classify_tail_logmags(tail);
    if (out.sup.negligible())
        out.is_null = Ternary::True;
    else if (out.sup.verdict == NetClass::Moderate || out.sup.verdict == NetClass::NonModerate)
        out.is_null = Ternary::False;
    return out;
}

GSFDef cutoff_globalize(const GSFDef& f) {
    GSFDef out{f.name + "-globalized", {}, SetFamily::full(f.domain_dim()), true};
    const SmoothExpr chi = SmoothExpr::cutoff_step(std::make_shared<SetFamily>(f.domain));
    for (const auto& o : f.outputs) out.outputs.push_back(SmoothExpr::prod(chi, o));
    return out;
}

LipschitzReport lipschitz_probe(const GSFDef& f, const SetFamily& region, const EpsGrid& grid,
                                int pairs, unsigned seed) {
    LipschitzReport rep;
    const int d = f.domain_dim();

    std::vector<SmoothExpr> grads;
    for (const auto& o : f.outputs)
        for (int i = 0; i < d; ++i) grads.push_back(o.differentiate(i));

    const auto grad_norm = [&](std::span<const double> p, double eps) {
        double s = 0;
        for (const auto& e : grads) {
            double v;
            try {
                v = e.eval(p, eps);
            } catch (const EvalError&) {
                return std::numeric_limits<double>::quiet_NaN();
            }
            s += v * v;
        }
        return std::sqrt(s);
    };

    std::vector<IndexSet> sets;
    region.collect_geometric(sets);
    for (const auto& o : f.outputs) collect_smooth_sets(o, sets);
    const EpsGrid g = augmented_grid_from_sets(grid, sets);

    SupParams sup_params;
    sup_params.budget = 192;
    sup_params.seed = seed;

    // Tabulate L at every working-grid sample; the classification and the
    // pair checks below read the table at exactly these eps.
    std::vector<std::pair<double, double>> table;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double eps = g.sample(i);
        const SupResult sup = sampled_sup(
            region, eps, [&](std::span<const double> p) { return grad_norm(p, eps); },
            sup_params);
        const double v = (sup.samples > 0 && sup.value > 0) ? sup.value : 0.0;
        // Sampling-gap inflation: the true sup can exceed the sampled one by
        // a factor controlled by the fill distance.
        table.emplace_back(eps, v * (1.0 + 1.0 / 64.0));
    }
    rep.bound = NetExpr::tabulated(std::move(table));
    rep.cls = classify(rep.bound, g);
    rep.moderate = (rep.cls.negligible() || rep.cls.verdict == NetClass::Moderate)
                       ? Ternary::True
                       : (rep.cls.verdict == NetClass::NonModerate ? Ternary::False
                                                                   : Ternary::Undetermined);

    // Ring-level pair checks: constant points sampled from a mid-tail slice.
    const double eps_mid = g.sample((g.tail_begin() + g.size() - 1) / 2);
    const auto pts = sample_points(region, eps_mid, 2 * pairs, seed);
    for (std::size_t i = 0; i + 1 < pts.size() && rep.pairs < pairs; i += 2) {
        const auto& p = pts[i];
        const auto& q = pts[i + 1];
        double gap2 = 0;
        for (int k = 0; k < d; ++k) gap2 += (p[k] - q[k]) * (p[k] - q[k]);
        if (gap2 == 0) continue;
        const GenNumber fp = gsf_eval(f, GenNumber::point(p));
        const GenNumber fq = gsf_eval(f, GenNumber::point(q));
        std::vector<NetExpr> sq;
        for (int j = 0; j < f.codomain_dim(); ++j) {
            const NetExpr dj = NetExpr::sum(fp.comp(j), NetExpr::neg(fq.comp(j)));
            sq.push_back(NetExpr::prod(dj, dj));
        }
        const NetExpr lhs = NetExpr::apply(Prim::Sqrt, NetExpr::sum(std::move(sq)));
        const NetExpr rhs = NetExpr::prod(rep.bound, NetExpr::constant(std::sqrt(gap2)));
        ++rep.pairs;
        const LeqVerdict lv = leq(GenNumber(lhs), GenNumber(rhs), g);
        if (lv.holds != Ternary::True) {
            ++rep.violations;
            std::ostringstream os;
            os << "pair " << rep.pairs << ": the ring inequality came back "
               << to_string(lv.holds);
            rep.notes.push_back(os.str());
        }
    }
    return rep;
}

AfjProbe afj_probe(const GSFDef& f, const GenNumber& x, const EpsGrid& grid, int kmax) {
    if (f.domain_dim() != 1 || f.codomain_dim() != 1)
        throw PreconditionError("afj_probe: scalar domain and codomain only");
    AfjProbe out;
    const NetExpr fx = f.outputs[0].substitute(x.comps());
    const NetExpr fpx = f.outputs[0].differentiate(0).substitute(x.comps());

    bool any_inf = false, all_zero = true;
    std::vector<std::pair<double, double>> fit_pts;
    for (int k = 1; k <= kmax; ++k) {
        const NetExpr xk = NetExpr::sum(x.comp(0), NetExpr::eps_pow(k));
        const NetExpr fk = f.outputs[0].substitute(std::span<const NetExpr>(&xk, 1));
        const NetExpr rem = NetExpr::sum(
            NetExpr::prod(NetExpr::sum(fk, NetExpr::neg(fx)), NetExpr::eps_pow(-k)),
            NetExpr::neg(fpx));
        const Classification c = classify(rem, grid);
        double norm;
        if (c.negligible()) {
            norm = 0.0;
        } else if (c.verdict == NetClass::Moderate) {
            norm = std::exp(-c.estimate.value);
        } else if (c.verdict == NetClass::NonModerate) {
            norm = kInf;
            any_inf = true;
        } else {
            norm = std::numeric_limits<double>::quiet_NaN();
        }
        if (norm != 0.0) all_zero = false;
        if (std::isfinite(norm) && norm > 0) fit_pts.emplace_back(k, std::log(norm));
        out.decay.emplace_back(static_cast<double>(k), norm);
    }

    if (any_inf) {
        out.differentiable = Ternary::False;
        out.note = "remainder escapes every sharp ball";
        return out;
    }
    if (all_zero) {
        out.differentiable = Ternary::True;
        out.note = "remainder vanishes identically";
        return out;
    }
    if (fit_pts.size() < 2) {
        out.note = "too few resolvable remainders for a decay fit";
        return out;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [k, ln] : fit_pts) {
        sx += k;
        sy += ln;
        sxx += k * k;
        sxy += k * ln;
    }
    const double n = static_cast<double>(fit_pts.size());
    const double denom = n * sxx - sx * sx;
    SlopeFit fit;
    fit.slope = denom != 0 ? (n * sxy - sx * sy) / denom : 0.0;
    if (fit.slope <= -0.5)
        out.differentiable = Ternary::True;
    else if (fit.slope > -0.1)
        out.differentiable = Ternary::False;
    std::ostringstream os;
    os << "sharp-norm decay slope " << fit.slope << " over " << fit_pts.size() << " orders";
    out.note = os.str();
    return out;
}

std::vector<GSFDef> gsf_gallery() {
    std::vector<GSFDef> out;
    const SmoothExpr x0 = SmoothExpr::var(0);

    // Scaled spike: eps^-1 * exp(-(x/eps)^2). Pointwise values blow up at 0,
    // yet every derivative stays moderate.
    out.push_back(make_gsf(
        "delta-spike",
        {SmoothExpr::prod(
            SmoothExpr::coeff(NetExpr::eps_pow(-1.0)),
            SmoothExpr::apply(Prim::Exp,
                              SmoothExpr::prod({SmoothExpr::constant(-1.0),
                                                SmoothExpr::coeff(NetExpr::eps_pow(-2.0)),
                                                SmoothExpr::int_pow(x0, 2)})))},
        SetFamily::full(1)));

    out.push_back(make_gsf("square", {SmoothExpr::int_pow(x0, 2)}, SetFamily::full(1)));

    out.push_back(make_gsf("sine", {SmoothExpr::apply(Prim::Sin, x0)}, SetFamily::full(1)));

    // Steep step model: tanh(x / eps).
    out.push_back(make_gsf(
        "steep-tanh",
        {SmoothExpr::apply(Prim::Tanh,
                           SmoothExpr::prod(SmoothExpr::coeff(NetExpr::eps_pow(-1.0)), x0))},
        SetFamily::full(1)));

    // exp(1/x) on the half-line x >= (1/2) / log(1/eps): smooth only past an
    // infinitesimal threshold; the admissible point [1/log(1/eps)] evaluates
    // to the order -1 number [1/eps].
    {
        const NetExpr log_inv = NetExpr::apply(Prim::Log, NetExpr::eps_pow(-1.0));
        const NetExpr lo = NetExpr::prod(NetExpr::constant(0.5), NetExpr::recip(log_inv));
        out.push_back(make_gsf("reciprocal-exp",
                               {SmoothExpr::apply(Prim::Exp, SmoothExpr::int_pow(x0, -1))},
                               SetFamily::half_space({-1.0}, NetExpr::neg(lo))));
    }

    // Smoothly cut bump: chi_{B(0,3/2)} * (1 - x^2) on the unit ball. The
    // domain stays inside the region where the step factor is identically
    // one: certifying across the step's transition band would sample points
    // where the step's higher derivatives genuinely grow faster than any
    // power of 1/eps, so the band is kept outside the certified domain.
    {
        const auto ball = std::make_shared<SetFamily>(
            SetFamily::ball(GenNumber::scalar(0.0), NetExpr::constant(1.5)));
        out.push_back(make_gsf(
            "cut-bump",
            {SmoothExpr::prod(
                SmoothExpr::cutoff_step(ball),
                SmoothExpr::sum(SmoothExpr::constant(1.0),
                                SmoothExpr::prod(SmoothExpr::constant(-1.0),
                                                 SmoothExpr::int_pow(x0, 2))))},
            SetFamily::ball(GenNumber::scalar(0.0), NetExpr::constant(1.0))));
    }
    return out;
}

}  // namespace colombeau
