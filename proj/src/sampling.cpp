#include "colombeau/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace colombeau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp_finite(double x, double fallback) {
    if (x == kInf) return fallback;
    if (x == -kInf) return -fallback;
    return x;
}

// Push a point onto the slice: the sdf is 1-Lipschitz, so stepping against
// its gradient by the (negative) sdf value converges to the boundary fast.
bool project_into(const SetFamily& region, double eps, std::vector<double>& p) {
    for (int it = 0; it < 8; ++it) {
        const double d = region.sdf(p, eps);
        if (d >= 0) return true;
        const auto g = region.sdf_gradient(p, eps);
        double gn = 0;
        for (double v : g) gn += v * v;
        gn = std::sqrt(gn);
        if (!(gn > 1e-12)) return false;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += (-d) * g[i] / gn;
    }
    return region.sdf(p, eps) >= 0;
}

}  // namespace

SupResult::SupResult() : value(-kInf) {}

double halton(unsigned index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

std::vector<double> halton_point(unsigned index, int dim) {
    static const unsigned bases[3] = {2, 3, 5};
    std::vector<double> p(dim);
    for (int i = 0; i < dim; ++i) p[i] = halton(index, bases[i % 3]);
    return p;
}

std::vector<std::vector<double>> anchor_points(const SetFamily& region, double eps) {
    std::vector<std::vector<double>> out;
    const auto eval = [&](const GenNumber& g) {
        std::vector<double> v(g.dim());
        for (int i = 0; i < g.dim(); ++i) v[i] = g.comp(i).eval(eps);
        return v;
    };
    switch (region.kind()) {
        case SetFamily::Kind::Ball:
        case SetFamily::Kind::Punctured:
        case SetFamily::Kind::Points:
        case SetFamily::Kind::Hull:
            for (const auto& g : region.anchors()) out.push_back(eval(g));
            break;
        case SetFamily::Kind::Box: {
            const auto lo = eval(region.anchors()[0]);
            const auto hi = eval(region.anchors()[1]);
            out.push_back(lo);
            out.push_back(hi);
            std::vector<double> mid(lo.size());
            for (std::size_t i = 0; i < lo.size(); ++i) mid[i] = 0.5 * (lo[i] + hi[i]);
            out.push_back(std::move(mid));
            break;
        }
        case SetFamily::Kind::HalfSpace: {
            const auto& n = region.normal();
            double n2 = 0;
            for (double v : n) n2 += v * v;
            const double c = region.nets()[0].eval(eps);
            std::vector<double> p(n.size());
            for (std::size_t i = 0; i < n.size(); ++i) p[i] = c * n[i] / n2;
            out.push_back(std::move(p));
            break;
        }
        default:
            break;
    }
    for (std::size_t i = 0; i < region.child_count(); ++i) {
        auto kid = anchor_points(region.child(i), eps);
        out.insert(out.end(), kid.begin(), kid.end());
    }
    if (out.empty()) out.push_back(std::vector<double>(region.dim(), 0.0));
    return out;
}

SupResult sampled_sup(const SetFamily& region, double eps,
                      const std::function<double(std::span<const double>)>& fn,
                      const SupParams& params) {
    SupResult res;
    const int dim = region.dim();
    const auto bb = region.bounds(eps);
    if (bb.empty()) return res;

    std::vector<double> lo(dim), hi(dim);
    for (int i = 0; i < dim; ++i) {
        lo[i] = clamp_finite(bb.lo[i], params.fallback_radius);
        hi[i] = clamp_finite(bb.hi[i], params.fallback_radius);
        if (!(lo[i] <= hi[i])) return res;
    }

    std::vector<std::vector<double>> candidates;
    candidates.reserve(static_cast<std::size_t>(params.budget));

    // Structural anchors and the eps ladder around them.
    const auto anchors = anchor_points(region, eps);
    for (const auto& a : anchors) {
        candidates.push_back(a);
        for (int k = -params.ladder_span; k <= params.ladder_span; ++k) {
            const double step = eps * std::ldexp(1.0, k);
            if (!std::isfinite(step) || step == 0.0) continue;
            for (int ax = 0; ax < dim; ++ax) {
                for (double sgn : {1.0, -1.0}) {
                    auto p = a;
                    p[ax] += sgn * step;
                    candidates.push_back(std::move(p));
                }
            }
            if (static_cast<int>(candidates.size()) >= params.budget) break;
        }
        if (static_cast<int>(candidates.size()) >= params.budget) break;
    }

    // Low-discrepancy fill of the bounding box.
    const unsigned start = 1 + params.seed % 64;
    for (unsigned idx = start;
         static_cast<int>(candidates.size()) < params.budget; ++idx) {
        auto u = halton_point(idx, dim);
        std::vector<double> p(dim);
        for (int i = 0; i < dim; ++i) p[i] = lo[i] + u[i] * (hi[i] - lo[i]);
        candidates.push_back(std::move(p));
        if (idx - start > static_cast<unsigned>(4 * params.budget)) break;
    }

    // Score the in-slice candidates.
    struct Scored {
        double v;
        std::vector<double> p;
    };
    std::vector<Scored> kept;
    for (auto& p : candidates) {
        if (region.sdf(p, eps) < 0) {
            if (!project_into(region, eps, p)) continue;
        }
        const double v = fn(p);
        ++res.samples;
        if (std::isnan(v)) continue;
        kept.push_back({v, p});
        if (v > res.value) {
            res.value = v;
            res.argmax = p;
        }
    }
    if (kept.empty()) return res;

    // Local ascent from the best seeds, projecting back onto the slice.
    std::sort(kept.begin(), kept.end(), [](const Scored& a, const Scored& b) { return a.v > b.v; });
    const int seeds = std::min<int>(params.refine_seeds, static_cast<int>(kept.size()));
    double diag = 0;
    for (int i = 0; i < dim; ++i) diag += (hi[i] - lo[i]) * (hi[i] - lo[i]);
    diag = std::sqrt(diag);

    for (int s = 0; s < seeds; ++s) {
        std::vector<double> p = kept[s].p;
        double best = kept[s].v;
        double step = std::max(diag / 8.0, eps);
        for (int it = 0; it < params.refine_steps; ++it) {
            // Central-difference gradient of fn at a scale-aware step.
            double scale = eps;
            for (double x : p) scale = std::max(scale, std::abs(x));
            const double h = 1e-6 * scale;
            std::vector<double> g(dim, 0.0);
            double gn = 0;
            {
                std::vector<double> q = p;
                for (int i = 0; i < dim; ++i) {
                    q[i] = p[i] + h;
                    const double fp = fn(q);
                    q[i] = p[i] - h;
                    const double fm = fn(q);
                    q[i] = p[i];
                    g[i] = (fp - fm) / (2 * h);
                    gn += g[i] * g[i];
                }
                res.samples += 2 * dim;
            }
            gn = std::sqrt(gn);
            if (!(gn > 0) || !std::isfinite(gn)) break;
            std::vector<double> q(dim);
            bool advanced = false;
            while (step > 1e-3 * eps) {
                for (int i = 0; i < dim; ++i) q[i] = p[i] + step * g[i] / gn;
                if (region.sdf(q, eps) < 0 && !project_into(region, eps, q)) {
                    step *= 0.5;
                    continue;
                }
                const double v = fn(q);
                ++res.samples;
                if (v > best) {
                    best = v;
                    p = q;
                    advanced = true;
                    break;
                }
                step *= 0.5;
            }
            if (!advanced) break;
        }
        if (best > res.value) {
            res.value = best;
            res.argmax = p;
        }
    }
    return res;
}

std::vector<std::vector<double>> sample_points(const SetFamily& region, double eps, int budget,
                                               unsigned seed) {
    SupParams params;
    params.budget = budget;
    params.seed = seed;
    params.refine_seeds = 0;
    std::vector<std::vector<double>> pts;
    sampled_sup(region, eps,
                [&](std::span<const double> p) {
                    pts.emplace_back(p.begin(), p.end());
                    return 0.0;
                },
                params);
    if (static_cast<int>(pts.size()) > budget) pts.resize(budget);
    return pts;
}

}  // namespace colombeau
