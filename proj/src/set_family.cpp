#include "colombeau/set_family.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "colombeau/errors.hpp"

namespace colombeau {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double norm2(std::span<const double> v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dist(std::span<const double> p, std::span<const double> q) {
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
    return std::sqrt(s);
}

std::vector<double> eval_point(const GenNumber& g, double eps) {
    std::vector<double> out(g.dim());
    for (int i = 0; i < g.dim(); ++i) out[i] = g.comp(i).eval(eps);
    return out;
}

// log(e^a + e^b) without overflow.
double log_add(double a, double b) {
    if (a == -kInf) return b;
    if (b == -kInf) return a;
    const double hi = std::max(a, b), lo = std::min(a, b);
    if (hi == kInf) return kInf;
    return hi + std::log1p(std::exp(lo - hi));
}

// log of the Euclidean norm bound max_i log|x_i| + 0.5 log(d).
double log_norm_bound(const GenNumber& g, double eps) {
    double m = -kInf;
    for (const auto& c : g.comps()) m = std::max(m, c.log_abs_eval(eps));
    if (m == -kInf) return -kInf;
    return m + 0.5 * std::log(static_cast<double>(g.dim()));
}

double dist_to_segment(std::span<const double> p, std::span<const double> a,
                       std::span<const double> b) {
    double ab2 = 0, ap_ab = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        ab2 += (b[i] - a[i]) * (b[i] - a[i]);
        ap_ab += (p[i] - a[i]) * (b[i] - a[i]);
    }
    double t = ab2 > 0 ? std::clamp(ap_ab / ab2, 0.0, 1.0) : 0.0;
    double s = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double c = a[i] + t * (b[i] - a[i]);
        s += (p[i] - c) * (p[i] - c);
    }
    return std::sqrt(s);
}

double cross2(const std::array<double, 2>& o, const std::array<double, 2>& a,
              const std::array<double, 2>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew monotone chain; returns the hull counterclockwise without repeats.
std::vector<std::array<double, 2>> monotone_chain(std::vector<std::array<double, 2>> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<std::array<double, 2>> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

double polygon_sdf(const std::vector<std::array<double, 2>>& poly, std::span<const double> p) {
    if (poly.empty()) return -kInf;
    if (poly.size() == 1) return -dist(p, poly[0]);
    if (poly.size() == 2) return -dist_to_segment(p, poly[0], poly[1]);
    double dmin = kInf;
    bool inside = true;
    const std::array<double, 2> q{p[0], p[1]};
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& a = poly[i];
        const auto& b = poly[(i + 1) % poly.size()];
        dmin = std::min(dmin, dist_to_segment(p, a, b));
        if (cross2(a, b, q) < 0) inside = false;
    }
    return inside ? dmin : -dmin;
}

}  // namespace

bool SetFamily::BoxBounds::empty() const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i])) return true;
    return false;
}

SetFamily SetFamily::empty(int dim) {
    if (dim < 1) throw PreconditionError("SetFamily: dimension must be positive");
    SetFamily f;
    f.kind_ = Kind::Empty;
    f.dim_ = dim;
    return f;
}

SetFamily SetFamily::full(int dim) {
    if (dim < 1) throw PreconditionError("SetFamily: dimension must be positive");
    SetFamily f;
    f.kind_ = Kind::Full;
    f.dim_ = dim;
    return f;
}

SetFamily SetFamily::ball(GenNumber center, NetExpr radius) {
    SetFamily f;
    f.kind_ = Kind::Ball;
    f.dim_ = center.dim();
    f.pts_.push_back(std::move(center));
    f.nets_.push_back(std::move(radius));
    return f;
}

SetFamily SetFamily::box(GenNumber lo, GenNumber hi) {
    if (lo.dim() != hi.dim()) throw PreconditionError("SetFamily::box: corner dimensions differ");
    SetFamily f;
    f.kind_ = Kind::Box;
    f.dim_ = lo.dim();
    f.pts_.push_back(std::move(lo));
    f.pts_.push_back(std::move(hi));
    return f;
}

SetFamily SetFamily::half_space(std::vector<double> normal, NetExpr offset) {
    if (norm2(normal) <= 0) throw PreconditionError("SetFamily::half_space: zero normal");
    SetFamily f;
    f.kind_ = Kind::HalfSpace;
    f.dim_ = static_cast<int>(normal.size());
    f.normal_ = std::move(normal);
    f.nets_.push_back(std::move(offset));
    return f;
}

SetFamily SetFamily::points(std::vector<GenNumber> pts) {
    if (pts.empty()) throw PreconditionError("SetFamily::points: need at least one point");
    SetFamily f;
    f.kind_ = Kind::Points;
    f.dim_ = pts.front().dim();
    for (const auto& p : pts)
        if (p.dim() != f.dim_) throw PreconditionError("SetFamily::points: mixed dimensions");
    f.pts_ = std::move(pts);
    return f;
}

SetFamily SetFamily::punctured_ball(GenNumber center, NetExpr radius) {
    SetFamily f = ball(std::move(center), std::move(radius));
    f.kind_ = Kind::Punctured;
    return f;
}

SetFamily SetFamily::complement(SetFamily a) {
    SetFamily f;
    f.kind_ = Kind::Complement;
    f.dim_ = a.dim_;
    f.exact_ = a.exact_;
    f.kids_.push_back(std::make_shared<SetFamily>(std::move(a)));
    return f;
}

SetFamily SetFamily::set_union(SetFamily a, SetFamily b) {
    if (a.dim_ != b.dim_) throw PreconditionError("SetFamily::set_union: dimension mismatch");
    SetFamily f;
    f.kind_ = Kind::Union;
    f.dim_ = a.dim_;
    f.exact_ = false;  // max of sdfs is exact outside, only a lower bound inside
    f.kids_.push_back(std::make_shared<SetFamily>(std::move(a)));
    f.kids_.push_back(std::make_shared<SetFamily>(std::move(b)));
    return f;
}

SetFamily SetFamily::set_intersection(SetFamily a, SetFamily b) {
    if (a.dim_ != b.dim_)
        throw PreconditionError("SetFamily::set_intersection: dimension mismatch");
    SetFamily f;
    f.kind_ = Kind::Intersection;
    f.dim_ = a.dim_;
    f.exact_ = false;  // min of sdfs is exact inside, only a bound outside
    f.kids_.push_back(std::make_shared<SetFamily>(std::move(a)));
    f.kids_.push_back(std::make_shared<SetFamily>(std::move(b)));
    return f;
}

SetFamily SetFamily::eroded(SetFamily a, double order) {
    SetFamily f;
    f.kind_ = Kind::Eroded;
    f.dim_ = a.dim_;
    f.exact_ = a.exact_;
    f.order_ = order;
    f.kids_.push_back(std::make_shared<SetFamily>(std::move(a)));
    return f;
}

SetFamily SetFamily::dilated(SetFamily a, double order) {
    SetFamily f = eroded(std::move(a), order);
    f.kind_ = Kind::Dilated;
    return f;
}

SetFamily SetFamily::convex_hull(std::vector<GenNumber> pts) {
    SetFamily f = points(std::move(pts));
    if (f.dim_ > 2)
        throw UnsupportedError("SetFamily::convex_hull: implemented for dimensions 1 and 2");
    f.kind_ = Kind::Hull;
    return f;
}

double SetFamily::sdf(std::span<const double> p, double eps) const {
    if (static_cast<int>(p.size()) != dim_)
        throw PreconditionError("SetFamily::sdf: point dimension mismatch");
    switch (kind_) {
        case Kind::Empty:
            return -kInf;
        case Kind::Full:
            return kInf;
        case Kind::Ball: {
            const auto c = eval_point(pts_[0], eps);
            return nets_[0].eval(eps) - dist(p, c);
        }
        case Kind::Punctured: {
            const auto c = eval_point(pts_[0], eps);
            const double dc = dist(p, c);
            return std::min(nets_[0].eval(eps) - dc, dc);
        }
        case Kind::Box: {
            const auto lo = eval_point(pts_[0], eps);
            const auto hi = eval_point(pts_[1], eps);
            double depth = kInf, out2 = 0;
            for (int i = 0; i < dim_; ++i) {
                const double q = std::max(lo[i] - p[i], p[i] - hi[i]);
                depth = std::min(depth, -q);
                if (q > 0) out2 += q * q;
            }
            return out2 > 0 ? -std::sqrt(out2) : depth;
        }
        case Kind::HalfSpace: {
            double dot = 0;
            for (int i = 0; i < dim_; ++i) dot += normal_[i] * p[i];
            return (nets_[0].eval(eps) - dot) / norm2(normal_);
        }
        case Kind::Points: {
            double best = kInf;
            for (const auto& pt : pts_) best = std::min(best, dist(p, eval_point(pt, eps)));
            return -best;
        }
        case Kind::Complement:
            return -kids_[0]->sdf(p, eps);
        case Kind::Union:
            return std::max(kids_[0]->sdf(p, eps), kids_[1]->sdf(p, eps));
        case Kind::Intersection:
            return std::min(kids_[0]->sdf(p, eps), kids_[1]->sdf(p, eps));
        case Kind::Eroded:
            return kids_[0]->sdf(p, eps) - std::pow(eps, order_);
        case Kind::Dilated:
            return kids_[0]->sdf(p, eps) + std::pow(eps, order_);
        case Kind::Hull: {
            if (dim_ == 1) {
                double lo = kInf, hi = -kInf;
                for (const auto& pt : pts_) {
                    const double v = pt.comp(0).eval(eps);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                return std::min(p[0] - lo, hi - p[0]);
            }
            std::vector<std::array<double, 2>> pts;
            pts.reserve(pts_.size());
            for (const auto& pt : pts_)
                pts.push_back({pt.comp(0).eval(eps), pt.comp(1).eval(eps)});
            return polygon_sdf(monotone_chain(std::move(pts)), p);
        }
    }
    return -kInf;  // unreachable
}

std::vector<double> SetFamily::sdf_gradient(std::span<const double> p, double eps) const {
    double scale = eps;
    for (double x : p) scale = std::max(scale, std::abs(x));
    const double h = 1e-6 * std::max(scale, 1e-280);
    std::vector<double> g(p.size());
    std::vector<double> q(p.begin(), p.end());
    for (std::size_t i = 0; i < p.size(); ++i) {
        q[i] = p[i] + h;
        const double fp = sdf(q, eps);
        q[i] = p[i] - h;
        const double fm = sdf(q, eps);
        q[i] = p[i];
        g[i] = (fp - fm) / (2 * h);
    }
    return g;
}

SetFamily::BoxBounds SetFamily::bounds(double eps) const {
    BoxBounds b;
    b.lo.assign(dim_, -kInf);
    b.hi.assign(dim_, kInf);
    switch (kind_) {
        case Kind::Empty:
            b.lo.assign(dim_, kInf);
            b.hi.assign(dim_, -kInf);
            return b;
        case Kind::Full:
        case Kind::HalfSpace:
        case Kind::Complement:
            return b;
        case Kind::Ball:
        case Kind::Punctured: {
            const auto c = eval_point(pts_[0], eps);
            const double r = nets_[0].eval(eps);
            for (int i = 0; i < dim_; ++i) {
                b.lo[i] = c[i] - r;
                b.hi[i] = c[i] + r;
            }
            return b;
        }
        case Kind::Box: {
            b.lo = eval_point(pts_[0], eps);
            b.hi = eval_point(pts_[1], eps);
            return b;
        }
        case Kind::Points:
        case Kind::Hull: {
            b.lo.assign(dim_, kInf);
            b.hi.assign(dim_, -kInf);
            for (const auto& pt : pts_) {
                const auto v = eval_point(pt, eps);
                for (int i = 0; i < dim_; ++i) {
                    b.lo[i] = std::min(b.lo[i], v[i]);
                    b.hi[i] = std::max(b.hi[i], v[i]);
                }
            }
            return b;
        }
        case Kind::Union: {
            const BoxBounds a = kids_[0]->bounds(eps);
            const BoxBounds c = kids_[1]->bounds(eps);
            if (a.empty()) return c;
            if (c.empty()) return a;
            for (int i = 0; i < dim_; ++i) {
                b.lo[i] = std::min(a.lo[i], c.lo[i]);
                b.hi[i] = std::max(a.hi[i], c.hi[i]);
            }
            return b;
        }
        case Kind::Intersection: {
            const BoxBounds a = kids_[0]->bounds(eps);
            const BoxBounds c = kids_[1]->bounds(eps);
            for (int i = 0; i < dim_; ++i) {
                b.lo[i] = std::max(a.lo[i], c.lo[i]);
                b.hi[i] = std::min(a.hi[i], c.hi[i]);
            }
            return b;
        }
        case Kind::Eroded:
            return kids_[0]->bounds(eps);
        case Kind::Dilated: {
            b = kids_[0]->bounds(eps);
            const double r = std::pow(eps, order_);
            for (int i = 0; i < dim_; ++i) {
                b.lo[i] -= r;
                b.hi[i] += r;
            }
            return b;
        }
    }
    return b;  // unreachable
}

double SetFamily::log_outer_radius(double eps) const {
    switch (kind_) {
        case Kind::Empty:
            return -kInf;
        case Kind::Full:
        case Kind::HalfSpace:
        case Kind::Complement:
            return kInf;
        case Kind::Ball:
        case Kind::Punctured: {
            const SignedLog r = nets_[0].signed_log_eval(eps);
            if (r.sign <= 0) return -kInf;  // empty slice
            return log_add(log_norm_bound(pts_[0], eps), r.logabs);
        }
        case Kind::Box:
        case Kind::Points:
        case Kind::Hull: {
            double m = -kInf;
            for (const auto& pt : pts_) m = std::max(m, log_norm_bound(pt, eps));
            return m;
        }
        case Kind::Union:
            return std::max(kids_[0]->log_outer_radius(eps), kids_[1]->log_outer_radius(eps));
        case Kind::Intersection:
            return std::min(kids_[0]->log_outer_radius(eps), kids_[1]->log_outer_radius(eps));
        case Kind::Eroded:
            return kids_[0]->log_outer_radius(eps);
        case Kind::Dilated:
            return log_add(kids_[0]->log_outer_radius(eps), order_ * std::log(eps));
    }
    return kInf;  // unreachable
}

void SetFamily::collect_geometric(std::vector<IndexSet>& out) const {
    for (const auto& pt : pts_)
        for (const auto& c : pt.comps()) c.collect_geometric(out);
    for (const auto& n : nets_) n.collect_geometric(out);
    for (const auto& k : kids_) k->collect_geometric(out);
}

double cutoff_step_value(const SetFamily& f, const std::vector<int>& alpha, double eps,
                         const std::vector<double>& p) {
    if (static_cast<int>(p.size()) != f.dim())
        throw PreconditionError("cutoff_step_value: point dimension mismatch");
    int order = 0;
    for (int a : alpha) order += a;

    const double d = f.sdf(p, eps);
    const double log_lo = -2.0 / eps;                  // chi = 0 at or below
    const double log_hi = std::log(2.0) - 1.0 / eps;   // chi = 1 at or above
    if (!(d > 0.0)) return 0.0;
    const double ld = std::log(d);
    if (ld <= log_lo) return 0.0;
    if (ld >= log_hi) return order == 0 ? 1.0 : 0.0;

    // Inside the exponentially thin transition band: the classical smooth
    // step a(t)/(a(t)+a(1-t)), a(t) = exp(-1/t), in log-sdf coordinates.
    const double t = (ld - log_lo) / (log_hi - log_lo);
    const double ga = t > 0 ? std::exp(-1.0 / t) : 0.0;
    const double gb = t < 1 ? std::exp(-1.0 / (1.0 - t)) : 0.0;
    const double s = ga / (ga + gb);
    if (order == 0) return s;
    if (order == 1) {
        const double dt2 = (ga + gb) * (ga + gb);
        const double ds_dt =
            dt2 > 0 ? ga * gb * (1.0 / (t * t) + 1.0 / ((1 - t) * (1 - t))) / dt2 : 0.0;
        const auto g = f.sdf_gradient(p, eps);
        double axis_g = 0.0;
        for (std::size_t i = 0; i < alpha.size() && i < g.size(); ++i)
            if (alpha[i] == 1) axis_g = g[i];
        return ds_dt / ((log_hi - log_lo) * d) * axis_g;
    }
    return 0.0;
}

std::optional<HullWitness> caratheodory_witness(const SetFamily& hull, std::span<const double> q,
                                                double eps) {
    if (hull.kind() != SetFamily::Kind::Hull && hull.kind() != SetFamily::Kind::Points)
        throw PreconditionError("caratheodory_witness: expected a hull or point family");
    const auto& pts = hull.anchors();
    const int n = static_cast<int>(pts.size());
    constexpr double kTol = 1e-9;

    std::vector<std::vector<double>> v(n);
    for (int i = 0; i < n; ++i) v[i] = eval_point(pts[i], eps);

    // Single vertex.
    for (int i = 0; i < n; ++i)
        if (dist(q, v[i]) <= kTol) return HullWitness{{i}, {1.0}};

    // Edge: projection parameter within [0,1] and distance ~ 0.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double ab2 = 0, ap_ab = 0;
            for (std::size_t k = 0; k < q.size(); ++k) {
                ab2 += (v[j][k] - v[i][k]) * (v[j][k] - v[i][k]);
                ap_ab += (q[k] - v[i][k]) * (v[j][k] - v[i][k]);
            }
            if (ab2 <= 0) continue;
            const double t = ap_ab / ab2;
            if (t < -kTol || t > 1 + kTol) continue;
            if (dist_to_segment(q, v[i], v[j]) > kTol) continue;
            const double tc = std::clamp(t, 0.0, 1.0);
            return HullWitness{{i, j}, {1 - tc, tc}};
        }

    if (hull.dim() != 2) return std::nullopt;

    // Triangle with nonnegative barycentric coordinates.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                const double det = (v[j][0] - v[i][0]) * (v[k][1] - v[i][1]) -
                                   (v[k][0] - v[i][0]) * (v[j][1] - v[i][1]);
                if (std::abs(det) <= 1e-300) continue;
                const double w1 = ((q[0] - v[i][0]) * (v[k][1] - v[i][1]) -
                                   (v[k][0] - v[i][0]) * (q[1] - v[i][1])) /
                                  det;
                const double w2 = ((v[j][0] - v[i][0]) * (q[1] - v[i][1]) -
                                   (q[0] - v[i][0]) * (v[j][1] - v[i][1])) /
                                  det;
                const double w0 = 1 - w1 - w2;
                if (w0 < -kTol || w1 < -kTol || w2 < -kTol) continue;
                const double s = std::max(w0, 0.0) + std::max(w1, 0.0) + std::max(w2, 0.0);
                return HullWitness{{i, j, k},
                                   {std::max(w0, 0.0) / s, std::max(w1, 0.0) / s,
                                    std::max(w2, 0.0) / s}};
            }
    return std::nullopt;
}

}  // namespace colombeau
