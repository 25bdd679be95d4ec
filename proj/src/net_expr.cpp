#include "colombeau/net_expr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "colombeau/errors.hpp"
#include "colombeau/set_family.hpp"

namespace colombeau {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double interp_table(const std::vector<std::pair<double, double>>& table, double eps) {
    // Table is sorted by eps descending. Exact at stored samples; log-linear
    // in eps between neighbors; clamped to the nearest end outside the range.
    if (table.empty()) throw EvalError("data: empty table");
    if (eps >= table.front().first) return table.front().second;
    if (eps <= table.back().first) return table.back().second;
    std::size_t lo = 0, hi = table.size() - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (table[mid].first >= eps)
            lo = mid;
        else
            hi = mid;
    }
    const auto [e0, v0] = table[lo];
    const auto [e1, v1] = table[hi];
    if (eps == e0) return v0;
    if (eps == e1) return v1;
    double t = std::log(eps / e0) / std::log(e1 / e0);
    return v0 + t * (v1 - v0);
}

}  // namespace

double SignedLog::to_double() const {
    if (sign == 0) return 0.0;
    return static_cast<double>(sign) * std::exp(logabs);
}

SignedLog SignedLog::from_double(double v) {
    if (v == 0.0) return {0, -kInf};
    return {v > 0.0 ? 1 : -1, std::log(std::abs(v))};
}

NetExpr NetExpr::constant(double c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->a = c;
    return NetExpr(std::move(n));
}

NetExpr NetExpr::eps_pow(double a) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::EpsPow;
    n->a = a;
    return NetExpr(std::move(n));
}

NetExpr NetExpr::exp_inv_eps() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::ExpInvEps;
    return NetExpr(std::move(n));
}

NetExpr NetExpr::mask(IndexSet s, NetExpr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Mask;
    n->iset = std::move(s);
    n->kids = {std::move(child)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::sum(std::vector<NetExpr> kids) {
    if (kids.empty()) throw std::invalid_argument("NetExpr::sum: needs at least one child");
    if (kids.size() == 1) return kids.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Sum;
    n->kids = std::move(kids);
    return NetExpr(std::move(n));
}

NetExpr NetExpr::sum(NetExpr a, NetExpr b) { return sum(std::vector<NetExpr>{std::move(a), std::move(b)}); }

NetExpr NetExpr::prod(std::vector<NetExpr> kids) {
    if (kids.empty()) throw std::invalid_argument("NetExpr::prod: needs at least one child");
    if (kids.size() == 1) return kids.front();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Prod;
    n->kids = std::move(kids);
    return NetExpr(std::move(n));
}

NetExpr NetExpr::prod(NetExpr a, NetExpr b) { return prod(std::vector<NetExpr>{std::move(a), std::move(b)}); }

NetExpr NetExpr::neg(NetExpr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Neg;
    n->kids = {std::move(child)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::abs(NetExpr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Abs;
    n->kids = {std::move(child)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::min(NetExpr a, NetExpr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Min;
    n->kids = {std::move(a), std::move(b)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::max(NetExpr a, NetExpr b) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Max;
    n->kids = {std::move(a), std::move(b)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::recip(NetExpr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Recip;
    n->kids = {std::move(child)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::apply(Prim p, NetExpr child) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Apply;
    n->prim = p;
    n->kids = {std::move(child)};
    return NetExpr(std::move(n));
}

NetExpr NetExpr::cutoff(std::shared_ptr<const SetFamily> fam, std::vector<int> alpha,
                        std::vector<NetExpr> point) {
    if (!fam) throw std::invalid_argument("NetExpr::cutoff: null family");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cutoff;
    n->family = std::move(fam);
    n->alpha = std::move(alpha);
    n->kids = std::move(point);
    return NetExpr(std::move(n));
}

NetExpr NetExpr::tabulated(std::vector<std::pair<double, double>> table) {
    if (table.empty()) throw std::invalid_argument("NetExpr::tabulated: empty table");
    std::sort(table.begin(), table.end(),
              [](const auto& x, const auto& y) { return x.first > y.first; });
    auto n = std::make_shared<Node>();
    n->kind = Kind::Data;
    n->table = std::move(table);
    return NetExpr(std::move(n));
}

NetExpr NetExpr::idempotent(const IndexSet& s) { return mask(s, constant(1.0)); }

double NetExpr::eval(double eps) const {
    if (!(eps > 0.0) || eps > 1.0) throw EvalError("eval: eps must lie in (0,1]");
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const: return n.a;
        case Kind::EpsPow: return std::pow(eps, n.a);
        case Kind::ExpInvEps: return std::exp(1.0 / eps);
        case Kind::Mask: return n.iset->contains(eps) ? n.kids[0].eval(eps) : 0.0;
        case Kind::Sum: {
            double acc = 0.0;
            for (const auto& k : n.kids) acc += k.eval(eps);
            return acc;
        }
        case Kind::Prod: {
            double acc = 1.0;
            for (const auto& k : n.kids) acc *= k.eval(eps);
            return acc;
        }
        case Kind::Neg: return -n.kids[0].eval(eps);
        case Kind::Abs: return std::abs(n.kids[0].eval(eps));
        case Kind::Min: return std::min(n.kids[0].eval(eps), n.kids[1].eval(eps));
        case Kind::Max: return std::max(n.kids[0].eval(eps), n.kids[1].eval(eps));
        case Kind::Recip: {
            double v = n.kids[0].eval(eps);
            if (v == 0.0) throw EvalError("recip: child evaluates to exact zero");
            return 1.0 / v;
        }
        case Kind::Apply: {
            double v = n.kids[0].eval(eps);
            switch (n.prim) {
                case Prim::Sin: return std::sin(v);
                case Prim::Cos: return std::cos(v);
                case Prim::Exp: return std::exp(v);
                case Prim::Tanh: return std::tanh(v);
                case Prim::Log:
                    if (!(v > 0.0)) throw EvalError("apply log: child must be positive");
                    return std::log(v);
                case Prim::Sqrt:
                    if (v < 0.0) throw EvalError("apply sqrt: child must be nonnegative");
                    return std::sqrt(v);
            }
            return 0.0;  // unreachable
        }
        case Kind::Cutoff: {
            std::vector<double> p(n.kids.size());
            for (std::size_t i = 0; i < n.kids.size(); ++i) p[i] = n.kids[i].eval(eps);
            return cutoff_step_value(*n.family, n.alpha, eps, p);
        }
        case Kind::Data: return interp_table(n.table, eps);
    }
    return 0.0;  // unreachable
}

SignedLog NetExpr::signed_log_eval(double eps) const {
    if (!(eps > 0.0) || eps > 1.0) throw EvalError("signed_log_eval: eps must lie in (0,1]");
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Const: return SignedLog::from_double(n.a);
        case Kind::EpsPow: return {1, n.a * std::log(eps)};
        case Kind::ExpInvEps: return {1, 1.0 / eps};
        case Kind::Mask:
            if (!n.iset->contains(eps)) return {0, -kInf};
            return n.kids[0].signed_log_eval(eps);
        case Kind::Sum: {
            // Factor out the largest magnitude so the residual sum stays in
            // range; exact cancellations surface as residual == 0.
            std::vector<SignedLog> vals;
            vals.reserve(n.kids.size());
            double top = -kInf;
            for (const auto& k : n.kids) {
                SignedLog s = k.signed_log_eval(eps);
                if (s.sign != 0) top = std::max(top, s.logabs);
                vals.push_back(s);
            }
            if (top == -kInf) return {0, -kInf};
            double acc = 0.0;
            for (const auto& s : vals)
                if (s.sign != 0) acc += static_cast<double>(s.sign) * std::exp(s.logabs - top);
            if (acc == 0.0) return {0, -kInf};
            return {acc > 0.0 ? 1 : -1, top + std::log(std::abs(acc))};
        }
        case Kind::Prod: {
            int sign = 1;
            double lg = 0.0;
            for (const auto& k : n.kids) {
                SignedLog s = k.signed_log_eval(eps);
                if (s.sign == 0) return {0, -kInf};
                sign *= s.sign;
                lg += s.logabs;
            }
            return {sign, lg};
        }
        case Kind::Neg: {
            SignedLog s = n.kids[0].signed_log_eval(eps);
            s.sign = -s.sign;
            return s;
        }
        case Kind::Abs: {
            SignedLog s = n.kids[0].signed_log_eval(eps);
            if (s.sign != 0) s.sign = 1;
            return s;
        }
        case Kind::Min:
        case Kind::Max: {
            SignedLog a = n.kids[0].signed_log_eval(eps);
            SignedLog b = n.kids[1].signed_log_eval(eps);
            auto less = [](const SignedLog& x, const SignedLog& y) {
                if (x.sign != y.sign) return x.sign < y.sign;
                if (x.sign > 0) return x.logabs < y.logabs;
                if (x.sign < 0) return x.logabs > y.logabs;
                return false;
            };
            bool a_less = less(a, b);
            if (n.kind == Kind::Min) return a_less ? a : b;
            return a_less ? b : a;
        }
        case Kind::Recip: {
            SignedLog s = n.kids[0].signed_log_eval(eps);
            if (s.sign == 0) throw EvalError("recip: child evaluates to exact zero");
            return {s.sign, -s.logabs};
        }
        case Kind::Apply: {
            SignedLog s = n.kids[0].signed_log_eval(eps);
            switch (n.prim) {
                case Prim::Exp:
                    // log|e^child| = child, so huge exponents stay finite here.
                    return {1, s.to_double()};
                case Prim::Log: {
                    if (s.sign <= 0) throw EvalError("apply log: child must be positive");
                    // ln(child) = child.logabs exactly.
                    return SignedLog::from_double(s.logabs);
                }
                case Prim::Sqrt:
                    if (s.sign < 0) throw EvalError("apply sqrt: child must be nonnegative");
                    if (s.sign == 0) return {0, -kInf};
                    return {1, 0.5 * s.logabs};
                case Prim::Sin: return SignedLog::from_double(std::sin(s.to_double()));
                case Prim::Cos: return SignedLog::from_double(std::cos(s.to_double()));
                case Prim::Tanh: return SignedLog::from_double(std::tanh(s.to_double()));
            }
            return {0, -kInf};  // unreachable
        }
        case Kind::Cutoff:
        case Kind::Data: return SignedLog::from_double(eval(eps));
    }
    return {0, -kInf};  // unreachable
}

double NetExpr::log_abs_eval(double eps) const { return signed_log_eval(eps).logabs; }

void NetExpr::collect_geometric(std::vector<IndexSet>& out) const {
    const Node& n = *node_;
    if (n.kind == Kind::Mask && n.iset->kind() == IndexSet::Kind::Geometric) {
        bool seen = false;
        for (const auto& s : out)
            if (s.same_structure(*n.iset)) seen = true;
        if (!seen) out.push_back(*n.iset);
    }
    if (n.kind == Kind::Cutoff && n.family) n.family->collect_geometric(out);
    for (const auto& k : n.kids) k.collect_geometric(out);
}

EpsGrid augmented_grid(const EpsGrid& grid, std::span<const NetExpr> nets) {
    std::vector<IndexSet> sets;
    for (const auto& n : nets) n.collect_geometric(sets);
    return augmented_grid_from_sets(grid, sets);
}

EpsGrid augmented_grid_from_sets(const EpsGrid& grid, std::span<const IndexSet> sets) {
    if (sets.empty()) return grid;
    std::vector<double> pts;
    for (const auto& s : sets) {
        auto w = s.witness_points(grid.min_sample());
        pts.insert(pts.end(), w.begin(), w.end());
    }
    return grid.augmented(pts);
}

EpsGrid augmented_grid(const EpsGrid& grid, const NetExpr& net) {
    return augmented_grid(grid, std::span<const NetExpr>(&net, 1));
}

GenNumber::GenNumber(NetExpr scalar)
    : comps_{std::move(scalar)}, cache_(std::make_shared<Cache>()) {}

GenNumber::GenNumber(std::vector<NetExpr> comps)
    : comps_(std::move(comps)), cache_(std::make_shared<Cache>()) {
    if (comps_.empty()) throw std::invalid_argument("GenNumber: needs at least one component");
}

GenNumber GenNumber::scalar(double c) { return GenNumber(NetExpr::constant(c)); }

GenNumber GenNumber::point(std::span<const double> coords) {
    std::vector<NetExpr> comps;
    comps.reserve(coords.size());
    for (double c : coords) comps.push_back(NetExpr::constant(c));
    return GenNumber(std::move(comps));
}

std::vector<double> GenNumber::eval(double eps) const {
    std::vector<double> out(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) out[i] = comps_[i].eval(eps);
    return out;
}

std::optional<Classification> GenNumber::cached_class(const EpsGrid& grid) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->grid && *cache_->grid == grid) return cache_->cls;
    return std::nullopt;
}

void GenNumber::store_class(const EpsGrid& grid, const Classification& c) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    cache_->grid = grid;
    cache_->cls = c;
}

GenNumber interleave(const IndexSet& s, const GenNumber& x, const GenNumber& y) {
    if (x.dim() != y.dim())
        throw std::invalid_argument("interleave: operands must share a dimension");
    std::vector<NetExpr> comps;
    comps.reserve(static_cast<std::size_t>(x.dim()));
    IndexSet sc = s.complement();
    for (int i = 0; i < x.dim(); ++i)
        comps.push_back(NetExpr::sum(NetExpr::mask(s, x.comp(i)), NetExpr::mask(sc, y.comp(i))));
    return GenNumber(std::move(comps));
}

GenNumber wedge(const GenNumber& x, const GenNumber& y) {
    if (x.dim() != y.dim()) throw std::invalid_argument("wedge: operands must share a dimension");
    std::vector<NetExpr> comps;
    comps.reserve(static_cast<std::size_t>(x.dim()));
    for (int i = 0; i < x.dim(); ++i) comps.push_back(NetExpr::min(x.comp(i), y.comp(i)));
    return GenNumber(std::move(comps));
}

namespace {
GenNumber zip(const GenNumber& x, const GenNumber& y, NetExpr (*f)(NetExpr, NetExpr)) {
    if (x.dim() != y.dim()) throw std::invalid_argument("GenNumber: dimension mismatch");
    std::vector<NetExpr> comps;
    comps.reserve(static_cast<std::size_t>(x.dim()));
    for (int i = 0; i < x.dim(); ++i) comps.push_back(f(x.comp(i), y.comp(i)));
    return GenNumber(std::move(comps));
}
}  // namespace

GenNumber operator+(const GenNumber& x, const GenNumber& y) {
    return zip(x, y, [](NetExpr a, NetExpr b) { return NetExpr::sum(std::move(a), std::move(b)); });
}

GenNumber operator-(const GenNumber& x, const GenNumber& y) {
    return zip(x, y, [](NetExpr a, NetExpr b) {
        return NetExpr::sum(std::move(a), NetExpr::neg(std::move(b)));
    });
}

GenNumber operator*(const GenNumber& x, const GenNumber& y) {
    return zip(x, y, [](NetExpr a, NetExpr b) { return NetExpr::prod(std::move(a), std::move(b)); });
}

}  // namespace colombeau
