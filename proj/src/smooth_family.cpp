#include "colombeau/smooth_family.hpp"

#include <algorithm>
#include <cmath>

#include "colombeau/errors.hpp"

namespace colombeau {

SmoothExpr SmoothExpr::make(Node n) {
    return SmoothExpr(std::make_shared<const Node>(std::move(n)));
}

namespace {

bool is_zero_coeff(const SmoothExpr& e) {
    return e.kind() == SmoothExpr::Kind::Coeff &&
           e.node().coeff->kind() == NetExpr::Kind::Const && e.node().coeff->node().a == 0.0;
}

}  // namespace

SmoothExpr SmoothExpr::var(int index) {
    if (index < 0) throw PreconditionError("SmoothExpr::var: negative index");
    Node n;
    n.kind = Kind::Var;
    n.var = index;
    return make(std::move(n));
}

SmoothExpr SmoothExpr::coeff(NetExpr c) {
    Node n;
    n.kind = Kind::Coeff;
    n.coeff = std::move(c);
    return make(std::move(n));
}

SmoothExpr SmoothExpr::constant(double c) { return coeff(NetExpr::constant(c)); }

SmoothExpr SmoothExpr::sum(std::vector<SmoothExpr> kids) {
    if (kids.empty()) throw PreconditionError("SmoothExpr::sum: needs a child");
    if (kids.size() == 1) return kids.front();
    Node n;
    n.kind = Kind::Sum;
    n.kids = std::move(kids);
    return make(std::move(n));
}

SmoothExpr SmoothExpr::sum(SmoothExpr a, SmoothExpr b) {
    std::vector<SmoothExpr> kids;
    kids.push_back(std::move(a));
    kids.push_back(std::move(b));
    return sum(std::move(kids));
}

SmoothExpr SmoothExpr::prod(std::vector<SmoothExpr> kids) {
    if (kids.empty()) throw PreconditionError("SmoothExpr::prod: needs a child");
    if (kids.size() == 1) return kids.front();
    Node n;
    n.kind = Kind::Prod;
    n.kids = std::move(kids);
    return make(std::move(n));
}

SmoothExpr SmoothExpr::prod(SmoothExpr a, SmoothExpr b) {
    std::vector<SmoothExpr> kids;
    kids.push_back(std::move(a));
    kids.push_back(std::move(b));
    return prod(std::move(kids));
}

SmoothExpr SmoothExpr::int_pow(SmoothExpr base, int k) {
    Node n;
    n.kind = Kind::IntPow;
    n.ipow = k;
    n.kids.push_back(std::move(base));
    return make(std::move(n));
}

SmoothExpr SmoothExpr::apply(Prim p, SmoothExpr child) {
    Node n;
    n.kind = Kind::Apply;
    n.prim = p;
    n.kids.push_back(std::move(child));
    return make(std::move(n));
}

SmoothExpr SmoothExpr::cutoff_step(std::shared_ptr<const SetFamily> fam) {
    if (!fam) throw PreconditionError("SmoothExpr::cutoff_step: null family");
    Node n;
    n.kind = Kind::CutoffStep;
    n.alpha.assign(static_cast<std::size_t>(fam->dim()), 0);
    n.family = std::move(fam);
    return make(std::move(n));
}

SmoothExpr SmoothExpr::cutoff_step(std::shared_ptr<const SetFamily> fam, std::vector<int> alpha) {
    if (!fam) throw PreconditionError("SmoothExpr::cutoff_step: null family");
    if (alpha.size() != static_cast<std::size_t>(fam->dim()))
        throw PreconditionError("SmoothExpr::cutoff_step: alpha size must match the dimension");
    for (int a : alpha)
        if (a < 0) throw PreconditionError("SmoothExpr::cutoff_step: negative derivative count");
    Node n;
    n.kind = Kind::CutoffStep;
    n.alpha = std::move(alpha);
    n.family = std::move(fam);
    return make(std::move(n));
}

int SmoothExpr::arity() const {
    const Node& n = *node_;
    int a = 0;
    if (n.kind == Kind::Var) a = n.var + 1;
    if (n.kind == Kind::CutoffStep) a = n.family->dim();
    for (const auto& k : n.kids) a = std::max(a, k.arity());
    return a;
}

SmoothExpr SmoothExpr::differentiate(int index) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Var:
            return constant(n.var == index ? 1.0 : 0.0);
        case Kind::Coeff:
            return constant(0.0);
        case Kind::Sum: {
            std::vector<SmoothExpr> kids;
            kids.reserve(n.kids.size());
            for (const auto& k : n.kids) kids.push_back(k.differentiate(index));
            return sum(std::move(kids));
        }
        case Kind::Prod: {
            std::vector<SmoothExpr> terms;
            for (std::size_t i = 0; i < n.kids.size(); ++i) {
                SmoothExpr d = n.kids[i].differentiate(index);
                if (is_zero_coeff(d)) continue;
                std::vector<SmoothExpr> factors;
                factors.push_back(std::move(d));
                for (std::size_t j = 0; j < n.kids.size(); ++j)
                    if (j != i) factors.push_back(n.kids[j]);
                terms.push_back(prod(std::move(factors)));
            }
            if (terms.empty()) return constant(0.0);
            return sum(std::move(terms));
        }
        case Kind::IntPow: {
            if (n.ipow == 0) return constant(0.0);
            const SmoothExpr& f = n.kids[0];
            return prod({constant(static_cast<double>(n.ipow)), int_pow(f, n.ipow - 1),
                         f.differentiate(index)});
        }
        case Kind::Apply: {
            const SmoothExpr& f = n.kids[0];
            const SmoothExpr df = f.differentiate(index);
            switch (n.prim) {
                case Prim::Sin:
                    return prod(apply(Prim::Cos, f), df);
                case Prim::Cos:
                    return prod({constant(-1.0), apply(Prim::Sin, f), df});
                case Prim::Exp:
                    return prod(apply(Prim::Exp, f), df);
                case Prim::Log:
                    return prod(int_pow(f, -1), df);
                case Prim::Tanh: {
                    const SmoothExpr t = apply(Prim::Tanh, f);
                    return prod(sum(constant(1.0), prod({constant(-1.0), t, t})), df);
                }
                case Prim::Sqrt:
                    return prod({constant(0.5), int_pow(apply(Prim::Sqrt, f), -1), df});
            }
            return constant(0.0);  // unreachable
        }
        case Kind::CutoffStep: {
            if (index >= n.family->dim()) return constant(0.0);
            Node d = n;
            d.alpha[static_cast<std::size_t>(index)] += 1;
            return make(std::move(d));
        }
    }
    return constant(0.0);  // unreachable
}

NetExpr SmoothExpr::substitute(std::span<const NetExpr> point) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Var:
            if (n.var >= static_cast<int>(point.size()))
                throw PreconditionError("SmoothExpr::substitute: too few point components");
            return point[static_cast<std::size_t>(n.var)];
        case Kind::Coeff:
            return *n.coeff;
        case Kind::Sum: {
            std::vector<NetExpr> kids;
            kids.reserve(n.kids.size());
            for (const auto& k : n.kids) kids.push_back(k.substitute(point));
            return NetExpr::sum(std::move(kids));
        }
        case Kind::Prod: {
            std::vector<NetExpr> kids;
            kids.reserve(n.kids.size());
            for (const auto& k : n.kids) kids.push_back(k.substitute(point));
            return NetExpr::prod(std::move(kids));
        }
        case Kind::IntPow: {
            const NetExpr base = n.kids[0].substitute(point);
            const int k = std::abs(n.ipow);
            if (k == 0) return NetExpr::constant(1.0);
            std::vector<NetExpr> copies(static_cast<std::size_t>(k), base);
            NetExpr pow = NetExpr::prod(std::move(copies));
            return n.ipow < 0 ? NetExpr::recip(std::move(pow)) : pow;
        }
        case Kind::Apply:
            return NetExpr::apply(n.prim, n.kids[0].substitute(point));
        case Kind::CutoffStep: {
            const int d = n.family->dim();
            if (static_cast<int>(point.size()) < d)
                throw PreconditionError("SmoothExpr::substitute: too few point components");
            std::vector<NetExpr> comps(point.begin(), point.begin() + d);
            return NetExpr::cutoff(n.family, n.alpha, std::move(comps));
        }
    }
    return NetExpr::constant(0.0);  // unreachable
}

double SmoothExpr::eval(std::span<const double> point, double eps) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Var:
            if (n.var >= static_cast<int>(point.size()))
                throw PreconditionError("SmoothExpr::eval: too few point components");
            return point[static_cast<std::size_t>(n.var)];
        case Kind::Coeff:
            return n.coeff->eval(eps);
        case Kind::Sum: {
            double s = 0;
            for (const auto& k : n.kids) s += k.eval(point, eps);
            return s;
        }
        case Kind::Prod: {
            double s = 1;
            for (const auto& k : n.kids) s *= k.eval(point, eps);
            return s;
        }
        case Kind::IntPow: {
            const double b = n.kids[0].eval(point, eps);
            if (n.ipow < 0 && b == 0.0)
                throw EvalError("SmoothExpr::eval: negative power of an exact zero");
            return std::pow(b, n.ipow);
        }
        case Kind::Apply: {
            const double v = n.kids[0].eval(point, eps);
            switch (n.prim) {
                case Prim::Sin: return std::sin(v);
                case Prim::Cos: return std::cos(v);
                case Prim::Exp: return std::exp(v);
                case Prim::Tanh: return std::tanh(v);
                case Prim::Log:
                    if (!(v > 0.0)) throw EvalError("SmoothExpr::eval: log needs a positive value");
                    return std::log(v);
                case Prim::Sqrt:
                    if (v < 0.0) throw EvalError("SmoothExpr::eval: sqrt needs a nonnegative value");
                    return std::sqrt(v);
            }
            return 0.0;  // unreachable
        }
        case Kind::CutoffStep: {
            std::vector<double> p(point.begin(), point.begin() + n.family->dim());
            return cutoff_step_value(*n.family, n.alpha, eps, p);
        }
    }
    return 0.0;  // unreachable
}

SmoothExpr SmoothExpr::compose(std::span<const SmoothExpr> args) const {
    const Node& n = *node_;
    switch (n.kind) {
        case Kind::Var:
            if (n.var >= static_cast<int>(args.size()))
                throw PreconditionError("SmoothExpr::compose: too few arguments");
            return args[static_cast<std::size_t>(n.var)];
        case Kind::Coeff:
            return *this;
        case Kind::Sum:
        case Kind::Prod: {
            std::vector<SmoothExpr> kids;
            kids.reserve(n.kids.size());
            for (const auto& k : n.kids) kids.push_back(k.compose(args));
            Node out = n;
            out.kids = std::move(kids);
            return make(std::move(out));
        }
        case Kind::IntPow:
        case Kind::Apply: {
            Node out = n;
            out.kids = {n.kids[0].compose(args)};
            return make(std::move(out));
        }
        case Kind::CutoffStep: {
            // Cutoffs bind the raw variable vector; only the identity
            // substitution keeps that meaning.
            for (int i = 0; i < n.family->dim(); ++i) {
                if (i >= static_cast<int>(args.size()) ||
                    args[static_cast<std::size_t>(i)].kind() != Kind::Var ||
                    args[static_cast<std::size_t>(i)].node().var != i)
                    throw UnsupportedError(
                        "SmoothExpr::compose: cutoff steps only compose with the identity");
            }
            return *this;
        }
    }
    return *this;  // unreachable
}

}  // namespace colombeau
