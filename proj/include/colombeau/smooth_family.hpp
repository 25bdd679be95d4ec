#pragma once

#include <memory>
#include <span>
#include <vector>

#include "colombeau/net_expr.hpp"
#include "colombeau/set_family.hpp"

namespace colombeau {

// Symbolic smooth expression in finitely many point variables, with net
// coefficients. Closed under exact symbolic differentiation; substituting
// component nets for the variables closes the tree into a NetExpr, which is
// how generalized smooth functions get evaluated at generalized points.
class SmoothExpr {
public:
    enum class Kind { Var, Coeff, Sum, Prod, IntPow, Apply, CutoffStep };

    struct Node {
        Kind kind;
        int var = 0;    // Var index
        int ipow = 1;   // IntPow exponent (any integer; negative powers are
                        // guarded by Recip at evaluation time)
        std::optional<NetExpr> coeff;
        Prim prim = Prim::Sin;
        std::vector<SmoothExpr> kids;
        std::shared_ptr<const SetFamily> family;  // CutoffStep
        std::vector<int> alpha;                   // accumulated cutoff derivatives
    };

    static SmoothExpr var(int index);
    static SmoothExpr coeff(NetExpr c);
    static SmoothExpr constant(double c);
    static SmoothExpr sum(std::vector<SmoothExpr> kids);
    static SmoothExpr sum(SmoothExpr a, SmoothExpr b);
    static SmoothExpr prod(std::vector<SmoothExpr> kids);
    static SmoothExpr prod(SmoothExpr a, SmoothExpr b);
    static SmoothExpr int_pow(SmoothExpr base, int k);
    static SmoothExpr apply(Prim p, SmoothExpr child);
    // Smoothed indicator of the family's slices, applied to the raw variable
    // vector (x_0 .. x_{d-1}).
    static SmoothExpr cutoff_step(std::shared_ptr<const SetFamily> fam);
    // Same, pre-differentiated: alpha[i] counts the derivatives already taken
    // in direction i (one entry per dimension of the family).
    static SmoothExpr cutoff_step(std::shared_ptr<const SetFamily> fam, std::vector<int> alpha);

    const Node& node() const { return *node_; }
    Kind kind() const { return node_->kind; }

    // Number of variables the expression can see (1 + max var index).
    int arity() const;

    // Exact partial derivative in variable `index`.
    SmoothExpr differentiate(int index) const;

    // Close into a net by substituting one net per variable.
    NetExpr substitute(std::span<const NetExpr> point) const;

    // Pointwise value at a real point and fixed eps.
    double eval(std::span<const double> point, double eps) const;

    // Substitute smooth expressions for the variables (composition). Cutoff
    // nodes only accept the identity substitution on their variables.
    SmoothExpr compose(std::span<const SmoothExpr> args) const;

private:
    using NodePtr = std::shared_ptr<const Node>;
    explicit SmoothExpr(NodePtr n) : node_(std::move(n)) {}
    static SmoothExpr make(Node n);
    NodePtr node_;
};

}  // namespace colombeau
