#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "colombeau/grid.hpp"
#include "colombeau/index_set.hpp"
#include "colombeau/verdicts.hpp"

namespace colombeau {

class SetFamily;

// Sign/log-magnitude pair: value = sign * exp(logabs). sign == 0 encodes an
// exact zero (logabs is then -infinity). This is how nets are evaluated when
// their magnitudes escape double range (eps^-100, e^(1/eps), ...).
struct SignedLog {
    int sign = 0;
    double logabs = 0.0;

    double to_double() const;
    static SignedLog from_double(double v);
};

// One scalar net: a finite expression tree evaluated pointwise in eps.
//
// Node kinds follow a small fixed grammar (see format.hpp for the text
// syntax). Trees are immutable and cheaply copyable; evaluation is pure, so
// equal trees at equal eps give bit-identical results. Ring equality is a
// different thing entirely and lives in asymptotics.hpp (eq_in_ring).
//
// Two extension kinds round out the algebra: Cutoff (a smooth step of a set
// family's signed distance, the building block of domain cut-offs) and Data
// (a tabulated net, e.g. a sampled sup turned into a first-class net).
class NetExpr {
  public:
    enum class Kind {
        Const,      // c
        EpsPow,     // eps^a
        ExpInvEps,  // e^(1/eps)
        Mask,       // child restricted to an IndexSet, 0 elsewhere
        Sum,
        Prod,
        Neg,
        Abs,
        Min,
        Max,
        Recip,   // 1/child; exact zero child is a domain error
        Apply,   // unary smooth primitive applied to child
        Cutoff,  // smooth-step derivative of a family's sdf at a point net
        Data,    // tabulated (eps, value) pairs, log-linear between samples
    };

    enum class Prim { Sin, Cos, Exp, Log, Tanh, Sqrt };

    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        Kind kind;
        double a = 0.0;                   // Const payload / EpsPow exponent
        std::optional<IndexSet> iset;     // Mask
        Prim prim = Prim::Sin;            // Apply
        std::vector<NetExpr> kids;
        std::shared_ptr<const SetFamily> family;        // Cutoff
        std::vector<int> alpha;                         // Cutoff derivative multi-index
        std::vector<std::pair<double, double>> table;   // Data, eps descending
    };

    NetExpr() : NetExpr(constant(0.0)) {}

    static NetExpr constant(double c);
    static NetExpr eps_pow(double a);
    static NetExpr exp_inv_eps();
    static NetExpr mask(IndexSet s, NetExpr child);
    static NetExpr sum(std::vector<NetExpr> kids);
    static NetExpr sum(NetExpr a, NetExpr b);
    static NetExpr prod(std::vector<NetExpr> kids);
    static NetExpr prod(NetExpr a, NetExpr b);
    static NetExpr neg(NetExpr child);
    static NetExpr abs(NetExpr child);
    static NetExpr min(NetExpr a, NetExpr b);
    static NetExpr max(NetExpr a, NetExpr b);
    static NetExpr recip(NetExpr child);
    static NetExpr apply(Prim p, NetExpr child);
    static NetExpr cutoff(std::shared_ptr<const SetFamily> fam, std::vector<int> alpha,
                          std::vector<NetExpr> point);
    static NetExpr tabulated(std::vector<std::pair<double, double>> table);

    // e_S: the idempotent of an index set.
    static NetExpr idempotent(const IndexSet& s);

    const Node& node() const { return *node_; }
    Kind kind() const { return node_->kind; }

    // Pointwise value at one eps in (0,1]. Pure; may overflow to +-inf in
    // double arithmetic (use signed_log_eval when magnitudes escape range).
    double eval(double eps) const;

    // Sign and log-magnitude at eps, computed in the log domain so that
    // monomial/exponential chains never overflow.
    SignedLog signed_log_eval(double eps) const;

    // ln|eval|, -infinity for an exact zero.
    double log_abs_eval(double eps) const;

    // Geometric index sets appearing under any Mask in this tree (incl. set
    // family parameters under Cutoff); used for grid augmentation.
    void collect_geometric(std::vector<IndexSet>& out) const;

  private:
    explicit NetExpr(NodePtr n) : node_(std::move(n)) {}
    NodePtr node_;
};

using Prim = NetExpr::Prim;

// Grid with witness points for every geometric index set in scope merged in.
EpsGrid augmented_grid(const EpsGrid& grid, std::span<const NetExpr> nets);
EpsGrid augmented_grid(const EpsGrid& grid, const NetExpr& net);
EpsGrid augmented_grid_from_sets(const EpsGrid& grid, std::span<const IndexSet> sets);

// A point of the d-dimensional generalized-number module: one scalar net per
// coordinate. Equality of GenNumbers is ring equality (eq_in_ring); the ==
// operator is deliberately absent.
class GenNumber {
  public:
    GenNumber() : GenNumber(NetExpr::constant(0.0)) {}
    explicit GenNumber(NetExpr scalar);
    explicit GenNumber(std::vector<NetExpr> comps);
    static GenNumber scalar(double c);
    static GenNumber point(std::span<const double> coords);

    int dim() const { return static_cast<int>(comps_.size()); }
    const std::vector<NetExpr>& comps() const { return comps_; }
    const NetExpr& comp(int i) const { return comps_.at(static_cast<std::size_t>(i)); }

    std::vector<double> eval(double eps) const;

    // One-slot classification cache, keyed by the grid; filled by classify().
    std::optional<Classification> cached_class(const EpsGrid& grid) const;
    void store_class(const EpsGrid& grid, const Classification& c) const;

  private:
    struct Cache {
        std::mutex mu;
        std::optional<EpsGrid> grid;
        std::optional<Classification> cls;
    };
    std::vector<NetExpr> comps_;
    std::shared_ptr<Cache> cache_;
};

// x * e_S + y * e_{S^c}, componentwise. Exactly x on S and y off S.
GenNumber interleave(const IndexSet& s, const GenNumber& x, const GenNumber& y);

// Componentwise minimum (the lattice infimum of representatives).
GenNumber wedge(const GenNumber& x, const GenNumber& y);

// Convenience constructors for catalogs and tests.
GenNumber operator+(const GenNumber& x, const GenNumber& y);
GenNumber operator-(const GenNumber& x, const GenNumber& y);
GenNumber operator*(const GenNumber& x, const GenNumber& y);

}  // namespace colombeau
