#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "colombeau/index_set.hpp"
#include "colombeau/net_expr.hpp"

namespace colombeau {

// A family of subsets of R^d indexed by eps, each slice described by a
// signed-distance-like defining function: positive inside, negative outside,
// 1-Lipschitz in the point at every fixed eps. The primitive shapes carry the
// exact Euclidean signed distance; unions and intersections only bound it
// from one side, which exact_sdf() reports.
class SetFamily {
public:
    enum class Kind {
        Empty,
        Full,
        Ball,
        Box,
        HalfSpace,
        Points,
        Punctured,
        Complement,
        Union,
        Intersection,
        Eroded,
        Dilated,
        Hull,
    };

    static SetFamily empty(int dim);
    static SetFamily full(int dim);
    static SetFamily ball(GenNumber center, NetExpr radius);
    static SetFamily box(GenNumber lo, GenNumber hi);
    // { p : normal . p <= offset_eps }, normal a nonzero constant vector.
    static SetFamily half_space(std::vector<double> normal, NetExpr offset);
    static SetFamily points(std::vector<GenNumber> pts);
    // Ball with the center removed; no interior point at the center itself.
    static SetFamily punctured_ball(GenNumber center, NetExpr radius);
    static SetFamily complement(SetFamily a);
    static SetFamily set_union(SetFamily a, SetFamily b);
    static SetFamily set_intersection(SetFamily a, SetFamily b);
    // Slice-wise inward/outward offset by eps^order.
    static SetFamily eroded(SetFamily a, double order);
    static SetFamily dilated(SetFamily a, double order);
    // Convex hull of finitely many moving points, dim <= 2.
    static SetFamily convex_hull(std::vector<GenNumber> pts);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool exact_sdf() const { return exact_; }

    double sdf(std::span<const double> p, double eps) const;
    // Central-difference gradient of sdf at fixed eps, step scaled to
    // max(eps, |p|) so eps-sized geometry stays resolved.
    std::vector<double> sdf_gradient(std::span<const double> p, double eps) const;

    // Axis-aligned bounds of the eps-slice; entries may be infinite, and
    // lo > hi flags an empty slice.
    struct BoxBounds {
        std::vector<double> lo, hi;
        bool empty() const;
    };
    BoxBounds bounds(double eps) const;

    // log sup{ |p| : p in the eps-slice }: -infinity when empty, +infinity
    // when unbounded. Works in the log domain so radii like exp(1/eps)
    // compare correctly instead of saturating.
    double log_outer_radius(double eps) const;

    void collect_geometric(std::vector<IndexSet>& out) const;

    // Structure access (kind-checked).
    const std::vector<GenNumber>& anchors() const { return pts_; }
    const std::vector<NetExpr>& nets() const { return nets_; }
    const std::vector<double>& normal() const { return normal_; }
    std::size_t child_count() const { return kids_.size(); }
    const SetFamily& child(std::size_t i) const { return *kids_.at(i); }
    double offset_order() const { return order_; }

private:
    SetFamily() = default;

    Kind kind_ = Kind::Empty;
    int dim_ = 1;
    std::vector<GenNumber> pts_;
    std::vector<NetExpr> nets_;
    std::vector<double> normal_;
    std::vector<std::shared_ptr<const SetFamily>> kids_;
    double order_ = 0.0;
    bool exact_ = true;
};

// Smoothed indicator of the eps-slice, used as the value of cutoff nodes:
// exactly 1 where sdf >= 2 exp(-1/eps), exactly 0 where sdf <= exp(-2/eps),
// the classical exp-based smooth step in log(sdf) across the exponentially
// thin band in between. alpha is a derivative multi-index: first derivatives use the
// chain rule through the sdf gradient inside the band and vanish outside it;
// higher in-band derivatives evaluate to 0 (the band is never sampled by the
// certification grids).
double cutoff_step_value(const SetFamily& f, const std::vector<int>& alpha, double eps,
                         const std::vector<double>& p);

// Convex-combination certificate for a point of a Hull slice: at most dim+1
// vertex indices with nonnegative weights summing to 1 that reproduce q.
struct HullWitness {
    std::vector<int> index;
    std::vector<double> weight;
};

std::optional<HullWitness> caratheodory_witness(const SetFamily& hull, std::span<const double> q,
                                                double eps);

}  // namespace colombeau
