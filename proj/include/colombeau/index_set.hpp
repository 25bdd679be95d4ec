#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace colombeau {

// A subset of the index interval (0,1], in one of two declared shapes:
//
//   Intervals  — a finite union of pairwise disjoint half-open pieces (a,b]
//   Geometric  — the sequence { start * ratio^j : j >= 0 }, ratio in (0,1)
//
// plus a complement flag. Interval complements are normalized away into
// literal interval unions; the flag survives only on geometric sets, whose
// literal complement is neither declared shape.
//
// Sets of this shape drive the idempotents e_S (masked constant-1 nets) and
// every masked-net construction. Whether the set has points arbitrarily
// close to 0 (accumulates_at_zero) decides if e_S is zero in the ring.
class IndexSet {
  public:
    enum class Kind { Intervals, Geometric };

    using Interval = std::pair<double, double>;  // (a, b], 0 <= a < b <= 1

    static IndexSet interval(double a, double b);
    static IndexSet intervals(std::vector<Interval> parts);
    static IndexSet geometric(double start, double ratio);
    static IndexSet all();  // (0,1]

    IndexSet complement() const;

    bool contains(double eps) const;
    bool accumulates_at_zero() const;

    Kind kind() const { return kind_; }
    bool complemented() const { return complemented_; }
    const std::vector<Interval>& parts() const { return parts_; }
    double geo_start() const { return geo_start_; }
    double geo_ratio() const { return geo_ratio_; }

    // Grid augmentation points: the sequence points down to eps_min plus the
    // geometric midpoints between neighbors (witnesses for the complement).
    // Empty for interval sets (the default grid already samples them).
    std::vector<double> witness_points(double eps_min, std::size_t cap = 256) const;

    // Structural equality (same shape, same numbers, same flag).
    bool same_structure(const IndexSet& other) const;

    // Intersection of interval-kind sets (used by the canonical layer's atom
    // analysis). Both operands must be Kind::Intervals.
    static IndexSet intersect_intervals(const IndexSet& a, const IndexSet& b);

  private:
    IndexSet() = default;

    Kind kind_ = Kind::Intervals;
    std::vector<Interval> parts_;  // sorted by left edge, disjoint, merged
    double geo_start_ = 0.0;
    double geo_ratio_ = 0.0;
    bool complemented_ = false;
};

}  // namespace colombeau
