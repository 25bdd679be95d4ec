#include "colombeau/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace colombeau {

namespace {

// Relative slack when matching eps against a geometric sequence point; wide
// enough to absorb drift between pow() and iterated multiplication.
constexpr double kGeoTol = 1e-9;

std::vector<IndexSet::Interval> normalize(std::vector<IndexSet::Interval> parts) {
    for (auto& [a, b] : parts) {
        if (!(a >= 0.0) || !(a < b) || b > 1.0)
            throw std::invalid_argument("IndexSet: intervals must satisfy 0 <= a < b <= 1");
    }
    std::sort(parts.begin(), parts.end());
    std::vector<IndexSet::Interval> out;
    for (const auto& iv : parts) {
        if (!out.empty() && iv.first < out.back().second)
            throw std::invalid_argument("IndexSet: intervals must be pairwise disjoint");
        if (!out.empty() && iv.first == out.back().second)
            out.back().second = iv.second;  // (a,b] + (b,c] = (a,c]
        else
            out.push_back(iv);
    }
    return out;
}

}  // namespace

IndexSet IndexSet::interval(double a, double b) { return intervals({{a, b}}); }

IndexSet IndexSet::intervals(std::vector<Interval> parts) {
    IndexSet s;
    s.kind_ = Kind::Intervals;
    s.parts_ = normalize(std::move(parts));
    return s;
}

IndexSet IndexSet::geometric(double start, double ratio) {
    if (!(start > 0.0) || start > 1.0)
        throw std::invalid_argument("IndexSet: geometric start must lie in (0,1]");
    if (!(ratio > 0.0) || !(ratio < 1.0))
        throw std::invalid_argument("IndexSet: geometric ratio must lie in (0,1)");
    IndexSet s;
    s.kind_ = Kind::Geometric;
    s.geo_start_ = start;
    s.geo_ratio_ = ratio;
    return s;
}

IndexSet IndexSet::all() { return interval(0.0, 1.0); }

IndexSet IndexSet::complement() const {
    if (kind_ == Kind::Geometric) {
        IndexSet s = *this;
        s.complemented_ = !complemented_;
        return s;
    }
    // Literal complement within (0,1].
    std::vector<Interval> out;
    double edge = 0.0;
    for (const auto& [a, b] : parts_) {
        if (a > edge) out.push_back({edge, a});
        edge = b;
    }
    if (edge < 1.0) out.push_back({edge, 1.0});
    IndexSet s;
    s.kind_ = Kind::Intervals;
    s.parts_ = std::move(out);
    return s;
}

bool IndexSet::contains(double eps) const {
    bool base = false;
    if (kind_ == Kind::Intervals) {
        for (const auto& [a, b] : parts_) {
            if (eps > a && eps <= b) {
                base = true;
                break;
            }
        }
    } else {
        if (eps > 0.0 && eps <= geo_start_) {
            double j = std::round(std::log(eps / geo_start_) / std::log(geo_ratio_));
            if (j >= 0.0) {
                double pt = geo_start_ * std::pow(geo_ratio_, j);
                base = std::abs(pt - eps) <= kGeoTol * eps;
            }
        } else if (eps == geo_start_) {
            base = true;
        }
    }
    return base != complemented_;
}

bool IndexSet::accumulates_at_zero() const {
    if (kind_ == Kind::Geometric) return true;  // the sequence, and its co-dense complement
    if (parts_.empty()) return complemented_;
    // Normalized interval unions: points arbitrarily close to 0 exist iff the
    // leftmost piece starts at 0; the complement has them iff it does not.
    bool base_touches_zero = parts_.front().first == 0.0;
    return complemented_ ? !base_touches_zero : base_touches_zero;
}

std::vector<double> IndexSet::witness_points(double eps_min, std::size_t cap) const {
    std::vector<double> out;
    if (kind_ != Kind::Geometric) return out;
    double p = geo_start_;
    double prev = 0.0;
    for (std::size_t j = 0; p >= eps_min && j < cap; ++j) {
        out.push_back(p);
        if (j > 0) out.push_back(std::sqrt(p * prev));  // gap witness for the complement
        prev = p;
        p *= geo_ratio_;
    }
    return out;
}

bool IndexSet::same_structure(const IndexSet& other) const {
    if (kind_ != other.kind_ || complemented_ != other.complemented_) return false;
    if (kind_ == Kind::Geometric)
        return geo_start_ == other.geo_start_ && geo_ratio_ == other.geo_ratio_;
    return parts_ == other.parts_;
}

IndexSet IndexSet::intersect_intervals(const IndexSet& a, const IndexSet& b) {
    if (a.kind_ != Kind::Intervals || b.kind_ != Kind::Intervals || a.complemented_ ||
        b.complemented_)
        throw std::invalid_argument("intersect_intervals: literal interval sets required");
    std::vector<Interval> out;
    for (const auto& [a0, a1] : a.parts_) {
        for (const auto& [b0, b1] : b.parts_) {
            double lo = std::max(a0, b0), hi = std::min(a1, b1);
            if (lo < hi) out.push_back({lo, hi});
        }
    }
    IndexSet s;
    s.kind_ = Kind::Intervals;
    s.parts_ = normalize(std::move(out));
    return s;
}

}  // namespace colombeau
