#include "colombeau/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace colombeau {

namespace {
constexpr double kMaxScaleRatio = 5.9604644775390625e-8;  // 2^-24
}

EpsGrid::EpsGrid(std::vector<double> samples, double tail_fraction)
    : samples_(std::move(samples)), tail_fraction_(tail_fraction) {
    if (samples_.size() < 12)
        throw std::invalid_argument("EpsGrid: needs at least 12 samples");
    for (std::size_t i = 0; i < samples_.size(); ++i) {
        double s = samples_[i];
        if (!(s > 0.0) || s > 1.0)
            throw std::invalid_argument("EpsGrid: samples must lie in (0,1]");
        if (i > 0 && !(s < samples_[i - 1]))
            throw std::invalid_argument("EpsGrid: samples must be strictly decreasing");
    }
    if (samples_.back() / samples_.front() > kMaxScaleRatio)
        throw std::invalid_argument("EpsGrid: smallest/largest must be <= 2^-24");
    if (!(tail_fraction_ > 0.0) || tail_fraction_ > 1.0)
        throw std::invalid_argument("EpsGrid: tail_fraction must lie in (0,1]");
    if (tail().size() < 8)
        throw std::invalid_argument("EpsGrid: tail window must hold at least 8 samples");
}

EpsGrid EpsGrid::dyadic(int k_min, int k_max, double tail_fraction) {
    if (k_min >= k_max) throw std::invalid_argument("EpsGrid::dyadic: k_min < k_max required");
    std::vector<double> s;
    s.reserve(static_cast<std::size_t>(k_max - k_min + 1));
    for (int k = k_min; k <= k_max; ++k) s.push_back(std::ldexp(1.0, -k));
    return EpsGrid(std::move(s), tail_fraction);
}

std::size_t EpsGrid::tail_begin() const {
    auto want = static_cast<std::size_t>(std::ceil(tail_fraction_ * static_cast<double>(samples_.size())));
    want = std::max<std::size_t>(want, 8);
    want = std::min(want, samples_.size());
    return samples_.size() - want;
}

std::vector<double> EpsGrid::tail() const {
    return {samples_.begin() + static_cast<std::ptrdiff_t>(tail_begin()), samples_.end()};
}

EpsGrid EpsGrid::augmented(const std::vector<double>& extra) const {
    if (extra.empty()) return *this;
    std::vector<double> merged = samples_;
    for (double e : extra) {
        if (!(e > 0.0) || e > 1.0) continue;
        if (e < samples_.back()) continue;  // keep the grid's depth fixed
        merged.push_back(e);
    }
    std::sort(merged.begin(), merged.end(), std::greater<double>());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    return EpsGrid(std::move(merged), tail_fraction_);
}

}  // namespace colombeau
