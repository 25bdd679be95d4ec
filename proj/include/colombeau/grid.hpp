#pragma once

#include <cstddef>
#include <vector>

namespace colombeau {

// Strictly decreasing sample points in (0,1] used to probe nets as eps -> 0.
//
// Every asymptotic decision in the library runs on such a grid; the tail
// window (the smallest samples) is where regression fits and sup tests run.
// Invariants enforced at construction:
//   - at least 12 samples, strictly decreasing, all in (0,1]
//   - smallest/largest <= 2^-24 (the grid spans enough scales to fit slopes)
//   - tail_fraction in (0,1] and the tail window holds at least 8 samples
class EpsGrid {
  public:
    explicit EpsGrid(std::vector<double> samples, double tail_fraction = 0.4);

    // eps_k = 2^-k for k = k_min..k_max. The library default is 4..48.
    static EpsGrid dyadic(int k_min = 4, int k_max = 48, double tail_fraction = 0.4);

    const std::vector<double>& samples() const { return samples_; }
    double tail_fraction() const { return tail_fraction_; }
    std::size_t size() const { return samples_.size(); }
    double sample(std::size_t i) const { return samples_[i]; }
    double max_sample() const { return samples_.front(); }
    double min_sample() const { return samples_.back(); }

    // Index of the first tail sample; tail = samples()[tail_begin()..).
    std::size_t tail_begin() const;
    std::vector<double> tail() const;

    // Same grid with extra sample points merged in (used to give masked nets
    // witness samples on geometric index sets). Points outside
    // [min_sample, 1] or duplicating an existing sample are dropped.
    EpsGrid augmented(const std::vector<double>& extra) const;

    bool operator==(const EpsGrid&) const = default;

  private:
    std::vector<double> samples_;  // strictly decreasing
    double tail_fraction_;
};

}  // namespace colombeau
