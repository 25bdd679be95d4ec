#pragma once

#include <functional>
#include <span>
#include <vector>

#include "colombeau/set_family.hpp"

namespace colombeau {

// Van der Corput radical inverse; halton_point uses bases 2, 3, 5 for the
// first three coordinates.
double halton(unsigned index, unsigned base);
std::vector<double> halton_point(unsigned index, int dim);

struct SupParams {
    int budget = 1024;        // candidate points per (eps, region)
    int refine_seeds = 8;     // best candidates taken into local ascent
    int refine_steps = 24;
    int ladder_span = 20;     // eps * 2^k offsets for k in [-span, span]
    double fallback_radius = 8.0;  // clamp for unbounded regions
    unsigned seed = 42;       // offsets the Halton start index
};

struct SupResult {
    double value;
    std::vector<double> argmax;
    int samples = 0;
    SupResult();
};

// Deterministic sampled sup of fn over the eps-slice of region: Halton fill
// of the bounding box filtered by sdf >= 0, the region's anchor points, an
// eps-scale ladder around each anchor (so eps-sized features are resolved),
// then projected-gradient ascent from the best seeds, pushed back onto the
// slice whenever a step leaves it.
SupResult sampled_sup(const SetFamily& region, double eps,
                      const std::function<double(std::span<const double>)>& fn,
                      const SupParams& params = {});

// In-slice points suitable as membership probes.
std::vector<std::vector<double>> sample_points(const SetFamily& region, double eps, int budget,
                                               unsigned seed = 42);

// Structural anchor points of the slice (centers, corners, vertices,
// one boundary point per half-space), recursively over combinators.
std::vector<std::vector<double>> anchor_points(const SetFamily& region, double eps);

}  // namespace colombeau
