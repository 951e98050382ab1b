#pragma once

#include "fluxlab/curve.hpp"
#include "fluxlab/sampler.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fluxlab {

// Winding number of the polyline about z (signed crossing count; the curve
// must be closed).
int winding_number(const Curve& closed_curve, Complex z);

// Winding-weighted enclosed area (shoelace over the closed polyline).
double signed_area(const Curve& closed_curve);

// Signed count of configuration points enclosed by the curve, with winding
// multiplicity. Throws if the curve is open or exits the window.
long count_in_region(const PointConfig& config, const Curve& closed_curve);

struct ActionResult {
    Complex value{0.0, 0.0};
    double term_magnitude = 0.0;  // sum of |per point log| + compensator, for error scaling
    bool jitter_retry = false;    // a pole came within 1e-12 of an edge
};

// Complex action of the truncated field along the curve:
//   sum_{|p| < truncation} int dz/(z - p)  -  pi c int z-bar dz,
// both integrals in per-edge closed form. The work is the real part and the
// flux the imaginary part of the same evaluation.
ActionResult action_along(const PointConfig& config, const Curve& curve,
                          double physical_intensity, double truncation_radius);

enum class Statistic { Count, Action, Work, Flux, MultiCount };

struct Estimate {
    Complex mean{0.0, 0.0};
    double variance = 0.0;
    double stderr_of_variance = 0.0;  // batch means
    long n_samples = 0;
    std::uint64_t base_seed = 0;
    double window_radius = 0.0;
};

struct SamplerSpec {
    std::string model = "ginibre";  // ginibre | poisson
    double intensity = 1.0;         // used by poisson
};

// Samples n independent configurations (seed_i = base ^ splitmix(i)),
// evaluates the statistic on the target dilated by R, and aggregates with
// batch-means error bars. For MultiCount the target is the radii ladder
// rather than a polyline.
Estimate estimate_statistic(const SamplerSpec& sampler, Statistic stat, const Curve& target,
                            double R, long n, std::uint64_t base_seed);
Estimate estimate_multi_count(const SamplerSpec& sampler, const std::vector<double>& radii,
                              double R, long n, std::uint64_t base_seed);

} // namespace fluxlab
