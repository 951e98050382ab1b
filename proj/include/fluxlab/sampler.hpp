#pragma once

#include "fluxlab/curve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fluxlab {

// One sampled configuration in the disk of window_radius about the origin.
// Regenerating with the same (model_label, window_radius, seed) reproduces
// the identical sequence.
struct PointConfig {
    std::vector<Complex> points;
    double window_radius = 0.0;
    std::string model_label;
    std::uint64_t seed = 0;
    double physical_intensity = 1.0;
};

// Intensity-1 Ginibre restricted to the window, exact via the radial
// decomposition: squared moduli are independent Gamma(j,1) variables
// (generated as cumulative sums of unit exponentials) rescaled by 1/pi,
// angles independent uniform. No boundary correction is needed: this is the
// full-plane process observed through a disk.
PointConfig sample_ginibre(double window_radius, std::uint64_t seed);

PointConfig sample_poisson(double intensity, double window_radius, std::uint64_t seed);

struct DiskMoments {
    double mean = 0.0;
    double variance = 0.0;
};

// Exact count moments for intensity-1 Ginibre in the disk of radius R:
//   mean = sum_j P(j, pi R^2)  (= pi R^2),
//   var  = sum_j P(j, pi R^2) (1 - P(j, pi R^2)),
// P the regularized lower incomplete gamma. Summation truncated when terms
// drop below 1e-14 past the transition window (terms decrease monotonically
// in j there, so the bound is a tail bound).
DiskMoments ginibre_disk_moments_exact(double R);

} // namespace fluxlab
