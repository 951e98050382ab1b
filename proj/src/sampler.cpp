#include "fluxlab/sampler.hpp"
#include "fluxlab/errors.hpp"
#include "fluxlab/numerics.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fluxlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

PointConfig sample_ginibre(double window_radius, std::uint64_t seed) {
    if (window_radius <= 0.0) throw ValidationError("sample_ginibre: window radius must be positive");
    PointConfig cfg;
    cfg.window_radius = window_radius;
    cfg.model_label = "ginibre";
    cfg.seed = seed;
    cfg.physical_intensity = 1.0;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uangle(0.0, 2.0 * kPi);

    // The moduli set of the full-plane process equals {sqrt(g_j / pi)} with
    // g_j independent Gamma(j,1) -- independence across j is what suppresses
    // the count fluctuations, so each g_j is drawn separately. Indices far
    // above the window threshold x = pi w^2 cannot land inside (the Gamma(j,1)
    // left tail at x is below double precision for j > x + 12 sqrt(x) + 60).
    const double x = kPi * window_radius * window_radius;
    const std::uint64_t cap = std::uint64_t(std::ceil(4.0 * x + 16.0 * std::sqrt(x))) + 128;
    std::uint64_t j_max = std::uint64_t(std::ceil(x + 12.0 * std::sqrt(x) + 60.0));
    if (j_max > cap)
        throw NumericError("sample_ginibre: window index cap exceeded");
    for (std::uint64_t j = 1; j <= j_max; ++j) {
        std::gamma_distribution<double> gamma_j(double(j), 1.0);
        double g = gamma_j(rng);
        if (g > x) continue;  // outside the window, discarded
        double r = std::sqrt(g / kPi);
        cfg.points.push_back(std::polar(r, uangle(rng)));
    }
    return cfg;
}

PointConfig sample_poisson(double intensity, double window_radius, std::uint64_t seed) {
    if (intensity <= 0.0 || window_radius <= 0.0)
        throw ValidationError("sample_poisson: parameters must be positive");
    PointConfig cfg;
    cfg.window_radius = window_radius;
    cfg.model_label = "poisson";
    cfg.seed = seed;
    cfg.physical_intensity = intensity;

    std::mt19937_64 rng(seed);
    std::poisson_distribution<long> pois(intensity * kPi * window_radius * window_radius);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uangle(0.0, 2.0 * kPi);
    long n = pois(rng);
    cfg.points.reserve(std::size_t(n));
    for (long i = 0; i < n; ++i) {
        double r = window_radius * std::sqrt(u01(rng));
        cfg.points.push_back(std::polar(r, uangle(rng)));
    }
    return cfg;
}

DiskMoments ginibre_disk_moments_exact(double R) {
    if (R <= 0.0) throw ValidationError("ginibre_disk_moments_exact: R must be positive");
    const double x = kPi * R * R;

    // P(j,x) across j via the exact step P(j+1,x) = P(j,x) - e^-x x^j / j!.
    // Left of the transition window P(j,x) = 1 to below double precision, so
    // the sweep starts at j0 = max(1, x - 25 sqrt(x)) with p = 1 and the term
    // seeded in log space (for x <= 627, j0 = 1 and both are exact directly).
    const double w = 25.0;
    long j0 = std::max(1L, long(x - w * std::sqrt(x)));
    long jmax = long(x + w * std::sqrt(x)) + 60;

    double p, term;
    if (j0 == 1) {
        p = -std::expm1(-x);
        term = x * std::exp(-x);
    } else {
        p = 1.0;
        term = std::exp(double(j0) * std::log(x) - x - std::lgamma(double(j0) + 1.0));
    }

    KahanSum mean, var;
    mean.add(double(j0 - 1));  // everything left of the window counts fully
    for (long j = j0;; ++j) {
        mean.add(p);
        var.add(p * (1.0 - p));
        // past the mode the terms fall monotonically; stopping once both the
        // term and p are below 1e-14 bounds the remaining tail by a geometric
        // series with ratio x/(j+1) < 1/2
        if (j > jmax || (double(j) > 2.0 * x + 4.0 && term < 1e-14 && p < 1e-14)) break;
        p -= term;
        if (p < 0.0) p = 0.0;
        term *= x / double(j + 1);
    }
    return {mean.value(), var.value()};
}

} // namespace fluxlab
