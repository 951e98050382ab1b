#include <doctest.h>

#include "fluxlab/numerics.hpp"
#include "fluxlab/sampler.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace fluxlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("ginibre sampler determinism and window containment") {
    PointConfig a = sample_ginibre(5.0, 777);
    PointConfig b = sample_ginibre(5.0, 777);
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i] == b.points[i]);
    for (const Complex& z : a.points) CHECK(std::abs(z) <= 5.0);
    CHECK(sample_ginibre(5.0, 778).points != a.points);
}

TEST_CASE("ginibre sampler mean count and rotation invariance") {
    const int nseeds = 1000;
    const double R = 5.0;
    double sum = 0.0, sum2 = 0.0;
    Complex phase_sum{0, 0};
    for (int i = 0; i < nseeds; ++i) {
        PointConfig cfg = sample_ginibre(R, derive_seed(99, i));
        double c = double(cfg.points.size());
        sum += c;
        sum2 += c * c;
        for (const Complex& z : cfg.points) phase_sum += z / std::abs(z);
    }
    double mean = sum / nseeds;
    double var = (sum2 - nseeds * mean * mean) / (nseeds - 1);
    double expect = kPi * R * R;
    double se = std::sqrt(var / nseeds);
    CHECK(std::abs(mean - expect) < 3.0 * se);
    // count variance against the exact oracle at the same radius
    DiskMoments m5 = ginibre_disk_moments_exact(R);
    CHECK(std::abs(var - m5.variance) < 4.0 * m5.variance * std::sqrt(2.0 / nseeds));
    // the empirical mean of unit phases vanishes by rotation invariance
    double phases_se = std::sqrt(sum / 2.0);  // sum of ~count unit vectors
    CHECK(std::abs(phase_sum) < 3.0 * phases_se);
}

TEST_CASE("ginibre count variance matches the exact oracle at R=1") {
    const int nseeds = 4000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < nseeds; ++i) {
        double c = double(sample_ginibre(1.0, derive_seed(5, i)).points.size());
        sum += c;
        sum2 += c * c;
    }
    double mean = sum / nseeds, var = (sum2 - nseeds * mean * mean) / (nseeds - 1);
    DiskMoments m = ginibre_disk_moments_exact(1.0);
    CHECK(m.variance == doctest::Approx(0.9794).epsilon(1e-3));
    CHECK(std::abs(var - m.variance) < 4.0 * m.variance * std::sqrt(2.0 / nseeds));
}

TEST_CASE("poisson sampler moments") {
    const int nseeds = 2000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < nseeds; ++i) {
        PointConfig cfg = sample_poisson(1.0, 10.0, derive_seed(31, i));
        double c = double(cfg.points.size());
        sum += c;
        sum2 += c * c;
        for (const Complex& z : cfg.points) CHECK(std::abs(z) <= 10.0);
    }
    double mean = sum / nseeds, var = (sum2 - nseeds * mean * mean) / (nseeds - 1);
    double lambda = kPi * 100.0;
    CHECK(std::abs(mean - lambda) < 3.0 * std::sqrt(lambda / nseeds));
    CHECK(std::abs(var - lambda) < 4.0 * lambda * std::sqrt(2.0 / nseeds));

    // sparse regime: usually empty
    int empties = 0;
    for (int i = 0; i < 100; ++i)
        empties += sample_poisson(0.01, 1.0, derive_seed(7, i)).points.empty() ? 1 : 0;
    CHECK(empties > 90);
}

TEST_CASE("disk moment oracle: Kostlan identities") {
    // mean = pi R^2 via the Poisson tail-sum identity
    for (double R : {1.0, 5.0, 20.0}) {
        DiskMoments m = ginibre_disk_moments_exact(R);
        CHECK(std::abs(m.mean - kPi * R * R) <= 1e-8 * kPi * R * R);
        CHECK(m.variance >= 0.0);
        CHECK(m.variance <= m.mean);  // Bernoulli terms p(1-p) <= p
    }
    // independent summation oracle at small R using gamma_p directly
    for (double R : {0.7, 1.0, 2.3}) {
        double x = kPi * R * R;
        double var = 0.0;
        for (int j = 1; j < 400; ++j) {
            double p = gamma_p(double(j), x);
            var += p * (1.0 - p);
        }
        CHECK(ginibre_disk_moments_exact(R).variance == doctest::Approx(var).epsilon(1e-12));
    }
    // perimeter-order growth: variance/R approaches 1 from below
    CHECK(ginibre_disk_moments_exact(100.0).variance / 100.0 ==
          doctest::Approx(1.0).epsilon(0.05));
    CHECK(ginibre_disk_moments_exact(400.0).variance / 400.0 ==
          doctest::Approx(1.0).epsilon(0.02));
}
