#include <doctest.h>

#include "fluxlab/counterexample.hpp"
#include "fluxlab/errors.hpp"
#include "fluxlab/numerics.hpp"
#include "fluxlab/sampler.hpp"

#include <cmath>
#include <numbers>

using namespace fluxlab;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("single circle reduces to the disk oracle at native scale") {
    // native-scale radius R corresponds to the intensity-1 disk of radius
    // R / sqrt(pi)
    for (double r : {1.0, 3.0, 10.0}) {
        double native = nested_variance_exact(0.5, std::sqrt(kPi) * r, NestedCaps{1, 0});
        double physical = ginibre_disk_moments_exact(r).variance;
        CHECK(native == doctest::Approx(physical).epsilon(1e-10));
    }
}

TEST_CASE("nested variance: brute-force j-sum oracle at small R") {
    // direct evaluation of sum_j Var[m_j] from gamma CDFs, independent of the
    // sweep implementation
    double eps = 0.5, R = 6.0;
    int k_cap = 8;
    double var = 0.0;
    for (int j = 1; j <= 400; ++j) {
        double s1 = 0.0, s2 = 0.0;
        for (int k = 1; k <= k_cap; ++k) {
            double x = std::pow(R * std::pow(double(k), -1.5), 2.0);
            double p = gamma_p(double(j), x);
            s1 += p;
            s2 += double(2 * k - 1) * p;
        }
        var += s2 - s1 * s1;
    }
    CHECK(nested_variance_exact(eps, R, NestedCaps{k_cap, 0}) ==
          doctest::Approx(var).epsilon(1e-9));
}

TEST_CASE("nested variance: j_cap insensitivity and positivity") {
    double v_auto = nested_variance_exact(0.5, 50.0, NestedCaps{64, 0});
    double v_wide = nested_variance_exact(0.5, 50.0, NestedCaps{64, 40000});
    CHECK(v_auto == doctest::Approx(v_wide).epsilon(1e-10));
    CHECK(v_auto > 0.0);

    // adding layers cannot drop below the single largest circle
    double base = nested_variance_exact(0.5, 50.0, NestedCaps{1, 0});
    CHECK(v_auto >= base);

    // the exp(1) lower bound from the first squared modulus: Var[Y_R] with
    // Y_R = sum_k 1{Z <= x_k}, computed directly
    double R = 50.0;
    int K = 64;
    double EY = 0.0, EY2 = 0.0;
    for (int k = 1; k <= K; ++k) {
        double x = std::pow(R * std::pow(double(k), -1.5), 2.0);
        double p = -std::expm1(-x);
        EY += p;
        EY2 += double(2 * k - 1) * p;
    }
    double lower = EY2 - EY * EY;
    CHECK(v_auto >= lower - 1e-9);

    CHECK_THROWS_AS(nested_variance_exact(1.2, 10.0, {}), ValidationError);
}

TEST_CASE("growth exponent ladders") {
    std::vector<double> Rs = {100, 200, 400, 800, 1600};

    GrowthFit main = growth_exponent(0.5, Rs);
    // the construction scales as R^{2/(1+eps)}; at eps = 0.5 the finite-R
    // slope sits near 1.27 and rises toward 4/3
    CHECK(main.slope > 1.2);
    CHECK(main.slope < 1.35);
    for (double v : main.variances) CHECK(v > 0.0);
    for (std::size_t i = 1; i < main.variances.size(); ++i)
        CHECK(main.variances[i] > main.variances[i - 1]);

    GrowthFit weak = growth_exponent(0.9, Rs);
    CHECK(weak.slope >= 1.0);
    CHECK(weak.slope < main.slope);

    GrowthFit ctrl = growth_exponent(0.5, Rs, NestedCaps{1, 0});
    CHECK(ctrl.slope == doctest::Approx(1.0).epsilon(0.05));

    CHECK_THROWS_AS(growth_exponent(0.5, {100, 200, 400}, {}), ValidationError);
    CHECK_THROWS_AS(growth_exponent(0.5, {100, 120, 140, 160}, {}), ValidationError);
}
