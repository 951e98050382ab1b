#include <doctest.h>

#include "fluxlab/errors.hpp"
#include "fluxlab/model.hpp"

#include <cmath>
#include <numbers>

using namespace fluxlab;

namespace {
constexpr double kPi = std::numbers::pi;

// tabulated copy of the Ginibre two-point function on [0,6]
TabulatedData ginibre_table(int nodes) {
    TabulatedData d;
    d.name = "ginibre-table";
    d.intensity = 1.0 / (kPi * kPi);
    for (int i = 0; i <= nodes; ++i) {
        double t = 6.0 * double(i) / nodes;
        d.t.push_back(t);
        d.k.push_back(-std::exp(-kPi * t * t) / (kPi * kPi));
    }
    return d;
}
} // namespace

TEST_CASE("model construction and point values") {
    TwoPointModel gin = make_ginibre();
    CHECK(gin.k(1.0) == doctest::Approx(-std::exp(-kPi) / (kPi * kPi)).epsilon(1e-15));
    CHECK(gin.k(1.0) == doctest::Approx(-0.00437848534831).epsilon(1e-9));
    CHECK(gin.intensity == doctest::Approx(1.0 / (kPi * kPi)));

    TwoPointModel gef = make_gef();
    CHECK(gef.k(1e-9) == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(gef.provisional);
    // series and closed form agree at the crossover
    double closed_form;
    {
        double t = 0.05, q = std::exp(-2.0 * t), om = 1.0 - q;
        closed_form = 2 * q / om - 8 * t * q / (om * om) + 4 * t * t * q * (1 + q) / (om * om * om);
    }
    CHECK(gef.k(0.049999999) == doctest::Approx(closed_form).epsilon(1e-9));

    TwoPointModel poi = make_poisson(1.0);
    for (double t : {0.1, 1.0, 7.0}) CHECK(poi.k(t) == 0.0);
    CHECK_THROWS_AS(make_poisson(-1.0), ValidationError);

    TabulatedData bad = ginibre_table(16);
    bad.t[3] = bad.t[2];
    CHECK_THROWS_AS(make_tabulated(bad), ValidationError);
    bad = ginibre_table(16);
    bad.intensity = -1.0;
    CHECK_THROWS_AS(make_tabulated(bad), ValidationError);
}

TEST_CASE("radial moments against closed forms") {
    TwoPointModel gin = make_ginibre();
    // Gaussian moments: int t^2 e^{-pi t^2} = 1/(4 pi), int t^3 e^{-pi t^2} = 1/(2 pi^2)
    CHECK(radial_moment(gin, 2) == doctest::Approx(-1.0 / (4.0 * kPi * kPi * kPi)).epsilon(1e-10));
    CHECK(radial_moment(gin, 3) ==
          doctest::Approx(-1.0 / (2.0 * kPi * kPi * kPi * kPi)).epsilon(1e-10));

    TwoPointModel gef = make_gef();
    // first moment cancels exactly: int t k dt = (f(0) - f(inf))/2 with
    // f = t^2 (coth t - 1), both limits 0
    CHECK(std::abs(radial_moment(gef, 1)) < 1e-10);
    // zeta values from termwise integration of 2 sum e^{-2nt} expansions
    double zeta3 = 1.2020569031595943;
    CHECK(radial_moment(gef, 2) == doctest::Approx(zeta3 / 2.0).epsilon(1e-9));
    CHECK(radial_moment(gef, 3) == doctest::Approx(std::pow(kPi, 4) / 40.0).epsilon(1e-9));

    CHECK(radial_moment(make_poisson(2.0), 2) == 0.0);
    CHECK_THROWS_AS(radial_moment(gin, 7), ValidationError);
}

TEST_CASE("variance coefficients") {
    TwoPointModel gin = make_ginibre();
    CHECK(c_lambda(gin) == doctest::Approx(2.0 / kPi).epsilon(1e-9));
    CHECK(d_lambda(gin) == doctest::Approx(-1.0 / (kPi * kPi)).epsilon(1e-9));

    TwoPointModel gef = make_gef();
    CHECK(d_lambda(gef) == doctest::Approx(std::pow(kPi, 6) / 20.0).epsilon(1e-9));

    CHECK(c_lambda(make_poisson(1.0)) == 0.0);
    CHECK(d_lambda(make_poisson(1.0)) == 0.0);

    TwoPointModel tab = make_tabulated(ginibre_table(10000));
    CHECK(c_lambda(tab) == doctest::Approx(2.0 / kPi).epsilon(1e-6));
}

TEST_CASE("kernel K: closed form vs generic quadrature, limits") {
    TwoPointModel gin = make_ginibre();
    for (double s : {0.1, 1.0, 3.0}) {
        double fast = kernel_K(gin, s);
        double quad = kernel_K_quadrature(gin, s);
        CHECK(fast == doctest::Approx(quad).epsilon(1e-8));
    }
    // logarithmic singularity: K(s) = (2/pi) log(1/s) + A + O(s^2) with
    // A = (-euler_gamma - log pi)/pi
    double A = (-0.57721566490153286 - std::log(kPi)) / kPi;
    double s = 1e-7;
    CHECK(kernel_K(gin, s) - (2.0 / kPi) * std::log(1.0 / s) == doctest::Approx(A).epsilon(1e-9));
    CHECK(kernel_K(gin, s) / std::log(1.0 / s) == doctest::Approx(2.0 / kPi).epsilon(0.05));
    // support
    CHECK(kernel_K(gin, 5.0) == 0.0);
    CHECK(kernel_K(make_poisson(1.0), 0.5) == 0.0);
    // monotone for k <= 0
    CHECK(kernel_K(gin, 0.2) > kernel_K(gin, 0.4));
    CHECK(kernel_K(gin, 0.4) > kernel_K(gin, 1.5));
    CHECK_THROWS_AS(kernel_K(gin, -0.5), ValidationError);
}

TEST_CASE("kernel evaluator matches the direct kernel") {
    TwoPointModel gin = make_ginibre();
    KernelEvaluator K(gin);
    CHECK(K.log_coefficient() == doctest::Approx(2.0 / kPi).epsilon(1e-9));
    for (double s : {1e-4, 0.01, 0.3, 1.0, 2.7, 3.9})
        CHECK(K(s) == doctest::Approx(kernel_K(gin, s)).epsilon(1e-7));
    CHECK(K(4.5) == 0.0);

    TwoPointModel gef = make_gef();
    KernelEvaluator Kg(gef);
    CHECK(std::abs(Kg.log_coefficient()) < 1e-7);  // first moment vanishes
    for (double s : {0.5, 2.0, 8.0})
        CHECK(Kg(s) == doctest::Approx(kernel_K(gef, s)).epsilon(1e-7));
}

TEST_CASE("spectral density") {
    TwoPointModel gin = make_ginibre();
    // self-dual Gaussian pair: h(tau) = (1 - e^{-pi tau^2})/pi^2
    auto h_ref = [](double tau) { return (1.0 - std::exp(-kPi * tau * tau)) / (kPi * kPi); };
    for (double tau : {0.25, 1.0, 2.0})
        CHECK(spectral_density(gin, tau) == doctest::Approx(h_ref(tau)).epsilon(1e-7));
    CHECK(spectral_density(gin, 1.0) == doctest::Approx(0.096942698294).epsilon(1e-7));
    // hyperuniformity sum rule
    CHECK(std::abs(spectral_density(gin, 0.0)) < 1e-10);
    // positivity where sampled
    for (double tau = 0.0; tau <= 3.0; tau += 0.37)
        CHECK(spectral_density(gin, tau) > -1e-8);

    TwoPointModel poi = make_poisson(2.5);
    for (double tau : {0.0, 1.0, 9.0}) CHECK(spectral_density(poi, tau) == 2.5);
}

TEST_CASE("h-k identity") {
    TwoPointModel gin = make_ginibre();
    HkIdentity hk = hk_identity_check(gin);
    double target = -1.0 / (4.0 * kPi * kPi * kPi);
    CHECK(hk.lhs == doctest::Approx(target).epsilon(1e-9));
    CHECK(hk.rhs == doctest::Approx(target).epsilon(1e-6));
    CHECK(-4.0 * kPi * kPi * hk.rhs == doctest::Approx(1.0 / kPi).epsilon(1e-6));

    // the sum rule defect gates the check
    CHECK_THROWS_AS(hk_identity_check(make_poisson(1.0)), ValidationError);
    CHECK_THROWS_AS(hk_identity_check(make_gef()), ValidationError);

    TwoPointModel tab = make_tabulated(ginibre_table(10000));
    HkIdentity hk2 = hk_identity_check(tab);
    CHECK(hk2.lhs == doctest::Approx(hk2.rhs).epsilon(1e-5));
}

TEST_CASE("sum rule defect reporting") {
    CHECK(std::abs(make_ginibre().sum_rule_defect()) < 1e-12);
    CHECK(make_poisson(3.0).sum_rule_defect() == doctest::Approx(3.0));
    CHECK(make_gef().sum_rule_defect() == doctest::Approx(1.0).epsilon(1e-9));
    // a mis-scaled tabulated model reports its defect rather than fixing it
    TabulatedData d = ginibre_table(500);
    d.intensity = 1.0;
    TwoPointModel m = make_tabulated(d);
    CHECK(m.sum_rule_defect() == doctest::Approx(1.0 - 1.0 / (kPi * kPi)).epsilon(1e-6));
}
