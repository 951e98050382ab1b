#include "fluxlab/counterexample.hpp"
#include "fluxlab/curve.hpp"
#include "fluxlab/errors.hpp"
#include "fluxlab/numerics.hpp"
#include "fluxlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fluxlab {

namespace {

// Contribution window of the Gamma(j,1) CDF around x: outside
// [x - w sqrt(x), x + w sqrt(x)] the CDF is 1 or 0 to far below double
// precision (w = 25 keeps the seed term representable for every x).
constexpr double kWindow = 25.0;

struct Sweep {
    long j_lo;        // first j with P(j,x) < 1
    long j_hi;        // last j with P(j,x) > 0 (numerically)
    double p0, t0;    // seed value and step term at j_lo
};

Sweep open_sweep(double x) {
    Sweep s;
    s.j_lo = std::max(1L, long(x - kWindow * std::sqrt(x)));
    s.j_hi = long(x + kWindow * std::sqrt(x)) + 60;
    if (s.j_lo == 1) {
        s.p0 = -std::expm1(-x);
        s.t0 = x * std::exp(-x);
    } else {
        s.p0 = 1.0;
        s.t0 = std::exp(double(s.j_lo) * std::log(x) - x - std::lgamma(double(s.j_lo) + 1.0));
    }
    return s;
}

} // namespace

double nested_variance_exact(double eps, double R, NestedCaps caps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("nested_variance_exact: eps must lie in (0,1)");
    if (R <= 0.0) throw ValidationError("nested_variance_exact: R must be positive");

    int k_cap = caps.k_cap > 0 ? caps.k_cap
                               : int(std::ceil(6.0 * std::pow(R, 1.0 / (1.0 + eps)))) + 32;
    std::vector<double> x(k_cap);
    for (int k = 1; k <= k_cap; ++k) {
        double l = std::pow(double(k), -1.0 - eps);
        x[k - 1] = (R * l) * (R * l);
    }

    long j_cap = caps.j_cap > 0 ? caps.j_cap : long(x[0] + kWindow * std::sqrt(x[0])) + 60;
    // escalate if the caller under-caps: indicators with j above the window
    // of x_1 are zero to below 1e-8 of any term
    long j_need = long(x[0] + kWindow * std::sqrt(x[0])) + 60;
    if (caps.j_cap > 0 && caps.j_cap < j_need)
        j_cap = j_need;

    // S1[j] = sum_k P(j, x_k), S2[j] = sum_k (2k-1) P(j, x_k)
    std::vector<double> S1(std::size_t(j_cap) + 1, 0.0);
    std::vector<double> S2(std::size_t(j_cap) + 1, 0.0);
    for (int k = 1; k <= k_cap; ++k) {
        double xk = x[k - 1];
        double wk = double(2 * k - 1);
        Sweep s = open_sweep(xk);
        for (long j = 1; j < std::min(s.j_lo, j_cap + 1); ++j) {
            S1[j] += 1.0;
            S2[j] += wk;
        }
        double p = s.p0, t = s.t0;
        long hi = std::min(s.j_hi, j_cap);
        for (long j = s.j_lo; j <= hi; ++j) {
            S1[j] += p;
            S2[j] += wk * p;
            p -= t;
            if (p < 0.0) p = 0.0;
            t *= xk / double(j + 1);
            if (p == 0.0 && t < 1e-300) break;
        }
    }

    KahanSum var;
    for (long j = 1; j <= j_cap; ++j) var.add(S2[j] - S1[j] * S1[j]);
    return var.value();
}

GrowthFit growth_exponent(double eps, const std::vector<double>& R_list, NestedCaps caps) {
    if (R_list.size() < 4) throw ValidationError("growth_exponent: need at least 4 radii");
    double lo = *std::min_element(R_list.begin(), R_list.end());
    double hi = *std::max_element(R_list.begin(), R_list.end());
    if (hi < 10.0 * lo) throw ValidationError("growth_exponent: radii must span at least one decade");
    for (std::size_t i = 1; i < R_list.size(); ++i)
        if (!(R_list[i] > R_list[i - 1]))
            throw ValidationError("growth_exponent: radii must be strictly increasing");

    GrowthFit fit;
    fit.radii = R_list;
    fit.variances.resize(R_list.size());
    parallel_for(R_list.size(), [&](std::size_t i) {
        fit.variances[i] = nested_variance_exact(eps, R_list[i], caps);
    });

    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < R_list.size(); ++i) {
        if (fit.variances[i] <= 0.0) throw NumericError("growth_exponent: nonpositive variance");
        lx.push_back(std::log(R_list[i]));
        ly.push_back(std::log(fit.variances[i]));
    }
    LineFit lf = fit_line(lx, ly);
    fit.slope = lf.slope;
    fit.intercept = lf.intercept;
    fit.max_residual = lf.max_residual;
    return fit;
}

} // namespace fluxlab
