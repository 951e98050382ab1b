#pragma once

#include <vector>

namespace fluxlab {

struct GrowthFit {
    std::vector<double> radii;
    std::vector<double> variances;
    double slope = 0.0;       // least squares in log-log
    double intercept = 0.0;
    double max_residual = 0.0;
};

struct NestedCaps {
    int k_cap = 0;   // 0 = auto: ceil(6 R^{1/(1+eps)}) + 32
    long j_cap = 0;  // 0 = auto-escalated until the truncation tail is < 1e-8 relative
};

// Exact variance of the nested-disk charge sum sum_{k<=k_cap} n(R l_k D) for
// the Ginibre process at Kostlan's native scale (intensity 1/pi), l_k =
// k^{-1-eps}. Computed from independence of the squared moduli:
//   Var = sum_j [ sum_k (2k-1) P(j, x_k) - (sum_k P(j, x_k))^2 ],
// x_k = (R l_k)^2. The j-side truncation is auto-escalated until its bound is
// below 1e-8 of the value; k_cap is part of the definition of the (finite)
// curve family.
double nested_variance_exact(double eps, double R, NestedCaps caps = {});

// Least-squares slope of log variance against log R over the ladder.
GrowthFit growth_exponent(double eps, const std::vector<double>& R_list, NestedCaps caps = {});

} // namespace fluxlab
