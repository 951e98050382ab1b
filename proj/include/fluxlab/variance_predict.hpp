#pragma once

#include "fluxlab/curve.hpp"
#include "fluxlab/model.hpp"

#include <vector>

namespace fluxlab {

// Controls for the principal-value double integral: symmetric exclusion
// |x-y| > eps for each eps in the (strictly decreasing) schedule, panel
// counts for the smooth edge pairs, and the convergence guard.
struct QuadratureSpec {
    std::vector<double> epsilon_schedule;  // empty = geometric default diam * 2^-k, k=6..14
    int panels_per_edge = 1;
    bool richardson = true;
    double abs_tol = -1.0;  // guard on the last two schedule levels; <=0 = auto (10% of scale)

    void validate() const;
};

// Asymptotic predictions from the variance coefficients.
double predict_action_cov(const TwoPointModel& model, const Curve& curve1, const Curve& curve2,
                          double R);
double predict_count_variance(const TwoPointModel& model, const Curve& closed_curve, double R);
double predict_work_variance(const TwoPointModel& model, double R);

struct PvResult {
    double value = 0.0;           // extrapolated when richardson is on, else last level
    double error_estimate = 0.0;  // |last level - previous level|
    std::vector<double> levels;            // raw value per epsilon level
    std::vector<double> extrapolated;      // sliding 3-level extrapolants (if enabled)
};

// Direct evaluation of the covariance of the action along the two dilated
// curves: p.v. of the double integral of K(|x-y|) dz dz-bar over
// (R curve1) x (R curve2), by edge-pair quadrature with epsilon exclusion and
// extrapolation in epsilon. Throws NumericError if the last two levels differ
// by more than abs_tol.
PvResult pv_action_cov_quadrature(const TwoPointModel& model, const Curve& curve1,
                                  const Curve& curve2, double R, const QuadratureSpec& spec = {});

// Variance of the potential increment over distance a:
//   -2 int_0^a K(r) log(a/r) r dr   (radial form)
double work_variance_radial(const TwoPointModel& model, double a);

enum class AngularMode { Analytic, Numeric };

// Same quantity from the planar integral (1/2pi) int K(|s|) Phi(a/s) dm with
// Phi(a/s) = 2log|s| - log|s-a| - log|s+a|. Analytic mode replaces the
// angular integral by its closed-form circle average; numeric mode
// quadratures the angle as an independent discretization path.
double work_variance_2d(const TwoPointModel& model, double a, const QuadratureSpec& spec = {},
                        AngularMode mode = AngularMode::Analytic);

} // namespace fluxlab
