#pragma once

#include "fluxlab/numerics.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace fluxlab {

enum class ModelKind { Ginibre, Gef, Poisson, Tabulated };

// Radial truncated two-point function k(t) with intensity and tail metadata.
//
// Convention ledger: k is stored exactly as the closed forms below; all
// derived constants (C, D, kernel K, spectral density h) use those forms
// verbatim. The Ginibre intensity is 1/pi^2, the unique value for which the
// hyperuniformity sum rule h(0) = c + 2pi int k t dt = 0 holds with
// k(t) = -pi^-2 exp(-pi t^2). The physical sampler (sampler module) runs at
// intensity 1; the bridge between the two conventions is validated
// empirically by the Kostlan disk oracle (Var[n(R D)] -> R for the unit
// disk), not assumed.
//
// The GEF model k(t) = 1/2 (d/dt)^2 [t^2 (coth t - 1)] is flagged
// provisional: its first radial moment vanishes identically, so no positive
// intensity satisfies the sum rule. Operations that require h(0) = 0 refuse
// it; plain formula evaluations accept it.
class TwoPointModel {
public:
    std::string name;
    ModelKind kind = ModelKind::Poisson;
    double intensity = 1.0;       // c, in the stored-k convention
    double tail_cutoff = 0.0;     // T with |k(t)| < 1e-16 guaranteed for t > T
    bool provisional = false;     // sum rule known not to hold (GEF)
    std::vector<double> small_t_series;  // low-order expansion near 0, if used

    double k(double t) const { return eval_ ? eval_(t) : 0.0; }

    // Defect of the hyperuniformity sum rule: h(0) = c + 2 pi int_0^T k t dt.
    double sum_rule_defect() const;

    std::function<double(double)> eval_;
};

struct TabulatedData {
    std::vector<double> t;  // strictly increasing abscissae
    std::vector<double> k;
    double intensity = 1.0;
    std::string name = "tabulated";
};

TwoPointModel make_ginibre();
TwoPointModel make_gef();
TwoPointModel make_poisson(double intensity);
TwoPointModel make_tabulated(const TabulatedData& data);

// Generic factory used by the CLI: kind in {ginibre, gef, poisson, tabulated}.
TwoPointModel make_model(const std::string& kind, double intensity = 1.0,
                         const TabulatedData* data = nullptr);

// int_0^T k(t) t^p dt by adaptive quadrature (rel. tol 1e-10), p in 0..4.
double radial_moment(const TwoPointModel& model, int p);

// Variance coefficients of the perimeter law and the logarithmic work law.
double c_lambda(const TwoPointModel& model);   // -8 pi^2 int k t^2 dt
double d_lambda(const TwoPointModel& model);   //  2 pi^2 int k t^3 dt

// Covariance kernel of the stationary field:
//   K(s) = -4 pi^2 int_s^inf log(r/s) k(r) r dr.
// The Ginibre model takes the closed-form path (2/pi) int_s^inf e^{-pi r^2}/r dr.
double kernel_K(const TwoPointModel& model, double s);
double kernel_K_quadrature(const TwoPointModel& model, double s);  // generic route

// Radial spectral density h(tau) = c + 2 pi int_0^T k(r) J0(2 pi r tau) r dr.
double spectral_density(const TwoPointModel& model, double tau);

struct HkIdentity {
    double lhs;  // int k t^2 dt
    double rhs;  // -(1/4pi^2) int h(tau)/tau^2 dtau
};

// Both sides of the moment/spectral identity; requires |h(0)| < 1e-6.
HkIdentity hk_identity_check(const TwoPointModel& model);

// Fast kernel evaluator for inner loops: K(s) split as
// log_coefficient * log(1/s) + smooth remainder (tabulated once).
class KernelEvaluator {
public:
    explicit KernelEvaluator(const TwoPointModel& model, int table_size = 4096);
    double operator()(double s) const;
    double support() const { return support_; }
    double log_coefficient() const { return c_log_; }

private:
    double support_ = 0.0;
    double c_log_ = 0.0;
    UniformCubicTable smooth_;
};

} // namespace fluxlab
