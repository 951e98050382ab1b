#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace fluxlab {

// --- deterministic seeding -------------------------------------------------

// splitmix64 step; used to derive independent per-sample seeds from a base
// seed so batch results do not depend on thread scheduling.
std::uint64_t splitmix64(std::uint64_t x);

inline std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
    return base_seed ^ splitmix64(index + 0x9e3779b97f4a7c15ull);
}

// --- compensated accumulation ----------------------------------------------

struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        double y = x - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// --- adaptive quadrature ----------------------------------------------------

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // achieved error estimate
    long evaluations = 0;
};

// Adaptive Gauss-Kronrod (7,15) with recursive bisection. Throws NumericError
// (reporting the achieved tolerance) if the requested tolerance is not met.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-10, double abs_tol = 0.0, int max_depth = 60);

// Convenience: value only.
double integrate_value(const std::function<double(double)>& f, double a, double b,
                       double rel_tol = 1e-10, double abs_tol = 0.0);

// Nodes/weights of n-point Gauss-Legendre on [-1,1], n in {4,6,8,12,16}.
void gauss_legendre(int n, const double*& nodes, const double*& weights);

// --- special functions -------------------------------------------------------

// Regularized lower/upper incomplete gamma P(a,x), Q(a,x) = 1 - P(a,x).
// Series for x < a+1, Lentz continued fraction otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
double exp_int_e1(double x);

// --- interpolation -----------------------------------------------------------

// Monotone (Fritsch-Carlson) piecewise-cubic Hermite interpolant.  Evaluates
// to 0 outside the abscissa range on the right, clamps on the left.
class PchipInterpolant {
public:
    PchipInterpolant() = default;
    PchipInterpolant(std::vector<double> x, std::vector<double> y);
    double operator()(double t) const;
    double x_back() const { return x_.empty() ? 0.0 : x_.back(); }
    bool empty() const { return x_.empty(); }

private:
    std::vector<double> x_, y_, slope_;
};

// Cubic Hermite on a uniform grid with centered-difference slopes; fast
// evaluation for table-backed kernels.
class UniformCubicTable {
public:
    UniformCubicTable() = default;
    UniformCubicTable(double x0, double dx, std::vector<double> y);
    double operator()(double t) const;

private:
    double x0_ = 0.0, dx_ = 1.0;
    std::vector<double> y_, d_;
};

// --- least squares -----------------------------------------------------------

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

} // namespace fluxlab
