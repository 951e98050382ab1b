#include "fluxlab/model.hpp"
#include "fluxlab/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fluxlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

double TwoPointModel::sum_rule_defect() const {
    if (tail_cutoff <= 0.0) return intensity;
    double m1 = integrate_value([this](double t) { return k(t) * t; }, 0.0, tail_cutoff, 1e-12,
                                1e-14);
    return intensity + 2.0 * kPi * m1;
}

TwoPointModel make_ginibre() {
    TwoPointModel m;
    m.name = "ginibre";
    m.kind = ModelKind::Ginibre;
    m.intensity = 1.0 / (kPi * kPi);
    m.tail_cutoff = 4.0;
    m.eval_ = [](double t) { return -std::exp(-kPi * t * t) / (kPi * kPi); };
    return m;
}

TwoPointModel make_gef() {
    TwoPointModel m;
    m.name = "gef";
    m.kind = ModelKind::Gef;
    m.intensity = 1.0;
    m.provisional = true;
    m.tail_cutoff = 25.0;
    // below t = 0.05 the closed form cancels catastrophically; switch to the
    // series -1 + t - (2/9) t^3 + (2/45) t^5
    m.small_t_series = {-1.0, 1.0, 0.0, -2.0 / 9.0, 0.0, 2.0 / 45.0};
    m.eval_ = [](double t) {
        if (t < 0.05) {
            double t2 = t * t;
            return -1.0 + t + t * t2 * (-2.0 / 9.0 + t2 * (2.0 / 45.0));
        }
        double q = std::exp(-2.0 * t);
        double om = 1.0 - q;
        return 2.0 * q / om - 8.0 * t * q / (om * om) + 4.0 * t * t * q * (1.0 + q) / (om * om * om);
    };
    return m;
}

TwoPointModel make_poisson(double intensity) {
    if (intensity <= 0.0) throw ValidationError("poisson model: intensity must be positive");
    TwoPointModel m;
    m.name = "poisson";
    m.kind = ModelKind::Poisson;
    m.intensity = intensity;
    m.tail_cutoff = 0.0;
    m.eval_ = [](double) { return 0.0; };
    return m;
}

TwoPointModel make_tabulated(const TabulatedData& data) {
    if (data.intensity <= 0.0) throw ValidationError("tabulated model: intensity must be positive");
    if (data.t.size() != data.k.size() || data.t.size() < 2)
        throw ValidationError("tabulated model: need two matched columns");
    for (std::size_t i = 1; i < data.t.size(); ++i)
        if (!(data.t[i] > data.t[i - 1]))
            throw ValidationError("tabulated model: abscissae must be strictly increasing");
    TwoPointModel m;
    m.name = data.name;
    m.kind = ModelKind::Tabulated;
    m.intensity = data.intensity;
    m.tail_cutoff = data.t.back();
    auto interp = std::make_shared<PchipInterpolant>(data.t, data.k);
    m.eval_ = [interp](double t) { return (*interp)(t); };
    // ingestion never repairs the sum rule; the defect is reported by callers
    return m;
}

TwoPointModel make_model(const std::string& kind, double intensity, const TabulatedData* data) {
    if (kind == "ginibre") return make_ginibre();
    if (kind == "gef") return make_gef();
    if (kind == "poisson") return make_poisson(intensity);
    if (kind == "tabulated") {
        if (!data) throw ValidationError("tabulated model: no data supplied");
        return make_tabulated(*data);
    }
    throw ValidationError("unknown model kind: " + kind);
}

// ---------------------------------------------------------------------------

double radial_moment(const TwoPointModel& model, int p) {
    if (p < 0 || p > 4) throw ValidationError("radial_moment: p must lie in 0..4");
    if (model.tail_cutoff <= 0.0) return 0.0;
    return integrate_value([&](double t) { return model.k(t) * std::pow(t, p); }, 0.0,
                           model.tail_cutoff, 1e-10, 1e-15);
}

double c_lambda(const TwoPointModel& model) {
    return -8.0 * kPi * kPi * radial_moment(model, 2);
}

double d_lambda(const TwoPointModel& model) {
    return 2.0 * kPi * kPi * radial_moment(model, 3);
}

double kernel_K_quadrature(const TwoPointModel& model, double s) {
    if (s <= 0.0) throw ValidationError("kernel_K: s must be positive");
    const double T = model.tail_cutoff;
    if (s >= T) return 0.0;
    return -4.0 * kPi * kPi *
           integrate_value([&](double r) { return std::log(r / s) * model.k(r) * r; }, s, T, 1e-8,
                           1e-16);
}

double kernel_K(const TwoPointModel& model, double s) {
    if (s <= 0.0) throw ValidationError("kernel_K: s must be positive");
    if (s >= model.tail_cutoff) return 0.0;  // log_+ factor has empty support
    if (model.kind == ModelKind::Ginibre) {
        // (2/pi) int_s^inf e^{-pi r^2} dr/r = E1(pi s^2)/pi
        return exp_int_e1(kPi * s * s) / kPi;
    }
    return kernel_K_quadrature(model, s);
}

double spectral_density(const TwoPointModel& model, double tau) {
    if (tau < 0.0) throw ValidationError("spectral_density: tau must be nonnegative");
    if (model.tail_cutoff <= 0.0) return model.intensity;
    double hat = 2.0 * kPi *
                 integrate_value(
                     [&](double r) { return model.k(r) * std::cyl_bessel_j(0.0, 2.0 * kPi * r * tau) * r; },
                     0.0, model.tail_cutoff, 1e-8, 1e-14);
    return model.intensity + hat;
}

HkIdentity hk_identity_check(const TwoPointModel& model) {
    double h0 = model.sum_rule_defect();
    if (std::abs(h0) > 1e-6) {
        std::ostringstream os;
        os << "hk_identity_check requires h(0) = 0; model '" << model.name << "' has h(0) = " << h0;
        throw ValidationError(os.str());
    }
    HkIdentity out;
    out.lhs = radial_moment(model, 2);

    const double T = model.tail_cutoff;
    auto h_tight = [&](double tau) {
        double hat = 2.0 * kPi *
                     integrate_value(
                         [&](double r) { return model.k(r) * std::cyl_bessel_j(0.0, 2.0 * kPi * r * tau) * r; },
                         0.0, T, 1e-12, 1e-16);
        return model.intensity + hat;
    };

    // On [0, delta] the cancellation h(tau) = c + k_hat(tau) -> 0 amplifies
    // quadrature error by 1/tau^2, so integrate the Bessel series termwise:
    //   int_0^delta h/tau^2 dtau
    //     = 2 pi sum_{m>=1} (-1)^m pi^{2m} M_{2m+1} delta^{2m-1} / ((m!)^2 (2m-1)),
    // M_p = int k r^p dr. Converges fast for pi T delta < ~2.
    double delta = std::min(0.1, 1.0 / (2.0 * T));
    double small = 0.0;
    double mfact2 = 1.0;
    for (int m = 1; m <= 16; ++m) {
        mfact2 *= double(m) * double(m);
        double Mp = integrate_value([&](double r) { return model.k(r) * std::pow(r, 2 * m + 1); },
                                    0.0, T, 1e-12, 1e-18);
        double term = ((m % 2) ? -1.0 : 1.0) * std::pow(kPi, 2 * m) * Mp *
                      std::pow(delta, 2 * m - 1) / (mfact2 * (2 * m - 1));
        small += 2.0 * kPi * term;
        if (std::abs(term) < 1e-16 * std::max(std::abs(small), 1e-12)) break;
    }

    double tau_max = 8.0;
    while (std::abs(h_tight(tau_max) - model.intensity) >
               1e-10 * std::max(model.intensity, 1e-12) &&
           tau_max < 64.0)
        tau_max *= 2.0;
    auto integrand = [&](double tau) { return h_tight(tau) / (tau * tau); };
    double core = integrate_value(integrand, delta, 1.0, 1e-9, 1e-13) +
                  integrate_value(integrand, 1.0, tau_max, 1e-9, 1e-13);
    double tail = model.intensity / tau_max;
    out.rhs = -(small + core + tail) / (4.0 * kPi * kPi);
    return out;
}

// ---------------------------------------------------------------------------

KernelEvaluator::KernelEvaluator(const TwoPointModel& model, int table_size) {
    support_ = model.tail_cutoff;
    if (support_ <= 0.0) {
        c_log_ = 0.0;
        return;
    }
    // K(s) = c_log * log(1/s) + smooth(s); the singular part is exactly
    // logarithmic with coefficient -4 pi^2 int k r dr.
    c_log_ = -4.0 * kPi * kPi * radial_moment(model, 1);
    std::vector<double> y(table_size);
    double dx = support_ / double(table_size - 1);
    for (int i = 0; i < table_size; ++i) {
        double s = dx * double(i);
        if (i == 0) {
            // limit of K(s) - c_log log(1/s): -4 pi^2 int k(r) log(r) r dr
            y[i] = -4.0 * kPi * kPi *
                   integrate_value([&](double r) { return model.k(r) * std::log(std::max(r, 1e-300)) * r; },
                                   0.0, support_, 1e-10, 1e-14);
        } else {
            double K = kernel_K(model, s);
            y[i] = K - c_log_ * std::log(1.0 / s);
        }
    }
    smooth_ = UniformCubicTable(0.0, dx, std::move(y));
}

double KernelEvaluator::operator()(double s) const {
    if (s >= support_ || support_ <= 0.0) return 0.0;
    double base = c_log_ == 0.0 ? 0.0 : c_log_ * std::log(1.0 / s);
    return base + smooth_(s);
}

} // namespace fluxlab
