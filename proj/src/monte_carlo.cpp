#include "fluxlab/monte_carlo.hpp"
#include "fluxlab/errors.hpp"
#include "fluxlab/numerics.hpp"
#include "fluxlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fluxlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

int winding_number(const Curve& closed_curve, Complex z) {
    if (!closed_curve.closed) throw ValidationError("winding_number: curve must be closed");
    int w = 0;
    for (std::size_t i = 0; i < closed_curve.edge_count(); ++i) {
        auto [a, b] = closed_curve.edge(i);
        if (a.imag() <= z.imag()) {
            if (b.imag() > z.imag()) {
                double side = (b.real() - a.real()) * (z.imag() - a.imag()) -
                              (z.real() - a.real()) * (b.imag() - a.imag());
                if (side > 0) ++w;
            }
        } else {
            if (b.imag() <= z.imag()) {
                double side = (b.real() - a.real()) * (z.imag() - a.imag()) -
                              (z.real() - a.real()) * (b.imag() - a.imag());
                if (side < 0) --w;
            }
        }
    }
    return w;
}

double signed_area(const Curve& closed_curve) {
    if (!closed_curve.closed) throw ValidationError("signed_area: curve must be closed");
    KahanSum s;
    for (std::size_t i = 0; i < closed_curve.edge_count(); ++i) {
        auto [a, b] = closed_curve.edge(i);
        s.add(a.real() * b.imag() - b.real() * a.imag());
    }
    return 0.5 * s.value();
}

long count_in_region(const PointConfig& config, const Curve& closed_curve) {
    if (!closed_curve.closed) throw ValidationError("count_in_region: curve must be closed");
    if (curve_max_abs(closed_curve) > config.window_radius)
        throw ValidationError("count_in_region: curve exits the configuration window");
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const Complex& v : closed_curve.vertices) {
        xlo = std::min(xlo, v.real());
        xhi = std::max(xhi, v.real());
        ylo = std::min(ylo, v.imag());
        yhi = std::max(yhi, v.imag());
    }
    long total = 0;
    for (const Complex& p : config.points) {
        if (p.real() < xlo || p.real() > xhi || p.imag() < ylo || p.imag() > yhi) continue;
        total += winding_number(closed_curve, p);
    }
    return total;
}

ActionResult action_along(const PointConfig& config, const Curve& curve,
                          double physical_intensity, double truncation_radius) {
    if (truncation_radius > config.window_radius + 1e-12)
        throw ValidationError("action_along: truncation radius exceeds the window");
    if (curve_max_abs(curve) > 0.5 * truncation_radius)
        throw ValidationError("action_along: curve exceeds half the truncation radius");

    const std::size_t ne = curve.edge_count();
    std::vector<Complex> ea(ne), eb(ne), ed(ne);
    for (std::size_t i = 0; i < ne; ++i) {
        auto [a, b] = curve.edge(i);
        ea[i] = a;
        eb[i] = b;
        ed[i] = b - a;
    }

    ActionResult out;
    KahanSum re, im, mag;
    const double trunc2 = truncation_radius * truncation_radius;
    for (const Complex& p : config.points) {
        if (std::norm(p) >= trunc2) continue;
        for (std::size_t i = 0; i < ne; ++i) {
            Complex fa = ea[i] - p;
            Complex fb = eb[i] - p;
            // a straight edge subtends an argument change below pi seen from
            // any point off it, so the principal log of the endpoint ratio is
            // the correct branch
            Complex term = std::log(fb / fa);
            re.add(term.real());
            im.add(term.imag());
            mag.add(std::abs(term));
            // pole-on-edge guard
            double len2 = std::norm(ed[i]);
            double t = (fa.real() * -ed[i].real() + fa.imag() * -ed[i].imag()) / len2;
            if (t > 0.0 && t < 1.0) {
                double perp = std::abs(fa.real() * ed[i].imag() - fa.imag() * ed[i].real()) /
                              std::sqrt(len2);
                if (perp < 1e-12) out.jitter_retry = true;
            } else if (std::abs(fa) < 1e-12 || std::abs(fb) < 1e-12) {
                out.jitter_retry = true;
            }
        }
    }
    // compensator: -pi c int z-bar dz, exact per edge
    KahanSum cre, cim;
    for (std::size_t i = 0; i < ne; ++i) {
        Complex v = 0.5 * (std::conj(ea[i]) + std::conj(eb[i])) * ed[i];
        cre.add(v.real());
        cim.add(v.imag());
    }
    Complex comp = -kPi * physical_intensity * Complex(cre.value(), cim.value());
    out.value = Complex(re.value(), im.value()) + comp;
    out.term_magnitude = mag.value() + std::abs(comp);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

PointConfig draw(const SamplerSpec& spec, double window, std::uint64_t seed) {
    if (spec.model == "ginibre") return sample_ginibre(window, seed);
    if (spec.model == "poisson") return sample_poisson(spec.intensity, window, seed);
    throw ValidationError("estimate_statistic: sampler must be ginibre or poisson");
}

double sampler_intensity(const SamplerSpec& spec) {
    return spec.model == "poisson" ? spec.intensity : 1.0;
}

Estimate aggregate(const std::vector<Complex>& values, Statistic stat, std::uint64_t base_seed,
                   double window) {
    const long n = long(values.size());
    KahanSum sre, sim;
    for (const Complex& v : values) {
        sre.add(v.real());
        sim.add(v.imag());
    }
    Complex mean(sre.value() / double(n), sim.value() / double(n));
    KahanSum dev2;
    for (const Complex& v : values) dev2.add(std::norm(v - mean));
    double variance = dev2.value() / double(n - 1);

    // batch means over sqrt(n) batches: spread of within-batch variances
    long B = std::max(2L, long(std::sqrt(double(n))));
    long m = n / B;
    std::vector<double> batch_var;
    batch_var.reserve(B);
    for (long b = 0; b < B; ++b) {
        long lo = b * m, hi = (b + 1) * m;
        Complex bm(0, 0);
        for (long i = lo; i < hi; ++i) bm += values[i];
        bm /= double(m);
        double v2 = 0.0;
        for (long i = lo; i < hi; ++i) v2 += std::norm(values[i] - bm);
        batch_var.push_back(v2 / double(m - 1));
    }
    double bmean = 0.0;
    for (double v : batch_var) bmean += v;
    bmean /= double(B);
    double bdev = 0.0;
    for (double v : batch_var) bdev += (v - bmean) * (v - bmean);
    double stderr_var = std::sqrt(bdev / double(B - 1) / double(B));

    Estimate est;
    est.mean = stat == Statistic::Action ? mean : Complex(mean.real(), 0.0);
    est.variance = variance;
    est.stderr_of_variance = stderr_var;
    est.n_samples = n;
    est.base_seed = base_seed;
    est.window_radius = window;
    return est;
}

} // namespace

Estimate estimate_statistic(const SamplerSpec& sampler, Statistic stat, const Curve& target,
                            double R, long n, std::uint64_t base_seed) {
    if (n < 2) throw ValidationError("estimate_statistic: need at least 2 samples");
    if (stat == Statistic::MultiCount)
        throw ValidationError("estimate_statistic: multi_count takes a radii ladder");
    Curve dilated = map_curve(target, R, 0.0, Complex(0, 0));
    if (stat == Statistic::Count && !dilated.closed)
        throw ValidationError("estimate_statistic: count requires a closed curve");

    double extent = std::max(curve_diameter(dilated), curve_max_abs(dilated));
    double window = 2.0 * extent + 4.0;
    double trunc = window;
    double c = sampler_intensity(sampler);

    std::vector<Complex> values(n);
    parallel_for(std::size_t(n), [&](std::size_t i) {
        std::uint64_t seed = derive_seed(base_seed, i);
        PointConfig cfg = draw(sampler, window, seed);
        if (stat == Statistic::Count) {
            values[i] = Complex(double(count_in_region(cfg, dilated)), 0.0);
            return;
        }
        ActionResult ar = action_along(cfg, dilated, c, trunc);
        if (ar.jitter_retry) {
            cfg = draw(sampler, window, splitmix64(seed ^ 0x6a77e5u));
            ar = action_along(cfg, dilated, c, trunc);
            if (ar.jitter_retry)
                throw NumericError("action_along: pole on edge persisted after retry");
        }
        switch (stat) {
        case Statistic::Work: values[i] = Complex(ar.value.real(), 0.0); break;
        case Statistic::Flux: values[i] = Complex(ar.value.imag(), 0.0); break;
        default: values[i] = ar.value; break;
        }
    });
    return aggregate(values, stat, base_seed, window);
}

Estimate estimate_multi_count(const SamplerSpec& sampler, const std::vector<double>& radii,
                              double R, long n, std::uint64_t base_seed) {
    if (n < 2) throw ValidationError("estimate_multi_count: need at least 2 samples");
    if (radii.empty()) throw ValidationError("estimate_multi_count: empty radii ladder");
    double rmax = *std::max_element(radii.begin(), radii.end());
    double window = 2.0 * R * rmax + 4.0;

    std::vector<Complex> values(n);
    parallel_for(std::size_t(n), [&](std::size_t i) {
        PointConfig cfg = draw(sampler, window, derive_seed(base_seed, i));
        std::vector<double> mods(cfg.points.size());
        for (std::size_t p = 0; p < cfg.points.size(); ++p) mods[p] = std::abs(cfg.points[p]);
        std::sort(mods.begin(), mods.end());
        long total = 0;
        for (double l : radii)
            total += long(std::upper_bound(mods.begin(), mods.end(), R * l) - mods.begin());
        values[i] = Complex(double(total), 0.0);
    });
    return aggregate(values, Statistic::MultiCount, base_seed, window);
}

} // namespace fluxlab
