#include "fluxlab/verify.hpp"

#include "fluxlab/counterexample.hpp"
#include "fluxlab/curve.hpp"
#include "fluxlab/curve_analysis.hpp"
#include "fluxlab/model.hpp"
#include "fluxlab/monte_carlo.hpp"
#include "fluxlab/sampler.hpp"
#include "fluxlab/variance_predict.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>
#include <vector>

namespace fluxlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Checker {
    std::ostream& out;
    int failures = 0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void report(bool ok, const std::string& label, const std::string& detail) {
        auto t1 = std::chrono::steady_clock::now();
        double secs = std::chrono::duration<double>(t1 - t0).count();
        t0 = t1;
        out << (ok ? "[PASS] " : "[FAIL] ") << label << " -- " << detail << std::fixed
            << std::setprecision(1) << "  (" << secs << "s)\n"
            << std::defaultfloat << std::setprecision(6) << std::flush;
        if (!ok) ++failures;
    }
    void note(const std::string& label, const std::string& detail) {
        out << "[NOTE] " << label << " -- " << detail << "\n";
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(8) << v;
    return os.str();
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-300});
}

// doubled sub-arc: traverses [0,1] twice in the same direction, returning
// through the upper half plane between the passes
Curve doubled_segment_curve() {
    std::vector<Complex> v = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {1, 0}};
    return make_polyline(v, false);
}

} // namespace

int run_verification_suite(std::ostream& out, bool fast) {
    Checker ck{out};
    const std::uint64_t seed = 0x5eed2025u;
    TwoPointModel gin = make_ginibre();
    TwoPointModel gef = make_gef();
    TwoPointModel poi = make_poisson(1.0);

    // 1. Kostlan mean identity
    {
        bool ok = true;
        std::ostringstream d;
        for (double R : {1.0, 5.0, 20.0}) {
            DiskMoments m = ginibre_disk_moments_exact(R);
            double target = kPi * R * R;
            ok = ok && std::abs(m.mean - target) <= 1e-8 * target;
            d << "R=" << R << " mean=" << fmt(m.mean) << " ";
        }
        ck.report(ok, "1 Kostlan mean identity", d.str() + "target pi R^2, rel tol 1e-8");
    }

    // 2. Perimeter law anchor
    {
        DiskMoments m100 = ginibre_disk_moments_exact(100.0);
        DiskMoments m400 = ginibre_disk_moments_exact(400.0);
        Curve circ = circle_curve({0, 0}, 1.0, 4096);
        double p100 = predict_count_variance(gin, circ, 100.0) / 100.0;
        bool ok = m100.variance / 100.0 >= 0.95 && m100.variance / 100.0 <= 1.05 &&
                  m400.variance / 400.0 >= 0.98 && m400.variance / 400.0 <= 1.02 &&
                  std::abs(p100 - 1.0) < 1e-3;
        ck.report(ok, "2 Perimeter law",
                  "var/R: R=100 " + fmt(m100.variance / 100.0) + ", R=400 " +
                      fmt(m400.variance / 400.0) + "; prediction/R = " + fmt(p100));
    }

    // 3. Sampler fidelity vs disk oracle
    double oracle_var10 = ginibre_disk_moments_exact(10.0).variance;
    {
        long n = fast ? 800 : 4000;
        Curve circ = circle_curve({0, 0}, 1.0, 512);
        Estimate est = estimate_statistic({"ginibre"}, Statistic::Count, circ, 10.0, n, seed);
        double dev = std::abs(est.variance - oracle_var10);
        bool ok = dev <= 3.0 * est.stderr_of_variance;
        ck.report(ok, "3 Sampler count variance (R=10)",
                  "empirical " + fmt(est.variance) + " vs oracle " + fmt(oracle_var10) +
                      ", |dev| = " + fmt(dev) + " <= 3*" + fmt(est.stderr_of_variance));
    }

    // 4. Poisson control: area law empirically, zero perimeter-law prediction
    {
        long n = fast ? 800 : 4000;
        Curve circ = circle_curve({0, 0}, 1.0, 512);
        Estimate est =
            estimate_statistic({"poisson", 1.0}, Statistic::Count, circ, 10.0, n, seed + 1);
        double target = 100.0 * kPi;
        double pred = predict_count_variance(poi, circ, 10.0);
        bool ok = std::abs(est.variance - target) <= 3.0 * est.stderr_of_variance && pred == 0.0;
        ck.report(ok, "4 Poisson control",
                  "empirical " + fmt(est.variance) + " vs 100 pi = " + fmt(target) +
                      " (3 sigma = " + fmt(3.0 * est.stderr_of_variance) +
                      "), perimeter-law prediction = " + fmt(pred));
    }

    // 5. Action covariance quadrature vs C * 2 pi R
    {
        bool ok = true;
        std::ostringstream d;
        for (double R : {25.0, 50.0}) {
            int segs = std::max(64, int(std::ceil(64.0 * R)));
            Curve circ = circle_curve({0, 0}, 1.0, segs);
            PvResult pv = pv_action_cov_quadrature(gin, circ, circ, R);
            double ratio = pv.value / R;
            ok = ok && std::abs(ratio - 4.0) <= 0.05 * 4.0;
            if (pv.extrapolated.size() >= 2) {
                double e1 = pv.extrapolated[pv.extrapolated.size() - 2];
                double e2 = pv.extrapolated.back();
                ok = ok && std::abs(e2 - e1) <= 0.01 * std::abs(e2);
                d << "R=" << R << " pv/R=" << fmt(ratio) << " (extrap drift "
                  << fmt(std::abs(e2 - e1) / std::abs(e2)) << ") ";
            }
        }
        ck.report(ok, "5 Theorem-level quadrature consistency", d.str() + "target 4 +- 5%");
    }

    // 6. h-k identity
    {
        HkIdentity hk = hk_identity_check(gin);
        double lhs = -4.0 * kPi * kPi * hk.lhs;
        double rhs = -4.0 * kPi * kPi * hk.rhs;
        bool ok = rel_close(lhs, 1.0 / kPi, 1e-6) && rel_close(rhs, 1.0 / kPi, 1e-6);
        ck.report(ok, "6 h-k identity",
                  "-4pi^2 * moment = " + fmt(lhs) + ", spectral side = " + fmt(rhs) +
                      ", target 1/pi = " + fmt(1.0 / kPi));
    }

    // 7. Signed length suite
    {
        Curve square = make_polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
        Curve circ = circle_curve({0, 0}, 1.0, 1024);
        double L_sq = signed_length(square, square);
        double L_ci = signed_length(circ, circ);
        bool ok = rel_close(L_sq, 4.0, 1e-12) && rel_close(L_ci, curve_length(circ), 1e-12);

        Curve dbl = doubled_segment_curve();
        double L_dbl = signed_length(dbl, dbl);
        // detour edges contribute their own length once; the doubled unit
        // segment contributes 2^2 * 1
        ok = ok && rel_close(L_dbl - 3.0, 4.0, 1e-12);

        Curve rev = map_curve(circ, 1.0, 0.0, {0, 0}, true);
        ok = ok && rel_close(signed_length(circ, rev), -L_ci, 1e-12);

        double Rd = 7.5;
        Curve big = map_curve(circ, Rd, 0.0, {0, 0});
        ok = ok && rel_close(signed_length(big, big), Rd * L_ci, 1e-12);
        ck.report(ok, "7 Signed length suite",
                  "self " + fmt(L_ci) + ", doubled sub-arc " + fmt(L_dbl - 3.0) +
                      " (target 4), reversal and dilation exact");
    }

    // 8. Weak Ahlfors suite
    {
        Curve circ = circle_curve({0, 0}, 1.0, 256);
        AhlforsReport rc = weak_ahlfors_estimate(circ, 8, 16);
        Curve seg = make_polyline({{0, 0}, {0.25, 0}, {0.5, 0}, {0.75, 0}, {1, 0}}, false);
        AhlforsReport rs = weak_ahlfors_estimate(seg, 8, 24);
        bool ok = rc.sup_ratio <= 1.02 && rel_close(rs.sup_ratio, 1.0 / kPi, 0.05);
        std::vector<double> spiral_est;
        for (int kmax : {10, 100, 1000}) {
            Curve sp = spiral_curve(0.1, kmax, 8);
            spiral_est.push_back(weak_ahlfors_estimate(sp, 8, 4).sup_ratio);
        }
        ok = ok && spiral_est[0] < spiral_est[1] && spiral_est[1] < spiral_est[2];
        ck.report(ok, "8 Weak Ahlfors suite",
                  "circle " + fmt(rc.sup_ratio) + " (<=1.02), segment " + fmt(rs.sup_ratio) +
                      " (1/pi +-5%), spiral ladder " + fmt(spiral_est[0]) + " < " +
                      fmt(spiral_est[1]) + " < " + fmt(spiral_est[2]));
    }

    // 9. Counterexample growth exponent
    {
        std::vector<double> Rs = {100, 200, 400, 800, 1600};
        GrowthFit g = growth_exponent(0.5, Rs);
        GrowthFit ctrl = growth_exponent(0.5, Rs, NestedCaps{1, 0});
        bool ok_main = g.slope >= 1.4;
        bool ok_ctrl = ctrl.slope >= 0.9 && ctrl.slope <= 1.1;
        ck.report(ok_main && ok_ctrl, "9 Counterexample growth",
                  "slope(eps=0.5) = " + fmt(g.slope) + " (required >= 1.4), control slope = " +
                      fmt(ctrl.slope) + " (in [0.9,1.1])");
        if (!ok_main)
            ck.note("9 Counterexample growth",
                    "nested-disk family with l_k = k^{-1-eps} scales as R^{2/(1+eps)} "
                    "(= R^1.333 at eps=0.5); the 1.4 threshold presumes exponent 2-eps, "
                    "which this construction parameter does not deliver at any R");
    }

    // 10a. Work variance: radial vs planar forms
    {
        bool ok = true;
        std::ostringstream d;
        for (const TwoPointModel* m : {&gin, &gef}) {
            for (double a : {2.0, 5.0, 20.0, 100.0}) {
                double wr = work_variance_radial(*m, a);
                double w2a = work_variance_2d(*m, a, {}, AngularMode::Analytic);
                double w2n = work_variance_2d(*m, a, {}, AngularMode::Numeric);
                ok = ok && rel_close(w2a, wr, 1e-8) && rel_close(w2n, wr, 0.01);
            }
            double wr100 = work_variance_radial(*m, 100.0);
            d << m->name << " V(100)=" << fmt(wr100) << " ";
        }
        ck.report(ok, "10a Work variance forms",
                  d.str() + "(analytic angle to 1e-8, numeric angle to 1%)");
    }

    // 10b. Monte-Carlo work variance along a dilated segment
    {
        long n = fast ? 500 : 4000;
        Curve segment = make_polyline({{1, 0}, {2, 0}}, false);
        std::vector<double> Rs = {8, 16, 32, 64};
        std::vector<double> logR, vars, errs;
        bool ok = true;
        for (double R : Rs) {
            Estimate est =
                estimate_statistic({"ginibre"}, Statistic::Work, segment, R, n, seed + 7);
            ok = ok && est.variance >= 0.0;
            if (!vars.empty()) ok = ok && est.variance > vars.back();
            logR.push_back(std::log(R));
            vars.push_back(est.variance);
            errs.push_back(est.stderr_of_variance);
        }
        LineFit lf = fit_line(logR, vars);
        std::ostringstream d;
        d << "variances";
        for (std::size_t i = 0; i < vars.size(); ++i) {
            double resid = std::abs(vars[i] - lf.slope * logR[i] - lf.intercept);
            ok = ok && resid <= 3.0 * errs[i];
            d << " " << fmt(vars[i]);
        }
        d << "; fitted slope vs log R = " << fmt(lf.slope) << ", |D(printed)| = "
          << fmt(std::abs(d_lambda(gin))) << " (sign anomaly logged, not asserted)";
        ck.report(ok, "10b Monte-Carlo work variance", d.str());
        if (!ok)
            ck.note("10b Monte-Carlo work variance",
                    "the radial sampler reproduces the moduli law only; with "
                    "independent angles the open-segment work picks up uncancelled "
                    "angular noise of order R^2 (measured) instead of the log R law "
                    "of the true field, so the affine-in-log-R gate cannot pass with "
                    "this sampler construction. Radial observables (counts, closed-"
                    "curve flux) are unaffected.");
    }

    // 11. Per-sample identities
    {
        long nseeds = fast ? 25 : 100;
        Curve circ = map_curve(circle_curve({0, 0}, 1.0, 256), 10.0, 0.0, {0, 0});
        double window = 2.0 * std::max(curve_diameter(circ), curve_max_abs(circ)) + 4.0;
        double area = signed_area(circ);
        bool ok = true;
        double worst_arg = 0.0, worst_work = 0.0;
        for (long i = 0; i < nseeds; ++i) {
            PointConfig cfg = sample_ginibre(window, derive_seed(seed + 11, i));
            ActionResult ar = action_along(cfg, circ, 1.0, window);
            long cnt = count_in_region(cfg, circ);
            Complex rhs = Complex(0, 2.0 * kPi) * (double(cnt) - 1.0 * area);
            double scale = std::max(1.0, ar.term_magnitude);
            double resid_arg = std::abs(ar.value - rhs) / scale;
            double resid_work = std::abs(ar.value.real()) / scale;
            worst_arg = std::max(worst_arg, resid_arg);
            worst_work = std::max(worst_work, resid_work);
            ok = ok && resid_arg <= 1e-10 && resid_work <= 1e-10;
        }
        ck.report(ok, "11 Per-sample identities",
                  "argument-principle residual <= " + fmt(worst_arg) + ", closed-curve work <= " +
                      fmt(worst_work) + " (rel tol 1e-10, " + std::to_string(nseeds) + " seeds)");
    }

    out << (ck.failures == 0 ? "all checks passed\n"
                             : std::to_string(ck.failures) + " check(s) failed\n");
    return ck.failures;
}

} // namespace fluxlab
