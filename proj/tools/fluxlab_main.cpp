// fluxlab: simulation and numerical-verification lab for charge/flux
// fluctuation statistics of invariant planar point processes.

#include "fluxlab/counterexample.hpp"
#include "fluxlab/curve.hpp"
#include "fluxlab/curve_analysis.hpp"
#include "fluxlab/errors.hpp"
#include "fluxlab/io.hpp"
#include "fluxlab/model.hpp"
#include "fluxlab/monte_carlo.hpp"
#include "fluxlab/numerics.hpp"
#include "fluxlab/parallel.hpp"
#include "fluxlab/sampler.hpp"
#include "fluxlab/variance_predict.hpp"
#include "fluxlab/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

using nlohmann::json;
using namespace fluxlab;

namespace {

constexpr const char* kVersion = "fluxlab 0.1.0";

struct OutputTarget {
    std::string path;  // empty = stdout
    std::ofstream file;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw ValidationError("cannot open output file: " + path);
        }
        return file;
    }
    std::string sibling(const std::string& ext) const {
        if (path.empty()) return "fluxlab_plot" + ext;
        auto dot = path.find_last_of('.');
        return (dot == std::string::npos ? path : path.substr(0, dot)) + ext;
    }
};

std::vector<double> parse_ladder(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    if (out.empty()) throw ValidationError("empty numeric list: " + s);
    return out;
}

// --curve accepts a file path (.json or .csv) or a builtin spec:
//   builtin:circle[:radius]   builtin:square
//   builtin:spiral:eps,k      builtin:nested:eps,k
// circle discretization is scale aware: segments = max(64, ceil(64 r R)).
Curve resolve_curve(const std::string& spec, double R_hint, bool csv_closed) {
    if (spec.rfind("builtin:", 0) == 0) {
        std::string rest = spec.substr(8);
        auto colon = rest.find(':');
        std::string kind = rest.substr(0, colon);
        std::string args = colon == std::string::npos ? "" : rest.substr(colon + 1);
        if (kind == "circle") {
            double r = args.empty() ? 1.0 : std::stod(args);
            int segs = std::max(64, int(std::ceil(64.0 * r * std::max(R_hint, 1.0))));
            return circle_curve({0, 0}, r, segs);
        }
        if (kind == "square")
            return make_polyline({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, true);
        if (kind == "spiral" || kind == "nested") {
            auto comma = args.find(',');
            if (comma == std::string::npos)
                throw ValidationError("builtin:" + kind + " needs eps,k");
            double eps = std::stod(args.substr(0, comma));
            int k = std::stoi(args.substr(comma + 1));
            return kind == "spiral" ? spiral_curve(eps, k, 32)
                                    : nested_circles_curve(eps, k, 64);
        }
        throw ValidationError("unknown builtin curve: " + spec);
    }
    std::ifstream in(spec);
    if (!in) throw ValidationError("cannot open curve file: " + spec);
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
        std::stringstream buf;
        buf << in.rdbuf();
        return curve_from_json(buf.str());
    }
    return curve_from_csv(in, csv_closed);
}

TwoPointModel resolve_model(const std::string& name, double intensity, const std::string& table,
                            const std::string& sidecar) {
    if (name == "tabulated") {
        std::ifstream csv(table);
        if (!csv) throw ValidationError("cannot open table file: " + table);
        std::ifstream sj(sidecar);
        if (!sj) throw ValidationError("cannot open sidecar file: " + sidecar);
        std::stringstream buf;
        buf << sj.rdbuf();
        TabulatedData data = load_tabulated_csv(csv, buf.str());
        return make_tabulated(data);
    }
    return make_model(name, intensity);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{kVersion};
    app.require_subcommand(1);

    // shared flags
    std::string model_name = "ginibre", curve_spec = "builtin:circle", curve2_spec;
    std::string table_file, sidecar_file, out_path, format = "csv", stat_name = "count";
    std::string radii_list, a_list = "2,5,20,100";
    double R = 10.0, intensity = 1.0, band = -1.0, eps = 0.5, abs_tol = -1.0;
    long n = 1000;
    std::uint64_t seed = 1;
    int threads = 0, center_grid = 8, radii_per_center = 8, k_cap = 0, panels = 1;
    long j_cap = 0;
    bool csv_closed = false, fast = false;

    if (const char* env = std::getenv("FLUXLAB_THREADS")) threads = std::atoi(env);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_path, "output file (default stdout)");
        sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "svg+csv"}));
        sub->add_option("--threads", threads, "thread budget (FLUXLAB_THREADS)");
    };

    auto* info = app.add_subcommand("model-info", "analytic constants of a two-point model");
    info->add_option("--model", model_name);
    info->add_option("--intensity", intensity);
    info->add_option("--table", table_file);
    info->add_option("--sidecar", sidecar_file);
    add_common(info);

    auto* sample = app.add_subcommand("sample", "draw one point configuration");
    sample->add_option("--model", model_name);
    sample->add_option("--intensity", intensity);
    sample->add_option("--window", R, "window radius");
    sample->add_option("--seed", seed);
    add_common(sample);

    auto* ahl = app.add_subcommand("ahlfors", "weak regularity constant estimate");
    ahl->add_option("--curve", curve_spec);
    ahl->add_flag("--closed", csv_closed, "treat CSV curve as closed");
    ahl->add_option("--center-grid", center_grid);
    ahl->add_option("--radii-per-center", radii_per_center);
    add_common(ahl);

    auto* sl = app.add_subcommand("signed-length", "signed overlap length of two curves");
    sl->add_option("--curve", curve_spec);
    sl->add_option("--curve2", curve2_spec);
    sl->add_option("--band", band);
    sl->add_flag("--closed", csv_closed);
    add_common(sl);

    auto* pred = app.add_subcommand("predict", "asymptotic variance/covariance predictions");
    pred->add_option("--model", model_name);
    pred->add_option("--intensity", intensity);
    pred->add_option("--curve", curve_spec);
    pred->add_option("--curve2", curve2_spec);
    pred->add_option("--R", R);
    pred->add_option("--radii", radii_list, "comma-separated R ladder");
    add_common(pred);

    auto* pv = app.add_subcommand("pv", "principal-value covariance quadrature");
    pv->add_option("--model", model_name);
    pv->add_option("--intensity", intensity);
    pv->add_option("--curve", curve_spec);
    pv->add_option("--curve2", curve2_spec);
    pv->add_option("--R", R);
    pv->add_option("--abs-tol", abs_tol);
    pv->add_option("--panels", panels);
    add_common(pv);

    auto* mc = app.add_subcommand("mc", "Monte-Carlo statistics over seeds");
    mc->add_option("--model", model_name);
    mc->add_option("--intensity", intensity);
    mc->add_option("--stat", stat_name)
        ->check(CLI::IsMember({"count", "action", "work", "flux", "multi_count"}));
    mc->add_option("--curve", curve_spec);
    mc->add_option("--R", R);
    mc->add_option("--radii", radii_list);
    mc->add_option("--n", n);
    mc->add_option("--seed", seed);
    mc->add_option("--eps", eps, "nested family parameter (multi_count)");
    mc->add_option("--k-cap", k_cap, "nested family depth (multi_count)");
    add_common(mc);

    auto* work = app.add_subcommand("work", "analytic work-variance evaluations");
    work->add_option("--model", model_name);
    work->add_option("--intensity", intensity);
    work->add_option("--a-values", a_list);
    add_common(work);

    auto* cex = app.add_subcommand("counterexample", "nested-disk growth exponent");
    cex->add_option("--eps", eps);
    cex->add_option("--radii", radii_list);
    cex->add_option("--k-cap", k_cap);
    cex->add_option("--j-cap", j_cap);
    add_common(cex);

    auto* ver = app.add_subcommand("verify", "run the full verification suite");
    ver->add_flag("--fast", fast, "reduced Monte-Carlo tier (< 5 min)");
    ver->add_option("--threads", threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    set_thread_budget(threads);
    OutputTarget out{out_path};

    auto config_json = [&](std::initializer_list<std::pair<std::string, json>> kv) {
        json j;
        j["seed"] = seed;
        j["threads"] = thread_budget();
        j["format"] = format;
        for (auto& [k, v] : kv) j[k] = v;
        return j.dump();
    };

    try {
        if (*info) {
            TwoPointModel m = resolve_model(model_name, intensity, table_file, sidecar_file);
            double C = c_lambda(m), D = d_lambda(m), defect = m.sum_rule_defect();
            double hk_resid = std::numeric_limits<double>::quiet_NaN();
            if (std::abs(defect) <= 1e-6) {
                HkIdentity hk = hk_identity_check(m);
                hk_resid = hk.lhs - hk.rhs;
            }
            if (format == "json") {
                json j{{"model", m.name},       {"intensity", m.intensity},
                       {"C", C},                {"D", D},
                       {"sum_rule_defect", defect}, {"hk_residual", hk_resid},
                       {"tail_cutoff", m.tail_cutoff}, {"provisional", m.provisional}};
                out.stream() << j.dump(2) << "\n";
            } else {
                CsvWriter w(out.stream(), kVersion, config_json({{"model", m.name}}));
                w.header_row({"intensity", "C", "D", "sum_rule_defect", "hk_residual"});
                w.row({m.intensity, C, D, defect, hk_resid});
            }
            return 0;
        }

        if (*sample) {
            PointConfig cfg = model_name == "poisson" ? sample_poisson(intensity, R, seed)
                                                      : sample_ginibre(R, seed);
            write_point_config_csv(out.stream(), cfg);
            return 0;
        }

        if (*ahl) {
            Curve c = resolve_curve(curve_spec, 1.0, csv_closed);
            AhlforsReport rep = weak_ahlfors_estimate(c, center_grid, radii_per_center);
            if (format == "json") {
                out.stream() << ahlfors_report_to_json(rep) << "\n";
            } else {
                out.stream() << "sup |nu(D)|/|dD| >= " << rep.sup_ratio << " at center ("
                             << rep.witness_center.real() << "," << rep.witness_center.imag()
                             << ") radius " << rep.witness_radius << "\n";
                CsvWriter w(out.stream(), kVersion, config_json({{"curve", curve_spec}}));
                w.header_row({"sup_ratio", "center_re", "center_im", "radius", "centers", "radii"});
                w.row({rep.sup_ratio, rep.witness_center.real(), rep.witness_center.imag(),
                       rep.witness_radius, double(rep.centers_tested), double(rep.radii_tested)});
            }
            return 0;
        }

        if (*sl) {
            Curve c1 = resolve_curve(curve_spec, 1.0, csv_closed);
            Curve c2 = curve2_spec.empty() ? c1 : resolve_curve(curve2_spec, 1.0, csv_closed);
            double L = signed_length(c1, c2, band);
            out.stream() << "signed length = " << L << "\n";
            CsvWriter w(out.stream(), kVersion,
                        config_json({{"curve", curve_spec}, {"curve2", curve2_spec}}));
            w.header_row({"signed_length"});
            w.row({L});
            return 0;
        }

        if (*pred) {
            TwoPointModel m = resolve_model(model_name, intensity, table_file, sidecar_file);
            std::vector<double> Rs = radii_list.empty() ? std::vector<double>{R}
                                                        : parse_ladder(radii_list);
            CsvWriter w(out.stream(), kVersion,
                        config_json({{"model", m.name}, {"curve", curve_spec}}));
            w.header_row({"R", "action_cov", "count_variance", "work_variance", "rel_err_bound"});
            for (double r : Rs) {
                Curve c1 = resolve_curve(curve_spec, r, csv_closed);
                Curve c2 = curve2_spec.empty() ? c1 : resolve_curve(curve2_spec, r, csv_closed);
                double ac = predict_action_cov(m, c1, c2, r);
                double cv = c1.closed ? predict_count_variance(m, c1, r)
                                      : std::numeric_limits<double>::quiet_NaN();
                double wv = r > 1.0 ? predict_work_variance(m, r)
                                    : std::numeric_limits<double>::quiet_NaN();
                w.row({r, ac, cv, wv, 1e-9});  // moment quadrature tolerance
            }
            return 0;
        }

        if (*pv) {
            TwoPointModel m = resolve_model(model_name, intensity, table_file, sidecar_file);
            Curve c1 = resolve_curve(curve_spec, R, csv_closed);
            Curve c2 = curve2_spec.empty() ? c1 : resolve_curve(curve2_spec, R, csv_closed);
            QuadratureSpec spec;
            spec.abs_tol = abs_tol;
            spec.panels_per_edge = panels;
            PvResult res = pv_action_cov_quadrature(m, c1, c2, R, spec);
            double pred_val = predict_action_cov(m, c1, c2, R);
            CsvWriter w(out.stream(), kVersion,
                        config_json({{"model", m.name}, {"curve", curve_spec}, {"R", R}}));
            w.header_row({"R", "prediction", "quadrature", "error_estimate"});
            w.row({R, pred_val, res.value, res.error_estimate});
            return 0;
        }

        if (*mc) {
            std::vector<double> Rs = radii_list.empty() ? std::vector<double>{R}
                                                        : parse_ladder(radii_list);
            SamplerSpec sampler{model_name, intensity};
            TwoPointModel m = model_name == "poisson" ? make_poisson(intensity) : make_ginibre();
            CsvWriter w(out.stream(), kVersion,
                        config_json({{"model", model_name},
                                     {"stat", stat_name},
                                     {"curve", curve_spec},
                                     {"n", n}}));
            w.header_row({"R", "mean_re", "mean_im", "variance", "stderr_of_variance",
                          "prediction", "n", "seed"});
            std::vector<double> xs, ys;
            for (double r : Rs) {
                Estimate est;
                double prediction = std::numeric_limits<double>::quiet_NaN();
                if (stat_name == "multi_count") {
                    if (k_cap <= 0) throw ValidationError("multi_count needs --k-cap");
                    est = estimate_multi_count(sampler, nested_radii(eps, k_cap), r, n, seed);
                } else {
                    Curve c = resolve_curve(curve_spec, r, csv_closed);
                    Statistic st = stat_name == "count"  ? Statistic::Count
                                   : stat_name == "work" ? Statistic::Work
                                   : stat_name == "flux" ? Statistic::Flux
                                                         : Statistic::Action;
                    est = estimate_statistic(sampler, st, c, r, n, seed);
                    if (st == Statistic::Count && c.closed)
                        prediction = model_name == "poisson"
                                         ? intensity * r * r * std::abs(signed_area(c))
                                         : predict_count_variance(m, c, r);
                    else if (st == Statistic::Work && r > 1.0)
                        prediction = predict_work_variance(m, r);
                    else if ((st == Statistic::Action || st == Statistic::Flux))
                        prediction = predict_action_cov(m, c, c, r);
                }
                w.row({r, est.mean.real(), est.mean.imag(), est.variance,
                       est.stderr_of_variance, prediction, double(est.n_samples),
                       double(est.base_seed)});
                xs.push_back(r);
                ys.push_back(est.variance);
            }
            if (format == "svg+csv" && xs.size() >= 2) {
                LineFit lf = fit_line(xs, ys);
                std::ofstream svg(out.sibling(".svg"));
                write_svg_plot(svg, "variance vs R (" + model_name + "/" + stat_name + ")", "R",
                               "variance", xs, ys, true, lf.slope, lf.intercept);
            }
            return 0;
        }

        if (*work) {
            TwoPointModel m = resolve_model(model_name, intensity, table_file, sidecar_file);
            std::vector<double> as = parse_ladder(a_list);
            CsvWriter w(out.stream(), kVersion, config_json({{"model", m.name}}));
            w.header_row({"a", "radial", "planar_analytic", "planar_numeric", "D_log_a",
                          "cross_check_error"});
            double D = d_lambda(m);
            for (double a : as) {
                double wr = work_variance_radial(m, a);
                double wa = work_variance_2d(m, a, {}, AngularMode::Analytic);
                double wn = work_variance_2d(m, a, {}, AngularMode::Numeric);
                w.row({a, wr, wa, wn, D * std::log(a), std::abs(wn - wr)});
            }
            return 0;
        }

        if (*cex) {
            std::vector<double> Rs =
                radii_list.empty() ? std::vector<double>{100, 200, 400, 800, 1600}
                                   : parse_ladder(radii_list);
            GrowthFit g = growth_exponent(eps, Rs, NestedCaps{k_cap, j_cap});
            CsvWriter w(out.stream(), kVersion,
                        config_json({{"eps", eps}, {"k_cap", k_cap}, {"j_cap", j_cap}}));
            w.header_row({"R", "variance", "rel_err_bound"});
            std::vector<double> lx, ly;
            for (std::size_t i = 0; i < g.radii.size(); ++i) {
                w.row({g.radii[i], g.variances[i], 1e-8});
                lx.push_back(std::log10(g.radii[i]));
                ly.push_back(std::log10(g.variances[i]));
            }
            w.raw_row("# slope," + std::to_string(g.slope));
            w.raw_row("# intercept," + std::to_string(g.intercept));
            w.raw_row("# max_residual," + std::to_string(g.max_residual));
            if (format == "svg+csv") {
                LineFit lf = fit_line(lx, ly);
                std::ofstream svg(out.sibling(".svg"));
                write_svg_plot(svg,
                               "nested-disk variance, slope " + std::to_string(g.slope),
                               "log10 R", "log10 variance", lx, ly, true, lf.slope, lf.intercept);
            }
            return 0;
        }

        if (*ver) {
            int failures = run_verification_suite(std::cout, fast);
            return failures == 0 ? 0 : 1;
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
