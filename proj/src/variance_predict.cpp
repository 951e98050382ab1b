#include "fluxlab/variance_predict.hpp"
#include "fluxlab/curve_analysis.hpp"
#include "fluxlab/errors.hpp"
#include "fluxlab/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace fluxlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void QuadratureSpec::validate() const {
    for (std::size_t i = 1; i < epsilon_schedule.size(); ++i)
        if (!(epsilon_schedule[i] < epsilon_schedule[i - 1]) || epsilon_schedule[i] <= 0.0)
            throw ValidationError("QuadratureSpec: epsilon schedule must be strictly decreasing and positive");
    if (!epsilon_schedule.empty() && epsilon_schedule.front() <= 0.0)
        throw ValidationError("QuadratureSpec: epsilon schedule must be positive");
    if (panels_per_edge < 1) throw ValidationError("QuadratureSpec: panels_per_edge must be >= 1");
}

// ---------------------------------------------------------------------------

double predict_action_cov(const TwoPointModel& model, const Curve& curve1, const Curve& curve2,
                          double R) {
    if (R <= 0.0) throw ValidationError("predict_action_cov: R must be positive");
    return R * c_lambda(model) * signed_length(curve1, curve2);
}

double predict_count_variance(const TwoPointModel& model, const Curve& closed_curve, double R) {
    if (!closed_curve.closed)
        throw ValidationError("predict_count_variance: curve must be closed");
    if (R <= 0.0) throw ValidationError("predict_count_variance: R must be positive");
    return 0.25 * R * c_lambda(model) * curve_length(closed_curve);
}

double predict_work_variance(const TwoPointModel& model, double R) {
    if (R < 1.0) throw ValidationError("predict_work_variance: R must be >= 1");
    return d_lambda(model) * std::log(R);
}

// ---------------------------------------------------------------------------
// Edge-pair machinery for the p.v. double integral.

namespace {

struct Edge {
    Complex a, b;
    Complex u;   // unit tangent
    double len;
};

std::vector<Edge> dilated_edges(const Curve& c, double R) {
    Curve d = map_curve(c, R, 0.0, Complex(0, 0));
    std::vector<Edge> out;
    out.reserve(d.edge_count());
    for (std::size_t i = 0; i < d.edge_count(); ++i) {
        auto [a, b] = d.edge(i);
        double len = std::abs(b - a);
        out.push_back({a, b, (b - a) / len, len});
    }
    return out;
}

double dot(Complex u, Complex v) { return u.real() * v.real() + u.imag() * v.imag(); }
double cross(Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); }

// minimum distance between segments [a1,b1], [a2,b2]
double segment_distance(Complex a1, Complex b1, Complex a2, Complex b2) {
    Complex d1 = b1 - a1, d2 = b2 - a2, r = a1 - a2;
    double A = std::norm(d1), E = std::norm(d2), F = dot(d2, r);
    double s = 0.0, t = 0.0;
    double B = dot(d1, d2), C = dot(d1, r);
    double denom = A * E - B * B;
    if (denom > 1e-30) s = std::clamp((B * F - C * E) / denom, 0.0, 1.0);
    double tn = B * s + F;
    if (tn <= 0.0) {
        t = 0.0;
        s = std::clamp(-C / A, 0.0, 1.0);
    } else if (tn >= E) {
        t = 1.0;
        s = std::clamp((B - C) / A, 0.0, 1.0);
    } else {
        t = tn / E;
    }
    return std::abs((a1 + s * d1) - (a2 + t * d2));
}

struct PairIntegrator {
    const Edge* e1;
    const Edge* e2;
    const KernelEvaluator* K;

    Complex pt1(double s) const { return e1->a + s * e1->u; }
    Complex pt2(double t) const { return e2->a + t * e2->u; }

    // distance bounds of the sub-rectangle [s0,s1]x[t0,t1] in arclength coords
    double cell_dmin(double s0, double s1, double t0, double t1) const {
        return segment_distance(pt1(s0), pt1(s1), pt2(t0), pt2(t1));
    }
    double cell_dmax(double s0, double s1, double t0, double t1) const {
        double m = 0.0;
        for (double s : {s0, s1})
            for (double t : {t0, t1}) m = std::max(m, std::abs(pt1(s) - pt2(t)));
        return m;
    }

    double gl_cell(double s0, double s1, double t0, double t1, double eps, bool indicator,
                   int order) const {
        const double *xs, *ws;
        gauss_legendre(order, xs, ws);
        double hs = 0.5 * (s1 - s0), cs = 0.5 * (s0 + s1);
        double ht = 0.5 * (t1 - t0), ct = 0.5 * (t0 + t1);
        double sum = 0.0;
        for (int i = 0; i < order; ++i) {
            Complex x = pt1(cs + hs * xs[i]);
            double row = 0.0;
            for (int j = 0; j < order; ++j) {
                Complex y = pt2(ct + ht * xs[j]);
                double d = std::abs(x - y);
                if (indicator && d <= eps) continue;
                row += ws[j] * (*K)(d);
            }
            sum += ws[i] * row;
        }
        return sum * hs * ht;
    }

    double adaptive(double s0, double s1, double t0, double t1, double eps, int depth) const {
        double dmax = cell_dmax(s0, s1, t0, t1);
        if (dmax <= eps) return 0.0;  // fully excluded
        double dmin = cell_dmin(s0, s1, t0, t1);
        if (dmin >= K->support()) return 0.0;
        double size = std::max(s1 - s0, t1 - t0);
        bool straddle = dmin < eps;
        if (!straddle) {
            if (size <= 0.5 * dmin || depth >= 40) return gl_cell(s0, s1, t0, t1, eps, false, 6);
        } else {
            if (size <= eps / 8.0 || depth >= 40) return gl_cell(s0, s1, t0, t1, eps, true, 4);
        }
        double sm = 0.5 * (s0 + s1), tm = 0.5 * (t0 + t1);
        return adaptive(s0, sm, t0, tm, eps, depth + 1) + adaptive(s0, sm, tm, t1, eps, depth + 1) +
               adaptive(sm, s1, t0, tm, eps, depth + 1) + adaptive(sm, s1, tm, t1, eps, depth + 1);
    }

    // Collinear pair: |x - y| depends only on the line coordinates, so the
    // double integral collapses to int K(u) w(u) du with w the piecewise
    // linear overlap weight. Exact in the geometry for every epsilon.
    double collinear(double eps) const {
        Complex u = e1->u;
        double a1 = 0.0, b1 = e1->len;
        double t0 = dot(e2->a - e1->a, u);
        double t1 = dot(e2->b - e1->a, u);
        double a2 = std::min(t0, t1), b2 = std::max(t0, t1);
        // w(v) = |[a1,b1] cap ([a2,b2]+v)| + |[a1,b1] cap ([a2,b2]-v)|, v > 0
        auto w = [&](double v) {
            double w1 = std::max(0.0, std::min(b1, b2 + v) - std::max(a1, a2 + v));
            double w2 = std::max(0.0, std::min(b1, b2 - v) - std::max(a1, a2 - v));
            return w1 + w2;
        };
        // breakpoints of w
        std::array<double, 9> bp{};
        int nbp = 0;
        for (double d : {a1 - a2, a1 - b2, b1 - a2, b1 - b2}) {
            bp[nbp++] = std::abs(d);
        }
        bp[nbp++] = 0.0;
        std::sort(bp.begin(), bp.begin() + nbp);
        double hi = std::min(bp[nbp - 1], K->support());
        double total = 0.0;
        double lo = eps;
        for (int i = 0; i < nbp; ++i) {
            double seg_lo = std::max(lo, i == 0 ? 0.0 : bp[i - 1]);
            double seg_hi = std::min(bp[i], hi);
            if (seg_hi <= seg_lo) continue;
            total += integrate_value([&](double v) { return (*K)(v)*w(v); }, seg_lo, seg_hi,
                                     1e-9, 1e-14);
        }
        return total;
    }
};

struct LevelSums {
    std::vector<KahanSum> re;
};

} // namespace

PvResult pv_action_cov_quadrature(const TwoPointModel& model, const Curve& curve1,
                                  const Curve& curve2, double R, const QuadratureSpec& spec) {
    if (R <= 0.0) throw ValidationError("pv_action_cov_quadrature: R must be positive");
    spec.validate();

    std::vector<Edge> E1 = dilated_edges(curve1, R);
    std::vector<Edge> E2 = dilated_edges(curve2, R);
    KernelEvaluator K(model);

    // schedule scale: diagonal of the joint bounding box of the dilated pair
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto* Es : {&E1, &E2})
        for (const Edge& e : *Es)
            for (Complex z : {e.a, e.b}) {
                xlo = std::min(xlo, z.real());
                xhi = std::max(xhi, z.real());
                ylo = std::min(ylo, z.imag());
                yhi = std::max(yhi, z.imag());
            }
    double diam = std::hypot(xhi - xlo, yhi - ylo);

    std::vector<double> eps = spec.epsilon_schedule;
    if (eps.empty())
        for (int k = 6; k <= 14; ++k) eps.push_back(diam * std::pow(2.0, -k));
    const std::size_t nlev = eps.size();

    if (K.support() <= 0.0) {
        PvResult zero;
        zero.levels.assign(nlev, 0.0);
        return zero;  // k = 0 model: kernel vanishes identically
    }

    // spatial prefilter on E2: only pairs within the kernel support interact
    double max_len2 = 0.0;
    for (const Edge& e : E2) max_len2 = std::max(max_len2, e.len);
    double cell = std::max(K.support(), max_len2) * 1.01;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> grid;
    for (std::uint32_t j = 0; j < E2.size(); ++j) {
        const Edge& e = E2[j];
        std::int32_t x0 = std::int32_t(std::floor(std::min(e.a.real(), e.b.real()) / cell));
        std::int32_t x1 = std::int32_t(std::floor(std::max(e.a.real(), e.b.real()) / cell));
        std::int32_t y0 = std::int32_t(std::floor(std::min(e.a.imag(), e.b.imag()) / cell));
        std::int32_t y1 = std::int32_t(std::floor(std::max(e.a.imag(), e.b.imag()) / cell));
        for (std::int32_t x = x0; x <= x1; ++x)
            for (std::int32_t y = y0; y <= y1; ++y)
                grid[(std::uint64_t(std::uint32_t(x)) << 32) | std::uint32_t(y)].push_back(j);
    }

    const double collin_band = 1e-12 * std::max(diam, 1.0);

    // fixed chunk decomposition of the e1 range: reduction order is a fixed
    // tree independent of the thread count
    const std::size_t nchunk = std::min<std::size_t>(E1.size(), 256);
    std::vector<LevelSums> chunk_sums(nchunk);
    for (auto& cs : chunk_sums) cs.re.resize(nlev);

    parallel_for(nchunk, [&](std::size_t ci) {
        std::size_t lo = E1.size() * ci / nchunk;
        std::size_t hi = E1.size() * (ci + 1) / nchunk;
        std::vector<char> seen(E2.size(), 0);
        std::vector<std::uint32_t> cand;
        for (std::size_t i = lo; i < hi; ++i) {
            const Edge& e1 = E1[i];
            cand.clear();
            std::int32_t x0 = std::int32_t(std::floor((std::min(e1.a.real(), e1.b.real()) - K.support()) / cell));
            std::int32_t x1 = std::int32_t(std::floor((std::max(e1.a.real(), e1.b.real()) + K.support()) / cell));
            std::int32_t y0 = std::int32_t(std::floor((std::min(e1.a.imag(), e1.b.imag()) - K.support()) / cell));
            std::int32_t y1 = std::int32_t(std::floor((std::max(e1.a.imag(), e1.b.imag()) + K.support()) / cell));
            for (std::int32_t x = x0; x <= x1; ++x)
                for (std::int32_t y = y0; y <= y1; ++y) {
                    auto it = grid.find((std::uint64_t(std::uint32_t(x)) << 32) | std::uint32_t(y));
                    if (it == grid.end()) continue;
                    for (std::uint32_t j : it->second)
                        if (!seen[j]) {
                            seen[j] = 1;
                            cand.push_back(j);
                        }
                }
            std::sort(cand.begin(), cand.end());
            for (std::uint32_t j : cand) seen[j] = 0;

            for (std::uint32_t j : cand) {
                const Edge& e2 = E2[j];
                double dmin = segment_distance(e1.a, e1.b, e2.a, e2.b);
                if (dmin >= K.support()) continue;
                Complex orient = e1.u * std::conj(e2.u);

                PairIntegrator P{&e1, &e2, &K};
                bool collin = std::abs(cross(e1.u, e2.u)) <= collin_band &&
                              std::abs(cross(e1.u, e2.a - e1.a)) <= collin_band;

                double zeta = 2.0 * (e1.len + e2.len);
                double cached_smooth = 0.0;
                bool have_smooth = false;
                for (std::size_t L = 0; L < nlev; ++L) {
                    double J;
                    if (collin) {
                        J = P.collinear(eps[L]);
                    } else if (eps[L] < dmin && dmin >= zeta) {
                        if (!have_smooth) {
                            // panel tensor Gauss on a well-separated pair
                            int np = spec.panels_per_edge;
                            double sum = 0.0;
                            for (int ps = 0; ps < np; ++ps)
                                for (int pt = 0; pt < np; ++pt)
                                    sum += P.gl_cell(e1.len * ps / np, e1.len * (ps + 1) / np,
                                                     e2.len * pt / np, e2.len * (pt + 1) / np,
                                                     0.0, false, 8);
                            cached_smooth = sum;
                            have_smooth = true;
                        }
                        J = cached_smooth;
                    } else if (eps[L] < dmin) {
                        // close pair, no exclusion boundary in range: adaptive,
                        // result independent of the level
                        if (!have_smooth) {
                            cached_smooth = P.adaptive(0.0, e1.len, 0.0, e2.len, 0.0, 0);
                            have_smooth = true;
                        }
                        J = cached_smooth;
                    } else {
                        J = P.adaptive(0.0, e1.len, 0.0, e2.len, eps[L], 0);
                    }
                    chunk_sums[ci].re[L].add(orient.real() * J);
                }
            }
        }
    });

    PvResult out;
    out.levels.assign(nlev, 0.0);
    for (std::size_t L = 0; L < nlev; ++L) {
        KahanSum s;
        for (std::size_t ci = 0; ci < nchunk; ++ci) s.add(chunk_sums[ci].re[L].value());
        out.levels[L] = s.value();
    }

    // model I(eps) = I0 + alpha eps + beta eps log eps through consecutive
    // level triples; the truncation of the excluded band around the diagonal
    // has exactly this form to O(eps^2)
    if (spec.richardson && nlev >= 3) {
        for (std::size_t L = 2; L < nlev; ++L) {
            double e0 = eps[L - 2], e1v = eps[L - 1], e2v = eps[L];
            double f0 = out.levels[L - 2], f1 = out.levels[L - 1], f2 = out.levels[L];
            // solve [1 e e*ln e] coefficients
            double m[3][4] = {{1, e0, e0 * std::log(e0), f0},
                              {1, e1v, e1v * std::log(e1v), f1},
                              {1, e2v, e2v * std::log(e2v), f2}};
            for (int col = 2; col >= 1; --col) {
                for (int row = 0; row < col; ++row) {
                    double fac = m[row][col] / m[col][col];
                    for (int c2 = 0; c2 <= 3; ++c2) m[row][c2] -= fac * m[col][c2];
                }
            }
            out.extrapolated.push_back(m[0][3] / m[0][0]);
        }
        out.value = out.extrapolated.back();
    } else {
        out.value = out.levels.back();
    }
    out.error_estimate =
        nlev >= 2 ? std::abs(out.levels[nlev - 1] - out.levels[nlev - 2]) : 0.0;

    double guard = spec.abs_tol > 0.0 ? spec.abs_tol : 0.10 * std::max(1.0, std::abs(out.value));
    if (out.error_estimate > guard) {
        std::ostringstream os;
        os << "pv quadrature did not stabilize across the epsilon schedule: levels";
        for (double v : out.levels) os << " " << v;
        throw NumericError(os.str());
    }
    return out;
}

// ---------------------------------------------------------------------------

double work_variance_radial(const TwoPointModel& model, double a) {
    if (a <= 0.0) throw ValidationError("work_variance_radial: a must be positive");
    const double T = model.tail_cutoff;
    if (T <= 0.0) return 0.0;
    KernelEvaluator K(model);
    double up = std::min(a, T);
    // split keeps the log factor mild on each piece
    double mid = 0.5 * up;
    auto f = [&](double r) { return K(r) * std::log(a / r) * r; };
    return -2.0 * (integrate_value(f, 0.0, mid, 1e-10, 1e-14) +
                   integrate_value(f, mid, up, 1e-10, 1e-14));
}

double work_variance_2d(const TwoPointModel& model, double a, const QuadratureSpec& spec,
                        AngularMode mode) {
    if (a <= 0.0) throw ValidationError("work_variance_2d: a must be positive");
    (void)spec;
    const double T = model.tail_cutoff;
    if (T <= 0.0) return 0.0;
    KernelEvaluator K(model);

    if (mode == AngularMode::Analytic) {
        // circle average of log|s - a| over |s| = r is log max(r, a)
        auto f = [&](double r) {
            double ang = 2.0 * std::log(r) - 2.0 * std::log(std::max(r, a));
            return K(r) * ang * r;
        };
        double up = T;
        std::vector<double> cuts{0.0, std::min(a, up), up};
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] <= cuts[i]) continue;
            double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            total += integrate_value(f, cuts[i], mid, 1e-10, 1e-14) +
                     integrate_value(f, mid, cuts[i + 1], 1e-10, 1e-14);
        }
        return total;
    }

    // numeric angular quadrature of Phi(a / (r e^{i th})); the integrand has
    // an integrable log singularity where the circle passes through +-a
    auto angular = [&](double r) {
        auto g = [&](double th) {
            double c = std::cos(th), s = std::sin(th);
            double d1 = std::hypot(r * c - a, r * s);
            double d2 = std::hypot(r * c + a, r * s);
            return 2.0 * std::log(r) - std::log(d1) - std::log(d2);
        };
        // symmetry: integrate upper half twice
        return 2.0 * integrate_value(g, 0.0, kPi, 1e-8, 1e-12);
    };
    auto f = [&](double r) { return K(r) * angular(r) * r / (2.0 * kPi); };
    double total = 0.0;
    std::vector<double> cuts;
    cuts.push_back(0.0);
    if (a < T) {
        cuts.push_back(0.999 * a);
        cuts.push_back(1.001 * a);
    }
    cuts.push_back(T);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] <= cuts[i]) continue;
        total += integrate_value(f, cuts[i], cuts[i + 1], 1e-8, 1e-12);
    }
    return total;
}

} // namespace fluxlab
