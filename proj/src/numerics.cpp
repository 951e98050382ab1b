#include "fluxlab/numerics.hpp"
#include "fluxlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace fluxlab {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod (7,15) pair on [-1,1].

namespace {

const double gk_nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
const double gk_wk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
const double gk_wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct GkEstimate {
    double value;
    double error;
};

GkEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fc = f(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double x = h * gk_nodes[i];
        double f1 = f(c - x);
        double f2 = f(c + x);
        resk += gk_wk[i] * (f1 + f2);
        if (i % 2 == 1) resg += gk_wg[i / 2] * (f1 + f2);
    }
    double value = resk * h;
    double err = std::abs((resk - resg) * h);
    return {value, err};
}

} // namespace

// Globally adaptive: a heap of panels refined worst-error-first until the
// summed error estimate meets the target (or the worst panel bottoms out at
// max_depth / the panel budget).
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0, 0};

    struct Panel {
        double err, a, b, val;
        int depth;
        bool operator<(const Panel& o) const { return err < o.err; }
    };
    std::priority_queue<Panel> active;
    std::vector<Panel> frozen;  // at max depth; cannot be improved further
    long evals = 15;
    GkEstimate e0 = gk15(f, a, b);
    active.push({e0.error, a, b, e0.value, 0});
    double val_sum = e0.value;
    double err_active = e0.error, err_frozen = 0.0;

    const long max_panels = 60000;
    long panels = 1;
    while (panels < max_panels && !active.empty()) {
        double target = std::max(abs_tol, rel_tol * std::max(std::abs(val_sum), 1e-300));
        if (err_active + err_frozen <= target) break;
        Panel p = active.top();
        if (p.depth >= max_depth) break;  // the worst panel is already frozen-deep
        active.pop();
        err_active -= p.err;
        val_sum -= p.val;
        double c = 0.5 * (p.a + p.b);
        for (auto [lo, hi] : {std::pair{p.a, c}, std::pair{c, p.b}}) {
            GkEstimate e = gk15(f, lo, hi);
            evals += 15;
            Panel q{e.error, lo, hi, e.value, p.depth + 1};
            val_sum += q.val;
            if (q.depth >= max_depth) {
                frozen.push_back(q);
                err_frozen += q.err;
            } else {
                err_active += q.err;
                active.push(q);
            }
        }
        ++panels;
    }

    // re-sum panels in one compensated pass
    KahanSum acc;
    std::vector<Panel> rest;
    rest.reserve(active.size() + frozen.size());
    while (!active.empty()) {
        rest.push_back(active.top());
        active.pop();
    }
    for (const Panel& p : frozen) rest.push_back(p);
    double err = 0.0;
    for (const Panel& p : rest) {
        acc.add(p.val);
        err += p.err;
    }
    double value = acc.value();
    double target = std::max(abs_tol, rel_tol * std::max(std::abs(value), 1e-300));
    // the Kronrod estimates are conservative; allow slack before failing
    if (err > 50.0 * target && err > 1e-14 * std::abs(value) + abs_tol) {
        std::ostringstream os;
        os << "quadrature did not converge: achieved error " << err << " on [" << a << "," << b
           << "], requested " << target;
        throw NumericError(os.str());
    }
    return {value, err, evals};
}

double integrate_value(const std::function<double(double)>& f, double a, double b,
                       double rel_tol, double abs_tol) {
    return integrate(f, a, b, rel_tol, abs_tol).value;
}

// ---------------------------------------------------------------------------
// Gauss-Legendre node tables.

namespace {
const double gl4_x[] = {0.339981043584856, 0.861136311594053};
const double gl4_w[] = {0.652145154862546, 0.347854845137454};
const double gl6_x[] = {0.238619186083197, 0.661209386466265, 0.932469514203152};
const double gl6_w[] = {0.467913934572691, 0.360761573048139, 0.171324492379170};
const double gl8_x[] = {0.183434642495650, 0.525532409916329, 0.796666477413627,
                        0.960289856497536};
const double gl8_w[] = {0.362683783378362, 0.313706645877887, 0.222381034453374,
                        0.101228536290376};
const double gl12_x[] = {0.125233408511469, 0.367831498998180, 0.587317954286617,
                         0.769902674194305, 0.904117256370475, 0.981560634246719};
const double gl12_w[] = {0.249147045813403, 0.233492536538355, 0.203167426723066,
                         0.160078328543346, 0.106939325995318, 0.047175336386512};
const double gl16_x[] = {0.095012509837637, 0.281603550779259, 0.458016777657227,
                         0.617876244402644, 0.755404408355003, 0.865631202387832,
                         0.944575023073233, 0.989400934991650};
const double gl16_w[] = {0.189450610455068, 0.182603415044924, 0.169156519395003,
                         0.149595988816577, 0.124628971255534, 0.095158511682493,
                         0.062253523938648, 0.027152459411754};

// expand half tables into full symmetric node lists on demand
struct GlFull {
    std::vector<double> x, w;
};
GlFull expand(const double* hx, const double* hw, int half) {
    GlFull g;
    for (int i = half - 1; i >= 0; --i) {
        g.x.push_back(-hx[i]);
        g.w.push_back(hw[i]);
    }
    for (int i = 0; i < half; ++i) {
        g.x.push_back(hx[i]);
        g.w.push_back(hw[i]);
    }
    return g;
}
const GlFull gl4 = expand(gl4_x, gl4_w, 2);
const GlFull gl6 = expand(gl6_x, gl6_w, 3);
const GlFull gl8 = expand(gl8_x, gl8_w, 4);
const GlFull gl12 = expand(gl12_x, gl12_w, 6);
const GlFull gl16 = expand(gl16_x, gl16_w, 8);
} // namespace

void gauss_legendre(int n, const double*& nodes, const double*& weights) {
    const GlFull* g = nullptr;
    switch (n) {
    case 4: g = &gl4; break;
    case 6: g = &gl6; break;
    case 8: g = &gl8; break;
    case 12: g = &gl12; break;
    case 16: g = &gl16; break;
    default: throw ValidationError("gauss_legendre: unsupported order");
    }
    nodes = g->x.data();
    weights = g->w.data();
}

// ---------------------------------------------------------------------------
// Regularized incomplete gamma, series / continued-fraction split at x = a+1.

namespace {

double gamma_p_series(double a, double x) {
    // P(a,x) = x^a e^-x / Gamma(a+1) * sum_{n>=0} x^n / ((a+1)...(a+n))
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * 1e-16) {
            return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericError("gamma_p: series did not converge");
}

double gamma_q_cf(double a, double x) {
    // Q(a,x) = x^a e^-x / Gamma(a) * 1/(x+1-a- 1*(1-a)/(x+3-a- ...)), Lentz.
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 20000; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) {
            return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
        }
    }
    throw NumericError("gamma_q: continued fraction did not converge");
}

} // namespace

double gamma_p(double a, double x) {
    if (a <= 0.0) throw ValidationError("gamma_p: a must be positive");
    if (x < 0.0) throw ValidationError("gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (a <= 0.0) throw ValidationError("gamma_q: a must be positive");
    if (x < 0.0) throw ValidationError("gamma_q: x must be nonnegative");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

// ---------------------------------------------------------------------------
// Exponential integral E1.

double exp_int_e1(double x) {
    if (x <= 0.0) throw ValidationError("exp_int_e1: argument must be positive");
    if (x > 700.0) return 0.0;
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x + sum (-1)^{n+1} x^n / (n n!)
        const double euler = 0.57721566490153286;
        double sum = 0.0;
        double term = 1.0;
        for (int n = 1; n <= 40; ++n) {
            term *= -x / n;
            double add = -term / n;
            sum += add;
            if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum))) break;
        }
        return -euler - std::log(x) + sum;
    }
    // Lentz continued fraction: E1 = e^-x / (x + 1/(1 + 1/(x + 2/(1 + ...))))
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -double(i) * double(i);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-x);
    }
    throw NumericError("exp_int_e1: continued fraction did not converge");
}

// ---------------------------------------------------------------------------
// PCHIP (Fritsch-Carlson) monotone cubic interpolation.

PchipInterpolant::PchipInterpolant(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const size_t n = x_.size();
    if (n != y_.size() || n < 2) throw ValidationError("pchip: need two matched columns");
    for (size_t i = 1; i < n; ++i)
        if (!(x_[i] > x_[i - 1])) throw ValidationError("pchip: abscissae must be strictly increasing");

    std::vector<double> h(n - 1), delta(n - 1);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        delta[i] = (y_[i + 1] - y_[i]) / h[i];
    }
    slope_.assign(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] > 0.0) {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            slope_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::abs(s) > 3.0 * std::abs(d0)) return 3.0 * d0;
        return s;
    };
    if (n == 2) {
        slope_[0] = slope_[1] = delta[0];
    } else {
        slope_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
        slope_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }
}

double PchipInterpolant::operator()(double t) const {
    if (x_.empty()) return 0.0;
    if (t > x_.back()) return 0.0;       // tabulated data vanishes past the grid
    if (t <= x_.front()) return y_.front();
    auto it = std::upper_bound(x_.begin(), x_.end(), t);
    size_t i = size_t(it - x_.begin()) - 1;
    double h = x_[i + 1] - x_[i];
    double s = (t - x_[i]) / h;
    double s2 = s * s, s3 = s2 * s;
    double h00 = 2 * s3 - 3 * s2 + 1;
    double h10 = s3 - 2 * s2 + s;
    double h01 = -2 * s3 + 3 * s2;
    double h11 = s3 - s2;
    return h00 * y_[i] + h10 * h * slope_[i] + h01 * y_[i + 1] + h11 * h * slope_[i + 1];
}

UniformCubicTable::UniformCubicTable(double x0, double dx, std::vector<double> y)
    : x0_(x0), dx_(dx), y_(std::move(y)) {
    const size_t n = y_.size();
    if (n < 4 || dx_ <= 0.0) throw ValidationError("cubic table: need >=4 uniform samples");
    d_.assign(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) d_[i] = 0.5 * (y_[i + 1] - y_[i - 1]);
    // second-order one-sided end slopes
    d_[0] = -1.5 * y_[0] + 2.0 * y_[1] - 0.5 * y_[2];
    d_[n - 1] = 1.5 * y_[n - 1] - 2.0 * y_[n - 2] + 0.5 * y_[n - 3];
}

double UniformCubicTable::operator()(double t) const {
    double u = (t - x0_) / dx_;
    if (u <= 0.0) return y_.front();
    size_t n = y_.size();
    if (u >= double(n - 1)) return y_.back();
    size_t i = size_t(u);
    double s = u - double(i);
    double s2 = s * s, s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * y_[i] + (s3 - 2 * s2 + s) * d_[i] +
           (-2 * s3 + 3 * s2) * y_[i + 1] + (s3 - s2) * d_[i + 1];
}

// ---------------------------------------------------------------------------

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw ValidationError("fit_line: need >=2 points");
    double n = double(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw ValidationError("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (size_t i = 0; i < x.size(); ++i)
        fit.max_residual = std::max(fit.max_residual, std::abs(y[i] - fit.slope * x[i] - fit.intercept));
    return fit;
}

} // namespace fluxlab
