#include "fluxlab/curve.hpp"
#include "fluxlab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace fluxlab {

Curve make_polyline(std::vector<Complex> vertices, bool closed) {
    if (vertices.size() < 2) throw ValidationError("curve: need at least 2 vertices");
    const std::size_t n = vertices.size();
    const std::size_t edges = closed ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
        const Complex& a = vertices[i];
        const Complex& b = vertices[(i + 1) % n];
        if (a == b) {
            std::ostringstream os;
            os << "curve: zero-length edge at vertex index " << i;
            throw ValidationError(os.str());
        }
    }
    return Curve{std::move(vertices), closed};
}

Curve circle_curve(Complex center, double radius, int segments) {
    if (radius <= 0.0) throw ValidationError("circle_curve: radius must be positive");
    if (segments < 3) throw ValidationError("circle_curve: need at least 3 segments");
    std::vector<Complex> v;
    v.reserve(segments);
    for (int k = 0; k < segments; ++k) {
        double th = 2.0 * std::numbers::pi * double(k) / double(segments);
        v.emplace_back(center + radius * Complex(std::cos(th), std::sin(th)));
    }
    return make_polyline(std::move(v), true);
}

Curve map_curve(const Curve& curve, double scale, double rotation, Complex translation,
                bool reverse) {
    if (scale <= 0.0) throw ValidationError("map_curve: scale must be positive");
    Complex rot = std::polar(scale, rotation);
    std::vector<Complex> v;
    v.reserve(curve.vertices.size());
    for (const Complex& z : curve.vertices) v.push_back(rot * z + translation);
    if (reverse) std::reverse(v.begin(), v.end());
    return make_polyline(std::move(v), curve.closed);
}

std::vector<double> nested_radii(double eps, int k_max) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("nested_radii: eps must lie in (0,1)");
    if (k_max < 1) throw ValidationError("nested_radii: k_max must be >= 1");
    std::vector<double> l(k_max);
    for (int k = 1; k <= k_max; ++k) l[k - 1] = std::pow(double(k), -1.0 - eps);
    return l;
}

Curve spiral_curve(double eps, int k_max, int pts_per_turn) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("spiral_curve: eps must lie in (0,1)");
    if (k_max < 1) throw ValidationError("spiral_curve: k_max must be >= 1");
    if (pts_per_turn < 8) throw ValidationError("spiral_curve: need >= 8 points per turn");
    std::vector<Complex> v;
    v.reserve(std::size_t(k_max) * pts_per_turn + 1);
    const Complex i_unit(0.0, 1.0);
    for (int k = 1; k <= k_max; ++k) {
        double lk = std::pow(double(k), -1.0 - eps);
        double lk1 = std::pow(double(k + 1), -1.0 - eps);
        for (int m = 0; m < pts_per_turn; ++m) {
            double t = double(m) / double(pts_per_turn);
            double r = lk * (1.0 - t) + lk1 * t;
            v.push_back(r * i_unit * std::polar(1.0, 2.0 * std::numbers::pi * t));
        }
    }
    v.push_back(std::pow(double(k_max + 1), -1.0 - eps) * i_unit);
    return make_polyline(std::move(v), false);
}

Curve nested_circles_curve(double eps, int k_max, int segments) {
    if (segments < 3) throw ValidationError("nested_circles_curve: need >= 3 segments");
    std::vector<double> l = nested_radii(eps, k_max + 1);
    std::vector<Complex> v;
    v.reserve(std::size_t(k_max) * (segments + 1) + 2);
    const Complex i_unit(0.0, 1.0);
    v.emplace_back(0.0, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        double lk = l[k - 1];
        // full loop attached at i*l_k; the circle starts at angle pi/2
        for (int m = 0; m < segments; ++m) {
            double th = std::numbers::pi / 2.0 + 2.0 * std::numbers::pi * double(m) / double(segments);
            v.push_back(lk * std::polar(1.0, th));
        }
        v.push_back(lk * i_unit);   // close the loop, then descend
    }
    v.push_back(l[k_max] * i_unit);
    return make_polyline(std::move(v), false);
}

double curve_length(const Curve& c) {
    double len = 0.0;
    for (std::size_t i = 0; i < c.edge_count(); ++i) {
        auto [a, b] = c.edge(i);
        len += std::abs(b - a);
    }
    return len;
}

double curve_diameter(const Curve& c) {
    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const Complex& z : c.vertices) {
        xlo = std::min(xlo, z.real());
        xhi = std::max(xhi, z.real());
        ylo = std::min(ylo, z.imag());
        yhi = std::max(yhi, z.imag());
    }
    return std::hypot(xhi - xlo, yhi - ylo);
}

double curve_max_abs(const Curve& c) {
    double m = 0.0;
    for (const Complex& z : c.vertices) m = std::max(m, std::abs(z));
    return m;
}

double min_edge_length(const Curve& c) {
    double m = 1e300;
    for (std::size_t i = 0; i < c.edge_count(); ++i) {
        auto [a, b] = c.edge(i);
        m = std::min(m, std::abs(b - a));
    }
    return m;
}

} // namespace fluxlab
