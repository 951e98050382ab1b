#pragma once

#include <complex>
#include <vector>

namespace fluxlab {

using Complex = std::complex<double>;

// Oriented planar polyline. When closed, the final edge runs from the last
// vertex back to the first (the vertex list does not repeat the start).
struct Curve {
    std::vector<Complex> vertices;
    bool closed = false;

    std::size_t edge_count() const {
        return closed ? vertices.size() : vertices.size() - 1;
    }
    // Endpoints of edge i, i < edge_count().
    std::pair<Complex, Complex> edge(std::size_t i) const {
        std::size_t j = i + 1 == vertices.size() ? (closed ? 0 : i + 1) : i + 1;
        return {vertices[i], vertices[j]};
    }
};

// Validating constructor: >= 2 vertices, consecutive vertices distinct
// (including the wrap-around edge of a closed curve). Throws ValidationError
// naming the offending index.
Curve make_polyline(std::vector<Complex> vertices, bool closed);

// Closed positively oriented polygon inscribed in the circle.
Curve circle_curve(Complex center, double radius, int segments);

// z -> scale * e^{i rotation} * z + translation; optionally reverses the
// traversal order (flipping orientation).
Curve map_curve(const Curve& curve, double scale, double rotation, Complex translation,
                bool reverse = false);

// Inward spiral: turn k runs from radius l_k to l_{k+1} over one revolution,
// l_k = k^{-1-eps}, starting at i*l_1 on the imaginary axis. Open and simple
// (radii strictly decrease along the whole curve).
Curve spiral_curve(double eps, int k_max, int pts_per_turn);

// Open non-simple chain: segment from 0 up to i*l_1, then for each k a full
// positively oriented circle of radius l_k attached at i*l_k followed by the
// segment down to i*l_{k+1}.
Curve nested_circles_curve(double eps, int k_max, int segments);

double curve_length(const Curve& c);
double curve_diameter(const Curve& c);     // bounding-box diagonal
double curve_max_abs(const Curve& c);      // max |z| over vertices
double min_edge_length(const Curve& c);

// Nested-circle radii ladder l_k = k^{-1-eps}, k = 1..k_max.
std::vector<double> nested_radii(double eps, int k_max);

} // namespace fluxlab
