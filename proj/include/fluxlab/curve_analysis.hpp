#pragma once

#include "fluxlab/curve.hpp"

namespace fluxlab {

// Complex measure of the curve on a disk: integral of dz over the part of the
// curve inside the open disk D(center, radius). Exact for polylines (sum of
// exit-entry vectors of clipped sub-segments).
Complex nu_disk(const Curve& curve, Complex center, double radius);

struct AhlforsReport {
    double sup_ratio = 0.0;          // |nu(D)| / (2 pi r) at the witness disk
    Complex witness_center{0.0, 0.0};
    double witness_radius = 0.0;
    long centers_tested = 0;
    long radii_tested = 0;
};

// Lower-bound estimate of sup over disks of |nu(D)| / |dD|. Searches centers
// on a center_grid x center_grid lattice covering the bounding box padded by
// the curve diameter, plus every curve vertex; radii run dyadically from
// (min edge length)/4 up to 2*diameter with radii_per_center subdivisions per
// octave.
AhlforsReport weak_ahlfors_estimate(const Curve& curve, int center_grid, int radii_per_center);

// Signed length of the overlap of two polylines: edge pairs that are
// collinear within `band` contribute overlap_length * (+-1) by tangent
// orientation; transversal crossings carry no length and contribute nothing.
// `refine` bounds the collinearity snapping passes for near-degenerate data.
double signed_length(const Curve& curve1, const Curve& curve2, double band = -1.0,
                     int refine = 1);

} // namespace fluxlab
