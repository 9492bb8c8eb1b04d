#pragma once

#include "normcyc/geometry/convex_body.hpp"

namespace normcyc {

/// One face F of a polytope together with its spherical normal cell N(P, F) cap S^{n-1}.
///
/// `face` lists the vertices of F (one point, the two ends of an edge, or a facet loop).
/// `normal_cell` lists the cell vertices on the sphere: the single outer normal of a
/// facet, the two ends of a normal arc (counter-clockwise from the first in 2D), or the
/// facet normals around a vertex of a 3-polytope in counter-clockwise order.
struct FaceCell {
    int face_dim = 0;
    std::vector<Vec> face;
    std::vector<Vec> normal_cell;
    /// H^i(F).
    double face_measure = 0;
    /// H^{n-1-i}(N(P, F) cap S^{n-1}).
    double normal_measure = 0;
};

/// All faces of dimension 0..n-1 of a full-dimensional polytope, vertices first.
/// Throws `Errc::degenerate_body` for lower-dimensional input.
std::vector<FaceCell> face_decomposition(const Body& P);

/// Signed angle from a to b in the plane, in (-pi, pi].
double planar_angle(const Vec& a, const Vec& b);

/// Area of the spherical polygon with the given counter-clockwise unit vertices, by angle excess.
double spherical_polygon_area(const std::vector<Vec>& corners);

/// Volume (area in 2D) of a full-dimensional polytope.
double polytope_volume(const Body& P);

/// Surface area (perimeter in 2D) of a full-dimensional polytope.
double surface_area(const Body& P);

/// vol(P + rho B^n) from elementary geometry: edge/facet prisms, dihedral wedges and a
/// full ball of radius rho for the vertex pieces.
double parallel_volume(const Body& P, double rho);

} // namespace normcyc
