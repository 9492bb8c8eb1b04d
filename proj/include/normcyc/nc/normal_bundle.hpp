#pragma once

#include "normcyc/geometry/convex_body.hpp"
#include "normcyc/geometry/support_element.hpp"
#include "normcyc/nc/multivector.hpp"

namespace normcyc {

/// Piece of Nor K over one face F of the polytope core: pairs (y + eps u, u) with y in F
/// and u in the normal cell of F.
///
/// `base` holds the face (one point, an edge, or a facet loop) and `fiber` the cell on
/// the sphere (one normal, the two ends of an arc, or a spherical polygon loop). Both are
/// ordered so that the charts below carry the orienting (n-1)-vector a_K.
/// 2D arcs run clockwise from fiber[0] through `angle` radians; 3D edge arcs rotate
/// fiber[0] about -e (e the direction base[0] -> base[1]). A ball is the single vertex
/// patch of its center with the full circle or sphere as fiber.
struct NormalBundlePatch {
    int dim = 2;
    int face_dim = 0;
    double epsilon = 0;
    std::vector<Vec> base;
    std::vector<Vec> fiber;
    double angle = 0;
};

/// Smooth oriented map from [0, 1]^{n-1} onto part of a patch.
struct PatchChart {
    enum class Kind { segment, arc, triangle, edge_arc, spherical_triangle };
    Kind kind = Kind::segment;
    int dim = 2;
    double epsilon = 0;
    std::array<Vec, 3> p;
    std::array<Vec, 3> n;
    double angle = 0;
};

/// A point of Nor K with the chart's tangent columns (partial derivatives, not normalized).
struct ChartPoint {
    SupportElement s;
    FrameZ<double> frame;
};

/// Patches of Nor K for a full-dimensional polytope, Parallel(polytope, eps) or a ball,
/// n in {2, 3}: 2D vertices then edges, 3D vertices, edges, facets.
/// Throws `degenerate_body` for lower-dimensional polytopes and `precondition` for a
/// parallel body whose core is not a polytope.
std::vector<NormalBundlePatch> normal_bundle(const Body& K);

std::vector<PatchChart> charts(const NormalBundlePatch& patch);

/// Chart value and tangent columns at parameters t (size n-1, inside [0, 1]^{n-1}).
ChartPoint chart_point(const PatchChart& chart, const double* t);

/// <wedge_{n-1}((Pi_1 + rho Pi_2) frame) ^ u, Omega_n>, the orientation determinant.
double orientation_value(const ChartPoint& cp, double rho);

struct QuadratureNode {
    ChartPoint point;
    double weight = 0;
};

/// Composite Gauss-Legendre rule of order 8 with 2^level cells per chart parameter.
/// Triangles use the collapsed map (s, t) = (a (1 - b), a b).
std::vector<QuadratureNode> quadrature_nodes(const NormalBundlePatch& patch, int level);

/// H^{n-1} measure of the patch, by the same rule.
double patch_measure(const NormalBundlePatch& patch, int level = 2);

} // namespace normcyc
