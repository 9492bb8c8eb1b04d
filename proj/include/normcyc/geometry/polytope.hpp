#pragma once

#include "normcyc/common.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace normcyc {

template <typename Scalar>
using Vec2T = Eigen::Matrix<Scalar, 2, 1>;

/// A facet of a full-dimensional polytope: the supporting hyperplane
/// `normal . y = offset` and the vertex loop lying on it.
///
/// In the plane the loop is the edge `{a, b}` with `b` following `a` counter-clockwise.
/// In space the loop is counter-clockwise when seen from outside, and `(e1, e2, normal)`
/// is a right-handed orthonormal frame of the facet plane.
template <typename Scalar>
struct Facet {
    VecN<Scalar> normal;
    Scalar offset{};
    std::vector<int> loop;
    VecN<Scalar> e1;
    VecN<Scalar> e2;
};

/// Edge of a 3-polytope. The loop of facet `left` traverses `a -> b`, the loop of
/// `right` traverses `b -> a`.
struct PolytopeEdge {
    int a = -1;
    int b = -1;
    int left = -1;
    int right = -1;
};

/// Vertex/facet description of the convex hull of a finite point set in R^2 or R^3.
///
/// Full-dimensional hulls carry facets, (3D) edges and the cyclic facet order around
/// each vertex. Lower-dimensional hulls keep an orthonormal affine frame and are only
/// usable by the distance and projection routines.
template <typename Scalar>
struct PolytopeData {
    int dim = 0;
    int affine_dim = 0;
    Scalar scale{};
    std::vector<VecN<Scalar>> vertices;
    std::vector<Facet<Scalar>> facets;
    std::vector<PolytopeEdge> edges;
    /// Incident facets of each vertex, ordered counter-clockwise around the outer normal cone.
    std::vector<std::vector<int>> vertex_facets;

    VecN<Scalar> origin;
    MatN<Scalar> frame;
    /// Hull of a planar point set in 3D, in `frame` coordinates, counter-clockwise.
    std::vector<Vec2T<Scalar>> planar_hull;

    bool full_dimensional() const { return affine_dim == dim; }

    VecN<Scalar> centroid() const
    {
        VecN<Scalar> c = VecN<Scalar>::Zero(dim);
        for (const auto& v : vertices) c += v;
        return c / Scalar(vertices.size());
    }
};

namespace detail {

template <typename Scalar>
Scalar cross2(const Vec2T<Scalar>& o, const Vec2T<Scalar>& a, const Vec2T<Scalar>& b)
{
    return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Monotone chain. Returns indices of the strictly convex hull in counter-clockwise
/// order; collinear and duplicate points are dropped.
template <typename Scalar>
std::vector<int> convex_hull_2d(const std::vector<Vec2T<Scalar>>& pts, Scalar tol)
{
    std::vector<int> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int i, int j) {
        if (pts[i].x() != pts[j].x()) return pts[i].x() < pts[j].x();
        return pts[i].y() < pts[j].y();
    });
    if (idx.size() < 3) return idx;

    auto turn_ok = [&](int o, int a, int b) {
        const Scalar la = (pts[a] - pts[o]).norm();
        const Scalar lb = (pts[b] - pts[o]).norm();
        return cross2(pts[o], pts[a], pts[b]) > tol * std::max(la, lb);
    };

    std::vector<int> hull(2 * idx.size());
    std::size_t k = 0;
    for (int i : idx) {
        while (k >= 2 && !turn_ok(hull[k - 2], hull[k - 1], i)) --k;
        hull[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
        const int i = idx[t];
        while (k >= lower && !turn_ok(hull[k - 2], hull[k - 1], i)) --k;
        hull[k++] = i;
    }
    hull.resize(k - 1);
    return hull;
}

/// Rotates a cyclic sequence to start at its smallest entry, so that cyclic orders
/// depend on input indices only and not on coordinates.
inline void canonical_start(std::vector<int>& loop)
{
    if (!loop.empty()) std::rotate(loop.begin(), std::min_element(loop.begin(), loop.end()), loop.end());
}

template <typename Scalar>
VecN<Scalar> any_orthonormal(const VecN<Scalar>& n)
{
    VecN<Scalar> t = VecN<Scalar>::Zero(3);
    int smallest = 0;
    n.cwiseAbs().minCoeff(&smallest);
    t[smallest] = Scalar(1);
    t -= n * n.dot(t);
    return t.normalized();
}

template <typename Scalar>
VecN<Scalar> cross3(const VecN<Scalar>& a, const VecN<Scalar>& b)
{
    return make_vec<Scalar>({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]});
}

template <typename Scalar>
void build_planar(PolytopeData<Scalar>& P, const std::vector<VecN<Scalar>>& pts, Scalar tol)
{
    std::vector<Vec2T<Scalar>> local;
    local.reserve(pts.size());
    for (const auto& p : pts) local.emplace_back(P.frame.transpose() * (p - P.origin));
    const auto hull = convex_hull_2d(local, tol);
    for (int i : hull) {
        P.vertices.push_back(pts[i]);
        P.planar_hull.push_back(local[i]);
    }
}

template <typename Scalar>
void build_full_2d(PolytopeData<Scalar>& P, const std::vector<VecN<Scalar>>& pts, Scalar tol)
{
    std::vector<Vec2T<Scalar>> local;
    for (const auto& p : pts) local.emplace_back(p[0], p[1]);
    auto hull = convex_hull_2d(local, tol);
    canonical_start(hull);
    const int m = static_cast<int>(hull.size());
    for (int i : hull) P.vertices.push_back(pts[i]);
    P.facets.resize(m);
    P.vertex_facets.resize(m);
    for (int i = 0; i < m; ++i) {
        const int j = (i + 1) % m;
        const VecN<Scalar> d = P.vertices[j] - P.vertices[i];
        auto& f = P.facets[i];
        f.normal = make_vec<Scalar>({d[1], -d[0]}).normalized();
        f.offset = f.normal.dot(P.vertices[i]);
        f.loop = {i, j};
        f.e1 = d.normalized();
        P.vertex_facets[j] = {i, j};
    }
}

template <typename Scalar>
void build_full_3d(PolytopeData<Scalar>& P, const std::vector<VecN<Scalar>>& pts, Scalar tol)
{
    const int m = static_cast<int>(pts.size());
    std::vector<Facet<Scalar>> planes;

    auto known = [&](const VecN<Scalar>& n, Scalar off) {
        for (const auto& f : planes)
            if ((f.normal - n).norm() <= Scalar(1e-9) && std::abs(f.offset - off) <= tol) return true;
        return false;
    };

    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                VecN<Scalar> n = cross3<Scalar>(pts[j] - pts[i], pts[k] - pts[i]);
                const Scalar len = n.norm();
                if (len <= tol * P.scale) continue;
                n /= len;
                Scalar lo = 0;
                Scalar hi = 0;
                const Scalar off = n.dot(pts[i]);
                for (int t = 0; t < m; ++t) {
                    const Scalar s = n.dot(pts[t]) - off;
                    lo = std::min(lo, s);
                    hi = std::max(hi, s);
                }
                if (hi <= tol && !known(n, off)) {
                    Facet<Scalar> f;
                    f.normal = n;
                    f.offset = off;
                    planes.push_back(f);
                }
                else if (lo >= -tol && !known(VecN<Scalar>(-n), -off)) {
                    Facet<Scalar> f;
                    f.normal = -n;
                    f.offset = -off;
                    planes.push_back(f);
                }
            }

    // Facet polygons in facet-plane coordinates; collinear points drop out here.
    std::vector<int> used(m, -1);
    for (auto& f : planes) {
        f.e1 = any_orthonormal<Scalar>(f.normal);
        f.e2 = cross3<Scalar>(f.normal, f.e1);
        std::vector<int> on;
        std::vector<Vec2T<Scalar>> local;
        for (int t = 0; t < m; ++t)
            if (std::abs(f.normal.dot(pts[t]) - f.offset) <= tol) {
                on.push_back(t);
                local.emplace_back(f.e1.dot(pts[t]), f.e2.dot(pts[t]));
            }
        const auto hull = convex_hull_2d(local, tol);
        f.loop.clear();
        for (int h : hull) f.loop.push_back(on[h]);
        canonical_start(f.loop);
        for (int v : f.loop) used[v] = 0;
    }

    for (int t = 0; t < m; ++t)
        if (used[t] == 0) {
            used[t] = static_cast<int>(P.vertices.size());
            P.vertices.push_back(pts[t]);
        }
    for (auto& f : planes) {
        for (int& v : f.loop) v = used[v];
        VecN<Scalar> c = VecN<Scalar>::Zero(3);
        for (int v : f.loop) c += P.vertices[v];
        f.offset = f.normal.dot(c / Scalar(f.loop.size()));
    }
    P.facets = std::move(planes);

    std::map<std::pair<int, int>, int> edge_of;
    for (int fi = 0; fi < static_cast<int>(P.facets.size()); ++fi) {
        const auto& loop = P.facets[fi].loop;
        for (std::size_t s = 0; s < loop.size(); ++s) {
            const int a = loop[s];
            const int b = loop[(s + 1) % loop.size()];
            const auto key = std::minmax(a, b);
            auto it = edge_of.find(key);
            if (it == edge_of.end()) {
                edge_of.emplace(key, static_cast<int>(P.edges.size()));
                P.edges.push_back({a, b, fi, -1});
            }
            else {
                P.edges[it->second].right = fi;
            }
        }
    }
    for (const auto& e : P.edges)
        require(e.right >= 0, Errc::degenerate_body, "polytope hull is not a closed surface");

    P.vertex_facets.assign(P.vertices.size(), {});
    for (int fi = 0; fi < static_cast<int>(P.facets.size()); ++fi)
        for (int v : P.facets[fi].loop) P.vertex_facets[v].push_back(fi);
    for (auto& inc : P.vertex_facets) {
        VecN<Scalar> c = VecN<Scalar>::Zero(3);
        for (int fi : inc) c += P.facets[fi].normal;
        c.normalize();
        const VecN<Scalar> e1 = any_orthonormal<Scalar>(c);
        const VecN<Scalar> e2 = cross3<Scalar>(c, e1);
        std::sort(inc.begin(), inc.end(), [&](int a, int b) {
            const auto& na = P.facets[a].normal;
            const auto& nb = P.facets[b].normal;
            return std::atan2(na.dot(e2), na.dot(e1)) < std::atan2(nb.dot(e2), nb.dot(e1));
        });
        canonical_start(inc);
    }
}

} // namespace detail

/// Builds the hull of `points`. Duplicates, interior points and points in the relative
/// interior of faces are removed. Throws `Errc::invalid_argument` on an empty list and
/// `Errc::dimension_mismatch` if the points do not all live in R^2 or all in R^3.
template <typename Scalar>
PolytopeData<Scalar> build_polytope(const std::vector<VecN<Scalar>>& points)
{
    require(!points.empty(), Errc::invalid_argument, "polytope needs at least one vertex");
    const int dim = static_cast<int>(points.front().size());
    require(dim == 2 || dim == 3, Errc::dimension_mismatch, "ambient dimension must be 2 or 3");
    for (const auto& p : points) {
        require(p.size() == dim, Errc::dimension_mismatch, "vertices have mixed dimensions");
        require(p.allFinite(), Errc::invalid_argument, "vertex coordinates must be finite");
    }

    PolytopeData<Scalar> P;
    P.dim = dim;

    VecN<Scalar> mean = VecN<Scalar>::Zero(dim);
    for (const auto& p : points) mean += p;
    mean /= Scalar(points.size());
    Scalar scale = 0;
    for (const auto& p : points) scale = std::max(scale, (p - mean).norm());
    P.scale = scale;

    // Deduplicate at a relative tolerance.
    const Scalar dup_tol = Scalar(1e-12) * std::max(scale, Scalar(1e-300));
    std::vector<VecN<Scalar>> pts;
    for (const auto& p : points) {
        bool dup = false;
        for (const auto& q : pts)
            if ((p - q).norm() <= dup_tol) {
                dup = true;
                break;
            }
        if (!dup) pts.push_back(p);
    }

    MatX<Scalar> centered(dim, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) centered.col(i) = pts[i] - mean;
    Eigen::JacobiSVD<MatX<Scalar>> svd(centered, Eigen::ComputeFullU);
    const auto& sv = svd.singularValues();
    int rank = 0;
    if (pts.size() > 1 && sv.size() > 0 && sv[0] > 0)
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv[i] > Scalar(1e-10) * sv[0]) ++rank;
    P.affine_dim = rank;
    P.origin = mean;
    P.frame = svd.matrixU().leftCols(rank);

    const Scalar tol = Scalar(1e-10) * scale;
    if (rank == dim) {
        if (dim == 2)
            detail::build_full_2d(P, pts, tol);
        else
            detail::build_full_3d(P, pts, tol);
    }
    else if (rank == 2) {
        detail::build_planar(P, pts, tol);
    }
    else if (rank == 1) {
        // Segment: keep the two extreme points along the line.
        const VecN<Scalar> dir = P.frame.col(0);
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
            return dir.dot(a) < dir.dot(b);
        });
        P.vertices = {*lo, *hi};
    }
    else {
        P.vertices = {pts.front()};
    }
    return P;
}

} // namespace normcyc
