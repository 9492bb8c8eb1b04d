#pragma once

#include "normcyc/geometry/convex_body.hpp"

#include <limits>
#include <optional>

namespace normcyc {

template <typename Scalar>
struct Box {
    VecN<Scalar> lo;
    VecN<Scalar> hi;

    Scalar volume() const { return (hi - lo).prod(); }
    bool contains(const VecN<Scalar>& x) const
    {
        return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
    }
    Box merged(const Box& o) const { return {lo.cwiseMin(o.lo), hi.cwiseMax(o.hi)}; }
    Box inflated(Scalar by) const
    {
        return {(lo.array() - by).matrix(), (hi.array() + by).matrix()};
    }
};

template <typename Scalar>
struct DistanceDirection {
    Scalar distance{};
    /// Present iff `distance > 0`.
    std::optional<VecN<Scalar>> direction;
};

namespace detail {

template <typename Scalar>
void check_dim(const ConvexBody<Scalar>& K, const VecN<Scalar>& x, const char* what)
{
    require(x.size() == K.dim(), Errc::dimension_mismatch, what);
}

template <typename Scalar>
VecN<Scalar> project_segment(const VecN<Scalar>& a, const VecN<Scalar>& b, const VecN<Scalar>& x)
{
    const VecN<Scalar> d = b - a;
    const Scalar len2 = d.squaredNorm();
    if (len2 == Scalar(0)) return a;
    const Scalar t = std::clamp((x - a).dot(d) / len2, Scalar(0), Scalar(1));
    return a + t * d;
}

template <typename Scalar>
Vec2T<Scalar> project_segment2(const Vec2T<Scalar>& a, const Vec2T<Scalar>& b, const Vec2T<Scalar>& x)
{
    const Vec2T<Scalar> d = b - a;
    const Scalar len2 = d.squaredNorm();
    if (len2 == Scalar(0)) return a;
    const Scalar t = std::clamp((x - a).dot(d) / len2, Scalar(0), Scalar(1));
    return a + t * d;
}

/// Nearest point of a counter-clockwise convex polygon (2D coordinates).
template <typename Scalar>
Vec2T<Scalar> project_polygon2(const std::vector<Vec2T<Scalar>>& loop, const Vec2T<Scalar>& x)
{
    const std::size_t m = loop.size();
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i)
        if (cross2(loop[i], loop[(i + 1) % m], x) < 0) inside = false;
    if (inside) return x;
    Vec2T<Scalar> best = loop[0];
    Scalar best_d = std::numeric_limits<Scalar>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2T<Scalar> q = project_segment2(loop[i], loop[(i + 1) % m], x);
        const Scalar d = (q - x).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

template <typename Scalar>
VecN<Scalar> project_facet3(const PolytopeData<Scalar>& P, const Facet<Scalar>& f, const VecN<Scalar>& x)
{
    const VecN<Scalar> y = x - (f.normal.dot(x) - f.offset) * f.normal;
    const std::size_t m = f.loop.size();
    const Vec2T<Scalar> y2(f.e1.dot(y), f.e2.dot(y));
    bool inside = true;
    for (std::size_t i = 0; i < m && inside; ++i) {
        const auto& a = P.vertices[f.loop[i]];
        const auto& b = P.vertices[f.loop[(i + 1) % m]];
        if (cross2(Vec2T<Scalar>(f.e1.dot(a), f.e2.dot(a)), Vec2T<Scalar>(f.e1.dot(b), f.e2.dot(b)), y2) < 0)
            inside = false;
    }
    if (inside) return y;
    VecN<Scalar> best = P.vertices[f.loop[0]];
    Scalar best_d = std::numeric_limits<Scalar>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const VecN<Scalar> q = project_segment(P.vertices[f.loop[i]], P.vertices[f.loop[(i + 1) % m]], x);
        const Scalar d = (q - x).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return best;
}

template <typename Scalar>
VecN<Scalar> project_polytope(const PolytopeData<Scalar>& P, const VecN<Scalar>& x)
{
    if (P.affine_dim == 0) return P.vertices.front();
    if (P.affine_dim == 1) return project_segment(P.vertices[0], P.vertices[1], x);
    if (!P.full_dimensional()) {
        const Vec2T<Scalar> local = P.frame.transpose() * (x - P.origin);
        const Vec2T<Scalar> q = project_polygon2(P.planar_hull, local);
        return P.origin + P.frame * q;
    }

    // The nearest point lies on a facet whose outer side contains x.
    VecN<Scalar> best = x;
    Scalar best_d = std::numeric_limits<Scalar>::infinity();
    bool outside = false;
    for (const auto& f : P.facets) {
        if (f.normal.dot(x) <= f.offset) continue;
        outside = true;
        const VecN<Scalar> q = P.dim == 2
            ? project_segment(P.vertices[f.loop[0]], P.vertices[f.loop[1]], x)
            : project_facet3(P, f, x);
        const Scalar d = (q - x).squaredNorm();
        if (d < best_d) {
            best_d = d;
            best = q;
        }
    }
    return outside ? best : x;
}

} // namespace detail

/// h_K(u) = sup { y . u : y in K }.
template <typename Scalar>
Scalar support_function(const ConvexBody<Scalar>& K, const VecN<Scalar>& u)
{
    using Kind = typename ConvexBody<Scalar>::Kind;
    detail::check_dim(K, u, "support_function: direction dimension does not match body");
    switch (K.kind()) {
    case Kind::polytope: {
        Scalar h = -std::numeric_limits<Scalar>::infinity();
        for (const auto& v : K.vertices()) h = std::max(h, v.dot(u));
        return h;
    }
    case Kind::ball: return K.center().dot(u) + K.radius();
    case Kind::parallel: return support_function(K.inner(), u) + K.rho();
    }
    return 0;
}

/// Nearest point p(K, x). Points of K map to themselves.
template <typename Scalar>
VecN<Scalar> metric_projection(const ConvexBody<Scalar>& K, const VecN<Scalar>& x)
{
    using Kind = typename ConvexBody<Scalar>::Kind;
    detail::check_dim(K, x, "metric_projection: point dimension does not match body");
    switch (K.kind()) {
    case Kind::polytope: return detail::project_polytope(K.polytope_data(), x);
    case Kind::ball: {
        const VecN<Scalar> d = x - K.center();
        const Scalar r = d.norm();
        return r <= K.radius() ? x : VecN<Scalar>(K.center() + (K.radius() / r) * d);
    }
    case Kind::parallel: {
        const VecN<Scalar> q = metric_projection(K.inner(), x);
        const VecN<Scalar> d = x - q;
        const Scalar r = d.norm();
        return r <= K.rho() ? x : VecN<Scalar>(q + (K.rho() / r) * d);
    }
    }
    return x;
}

template <typename Scalar>
DistanceDirection<Scalar> distance_and_direction(const ConvexBody<Scalar>& K, const VecN<Scalar>& x)
{
    const VecN<Scalar> p = metric_projection(K, x);
    DistanceDirection<Scalar> out;
    out.distance = (x - p).norm();
    if (out.distance > 0) out.direction = VecN<Scalar>((x - p) / out.distance);
    return out;
}

template <typename Scalar>
Scalar distance(const ConvexBody<Scalar>& K, const VecN<Scalar>& x)
{
    return (x - metric_projection(K, x)).norm();
}

/// d(K, x) - d(R^n \ K, x): negative inside, positive outside.
template <typename Scalar>
Scalar signed_boundary_distance(const ConvexBody<Scalar>& K, const VecN<Scalar>& x)
{
    using Kind = typename ConvexBody<Scalar>::Kind;
    detail::check_dim(K, x, "signed_boundary_distance: point dimension does not match body");
    switch (K.kind()) {
    case Kind::polytope: {
        const auto& P = K.polytope_data();
        require(P.full_dimensional(), Errc::degenerate_body, "signed distance needs a full-dimensional body");
        Scalar slack = std::numeric_limits<Scalar>::infinity();
        for (const auto& f : P.facets) slack = std::min(slack, f.offset - f.normal.dot(x));
        if (slack >= 0) return -slack;
        return distance(K, x);
    }
    case Kind::ball: return (x - K.center()).norm() - K.radius();
    case Kind::parallel: {
        const auto& M = K.inner();
        const Scalar inner = M.full_dimensional() ? signed_boundary_distance(M, x) : distance(M, x);
        return inner - K.rho();
    }
    }
    return 0;
}

template <typename Scalar>
Box<Scalar> bounding_box(const ConvexBody<Scalar>& K)
{
    using Kind = typename ConvexBody<Scalar>::Kind;
    switch (K.kind()) {
    case Kind::polytope: {
        const auto& vs = K.vertices();
        Box<Scalar> b{vs.front(), vs.front()};
        for (const auto& v : vs) {
            b.lo = b.lo.cwiseMin(v);
            b.hi = b.hi.cwiseMax(v);
        }
        return b;
    }
    case Kind::ball: return Box<Scalar>{K.center(), K.center()}.inflated(K.radius());
    case Kind::parallel: return bounding_box(K.inner()).inflated(K.rho());
    }
    return {};
}

/// max |y - reference_point| over K.
template <typename Scalar>
Scalar circumradius(const ConvexBody<Scalar>& K)
{
    return K.radius_about(K.reference_point());
}

/// Boundary membership: |d*(K, x)| <= 1e-9 (1 + circumradius).
template <typename Scalar>
bool on_boundary(const ConvexBody<Scalar>& K, const VecN<Scalar>& x)
{
    using std::abs;
    return abs(signed_boundary_distance(K, x)) <= Scalar(1e-9) * (Scalar(1) + circumradius(K));
}

} // namespace normcyc
