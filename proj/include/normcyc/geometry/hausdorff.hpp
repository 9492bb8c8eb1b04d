#pragma once

#include "normcyc/geometry/metric.hpp"

#include <array>
#include <queue>

namespace normcyc {

template <typename Scalar>
struct HausdorffResult {
    Scalar value{};
    /// |value - d_H(K, L)| <= error_bound.
    Scalar error_bound{};
    long evaluations = 0;
};

namespace detail {

/// Lipschitz constant of h_K restricted to the unit sphere, centred at `c`.
/// Ball radii and parallel offsets add a constant on the sphere and drop out.
template <typename Scalar>
Scalar sphere_lipschitz(const ConvexBody<Scalar>& K, const VecN<Scalar>& c)
{
    using Kind = typename ConvexBody<Scalar>::Kind;
    switch (K.kind()) {
    case Kind::polytope: return K.radius_about(c);
    case Kind::ball: return (K.center() - c).norm();
    case Kind::parallel: return sphere_lipschitz(K.inner(), c);
    }
    return 0;
}

template <typename Scalar>
struct SphereCell {
    Scalar upper;
    Scalar f;
    std::array<VecN<Scalar>, 3> corners; // 2D: corners[0] = (lo, hi) angles in x, y
    bool operator<(const SphereCell& o) const { return upper < o.upper; }
};

} // namespace detail

/// Certified d_H(K, L) = sup_{|u|=1} |h_K(u) - h_L(u)| by best-first branch and bound on
/// the sphere: angle intervals in 2D, subdivided icosahedron faces in 3D. A cell of
/// angular radius r around its centre u_c is bounded by f(u_c) + Lip * r.
/// Throws `Errc::tolerance_unachievable` when `max_evaluations` runs out first.
template <typename Scalar>
HausdorffResult<Scalar> hausdorff_distance_grid(const ConvexBody<Scalar>& K, const ConvexBody<Scalar>& L, Scalar tol,
                                                long max_evaluations = 4'000'000)
{
    using std::abs;
    using std::acos;
    using std::cos;
    using std::sin;
    require(tol > 0, Errc::invalid_argument, "hausdorff_distance: tol must be positive");
    require(K.dim() == L.dim(), Errc::dimension_mismatch, "hausdorff_distance: bodies differ in dimension");
    const int n = K.dim();
    const VecN<Scalar> c = (K.reference_point() + L.reference_point()) / Scalar(2);
    const Scalar lip = detail::sphere_lipschitz(K, c) + detail::sphere_lipschitz(L, c);
    auto f = [&](const VecN<Scalar>& u) { return abs(support_function(K, u) - support_function(L, u)); };

    HausdorffResult<Scalar> out;
    Scalar best = 0;
    std::priority_queue<detail::SphereCell<Scalar>> heap;

    if (n == 2) {
        const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
        auto push = [&](Scalar a, Scalar b) {
            const Scalar m = (a + b) / 2;
            const Scalar v = f(make_vec<Scalar>({cos(m), sin(m)}));
            ++out.evaluations;
            best = std::max(best, v);
            heap.push({v + lip * (b - a) / 2, v, {make_vec<Scalar>({a, b}), VecN<Scalar>(), VecN<Scalar>()}});
        };
        const int start = 64;
        for (int k = 0; k < start; ++k) push(two_pi * k / start, two_pi * (k + 1) / start);
        while (!heap.empty() && heap.top().upper - best > tol) {
            require(out.evaluations < max_evaluations, Errc::tolerance_unachievable,
                    "hausdorff_distance: evaluation budget exhausted before reaching tol");
            const auto cell = heap.top();
            heap.pop();
            const Scalar a = cell.corners[0][0];
            const Scalar b = cell.corners[0][1];
            push(a, (a + b) / 2);
            push((a + b) / 2, b);
        }
    }
    else {
        const Scalar t = (Scalar(1) + std::sqrt(Scalar(5))) / 2;
        std::vector<VecN<Scalar>> v = {
            make_vec<Scalar>({-1, t, 0}), make_vec<Scalar>({1, t, 0}),   make_vec<Scalar>({-1, -t, 0}),
            make_vec<Scalar>({1, -t, 0}), make_vec<Scalar>({0, -1, t}),  make_vec<Scalar>({0, 1, t}),
            make_vec<Scalar>({0, -1, -t}), make_vec<Scalar>({0, 1, -t}), make_vec<Scalar>({t, 0, -1}),
            make_vec<Scalar>({t, 0, 1}),  make_vec<Scalar>({-t, 0, -1}), make_vec<Scalar>({-t, 0, 1}),
        };
        for (auto& p : v) p.normalize();
        const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                                  {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                                  {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                                  {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
        auto push = [&](const VecN<Scalar>& a, const VecN<Scalar>& b, const VecN<Scalar>& d) {
            const VecN<Scalar> m = (a + b + d).normalized();
            Scalar r = 0;
            for (const auto* p : {&a, &b, &d}) r = std::max(r, acos(std::clamp(m.dot(*p), Scalar(-1), Scalar(1))));
            const Scalar val = f(m);
            ++out.evaluations;
            best = std::max(best, val);
            heap.push({val + lip * r, val, {a, b, d}});
        };
        for (const auto& fc : faces) push(v[fc[0]], v[fc[1]], v[fc[2]]);
        while (!heap.empty() && heap.top().upper - best > tol) {
            require(out.evaluations < max_evaluations, Errc::tolerance_unachievable,
                    "hausdorff_distance: evaluation budget exhausted before reaching tol");
            const auto cell = heap.top();
            heap.pop();
            const auto& [a, b, d] = cell.corners;
            const VecN<Scalar> ab = (a + b).normalized();
            const VecN<Scalar> bd = (b + d).normalized();
            const VecN<Scalar> da = (d + a).normalized();
            push(a, ab, da);
            push(ab, b, bd);
            push(da, bd, d);
            push(ab, bd, da);
        }
    }

    out.value = best;
    out.error_bound = heap.empty() ? Scalar(0) : std::max(Scalar(0), heap.top().upper - best);
    return out;
}

/// d_H(K, L) with error_bound <= tol. Two polytopes (also under a common parallel
/// offset, which leaves d_H unchanged) use the exact vertex formula
/// max( max_{v in K} d(L, v), max_{w in L} d(K, w) ); the error bound is then a
/// rounding allowance. Everything else goes through `hausdorff_distance_grid`.
template <typename Scalar>
HausdorffResult<Scalar> hausdorff_distance(const ConvexBody<Scalar>& K, const ConvexBody<Scalar>& L, Scalar tol,
                                           long max_evaluations = 4'000'000)
{
    require(tol > 0, Errc::invalid_argument, "hausdorff_distance: tol must be positive");
    require(K.dim() == L.dim(), Errc::dimension_mismatch, "hausdorff_distance: bodies differ in dimension");
    const ConvexBody<Scalar>* a = &K;
    const ConvexBody<Scalar>* b = &L;
    while (a->is_parallel() && b->is_parallel() && a->rho() == b->rho()) {
        a = &a->inner();
        b = &b->inner();
    }
    if (!a->is_polytope() || !b->is_polytope()) return hausdorff_distance_grid(K, L, tol, max_evaluations);

    HausdorffResult<Scalar> out;
    for (const auto& v : a->vertices()) out.value = std::max(out.value, distance(*b, v));
    for (const auto& w : b->vertices()) out.value = std::max(out.value, distance(*a, w));
    out.evaluations = static_cast<long>(a->vertices().size() + b->vertices().size());
    const VecN<Scalar> c = a->reference_point();
    out.error_bound = Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
                      (Scalar(1) + a->radius_about(c) + b->radius_about(c));
    return out;
}

} // namespace normcyc
