#pragma once

#include "normcyc/geometry/hausdorff.hpp"
#include "normcyc/geometry/support_element.hpp"

namespace normcyc {

/// Two eps-smooth bodies K = M_K + eps B, L = M_L + eps B with d_H(K, L) <= delta.
template <typename Scalar>
struct BodyPairContextT {
    ConvexBody<Scalar> K;
    ConvexBody<Scalar> L;
    Scalar epsilon{};
    Scalar delta{};
    ConvexBody<Scalar> core_K;
    ConvexBody<Scalar> core_L;

    /// Throws `Errc::precondition` unless both bodies are structurally eps-smooth.
    static BodyPairContextT make(const ConvexBody<Scalar>& K, const ConvexBody<Scalar>& L, Scalar epsilon,
                                 Scalar delta)
    {
        require(K.dim() == L.dim(), Errc::dimension_mismatch, "pair bodies differ in dimension");
        require(epsilon > 0, Errc::invalid_argument, "epsilon must be positive");
        require(delta >= 0, Errc::invalid_argument, "delta must be nonnegative");
        return {K, L, epsilon, delta, smooth_core(K, epsilon), smooth_core(L, epsilon)};
    }

    /// Same, with delta set to the certified upper bound of the measured Hausdorff distance.
    static BodyPairContextT measured(const ConvexBody<Scalar>& K, const ConvexBody<Scalar>& L, Scalar epsilon,
                                     Scalar tol = Scalar(1e-9))
    {
        const auto h = hausdorff_distance(K, L, tol);
        return make(K, L, epsilon, h.value + h.error_bound);
    }

    int dim() const { return K.dim(); }
    /// delta < eps / (4n), where G preserves orientation.
    bool orientation_regime() const { return delta < epsilon / Scalar(4 * dim()); }
};

using BodyPairContext = BodyPairContextT<double>;

/// Outer unit normal u_K(x) of an eps-smooth body at a boundary point.
template <typename Scalar>
VecN<Scalar> spherical_image(const ConvexBody<Scalar>& K, const VecN<Scalar>& x)
{
    require(K.is_parallel() || K.is_ball(), Errc::precondition, "spherical_image needs an eps-smooth body");
    require(on_boundary(K, x), Errc::precondition, "spherical_image: point is not on the boundary");
    const VecN<Scalar> q = K.is_ball() ? K.center() : metric_projection(K.inner(), x);
    return (x - q).normalized();
}

/// p : bd K -> bd L, the nearest point of bd L.
template <typename Scalar>
VecN<Scalar> boundary_projection_map(const BodyPairContextT<Scalar>& ctx, const VecN<Scalar>& x)
{
    require(ctx.delta < ctx.epsilon / 2, Errc::precondition, "boundary projection needs delta < eps/2");
    require(on_boundary(ctx.K, x), Errc::precondition, "boundary projection: point is not on bd K");
    const VecN<Scalar> outside = metric_projection(ctx.L, x);
    if ((outside - x).squaredNorm() > 0) return outside;
    const VecN<Scalar> q = metric_projection(ctx.core_L, x);
    const Scalar d = (x - q).norm();
    require(d > 0, Errc::precondition, "boundary projection: point lies at depth >= eps inside L");
    return q + (ctx.epsilon / d) * (x - q);
}

/// G : Nor K -> Nor L, (x, u) -> (p(x), u_L(p(x))).
template <typename Scalar>
SupportElementT<Scalar> map_G(const BodyPairContextT<Scalar>& ctx, const SupportElementT<Scalar>& s)
{
    require(ctx.orientation_regime(), Errc::precondition, "map_G needs delta < eps/(4n)");
    require(is_unit(s.u, Scalar(1e-9)), Errc::precondition, "map_G: u is not a unit vector");
    const VecN<Scalar> y = boundary_projection_map(ctx, s.x);
    const VecN<Scalar> q = metric_projection(ctx.core_L, y);
    return {y, (y - q).normalized()};
}

} // namespace normcyc
