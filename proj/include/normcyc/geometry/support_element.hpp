#pragma once

#include "normcyc/geometry/metric.hpp"

namespace normcyc {

/// A point (x, u) of R^n x S^{n-1}.
template <typename Scalar>
struct SupportElementT {
    VecN<Scalar> x;
    VecN<Scalar> u;

    /// Euclidean distance in R^{2n}.
    Scalar distance(const SupportElementT& o) const
    {
        using std::sqrt;
        return sqrt((x - o.x).squaredNorm() + (u - o.u).squaredNorm());
    }
};

using SupportElement = SupportElementT<double>;

template <typename Scalar>
bool is_unit(const VecN<Scalar>& u, Scalar tol = Scalar(1e-12))
{
    using std::abs;
    return abs(u.norm() - Scalar(1)) <= tol;
}

/// Sampled membership test for Nor K: |h_K(u) - x.u| <= tol and d(K, x + tau u) = tau.
template <typename Scalar>
bool in_normal_bundle(const ConvexBody<Scalar>& K, const SupportElementT<Scalar>& s, Scalar tol,
                      Scalar tau = Scalar(1e-3))
{
    using std::abs;
    if (s.x.size() != K.dim() || s.u.size() != K.dim() || !is_unit(s.u)) return false;
    if (abs(support_function(K, s.u) - s.x.dot(s.u)) > tol) return false;
    return abs(distance(K, VecN<Scalar>(s.x + tau * s.u)) - tau) <= tol;
}

} // namespace normcyc
