#pragma once

#include "normcyc/geometry/polytope.hpp"

#include <memory>

namespace normcyc {

/// Immutable convex body in R^2 or R^3: a vertex polytope, a ball, or the parallel
/// body `inner + rho * B^n`. Copies share state, so bodies are cheap to pass by value
/// and safe to read concurrently.
template <typename Scalar>
class ConvexBody {
public:
    enum class Kind { polytope, ball, parallel };

    static ConvexBody polytope(const std::vector<VecN<Scalar>>& vertices)
    {
        ConvexBody b;
        b.kind_ = Kind::polytope;
        b.poly_ = std::make_shared<const PolytopeData<Scalar>>(build_polytope(vertices));
        b.dim_ = b.poly_->dim;
        return b;
    }

    static ConvexBody ball(const VecN<Scalar>& center, Scalar radius)
    {
        require(center.size() == 2 || center.size() == 3, Errc::dimension_mismatch,
                "ball center must be in R^2 or R^3");
        require(radius > 0, Errc::invalid_argument, "ball radius must be positive");
        ConvexBody b;
        b.kind_ = Kind::ball;
        b.dim_ = static_cast<int>(center.size());
        b.center_ = center;
        b.radius_ = radius;
        return b;
    }

    static ConvexBody parallel(const ConvexBody& inner, Scalar rho)
    {
        require(rho > 0, Errc::invalid_argument, "parallel radius must be positive");
        ConvexBody b;
        b.kind_ = Kind::parallel;
        b.dim_ = inner.dim();
        b.inner_ = std::make_shared<const ConvexBody>(inner);
        b.radius_ = rho;
        return b;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool is_polytope() const { return kind_ == Kind::polytope; }
    bool is_ball() const { return kind_ == Kind::ball; }
    bool is_parallel() const { return kind_ == Kind::parallel; }

    const PolytopeData<Scalar>& polytope_data() const
    {
        require(is_polytope(), Errc::invalid_argument, "body is not a polytope");
        return *poly_;
    }
    const std::vector<VecN<Scalar>>& vertices() const { return polytope_data().vertices; }

    const VecN<Scalar>& center() const
    {
        require(is_ball(), Errc::invalid_argument, "body is not a ball");
        return center_;
    }
    Scalar radius() const
    {
        require(is_ball(), Errc::invalid_argument, "body is not a ball");
        return radius_;
    }

    const ConvexBody& inner() const
    {
        require(is_parallel(), Errc::invalid_argument, "body is not a parallel body");
        return *inner_;
    }
    Scalar rho() const
    {
        require(is_parallel(), Errc::invalid_argument, "body is not a parallel body");
        return radius_;
    }

    bool full_dimensional() const
    {
        switch (kind_) {
        case Kind::polytope: return poly_->full_dimensional();
        case Kind::ball:
        case Kind::parallel: return true;
        }
        return false;
    }

    /// A point of the body used as a reference (vertex mean, center, inner reference).
    VecN<Scalar> reference_point() const
    {
        switch (kind_) {
        case Kind::polytope: return poly_->centroid();
        case Kind::ball: return center_;
        case Kind::parallel: return inner_->reference_point();
        }
        return {};
    }

    /// max |y - c| over the body.
    Scalar radius_about(const VecN<Scalar>& c) const
    {
        switch (kind_) {
        case Kind::polytope: {
            Scalar r = 0;
            for (const auto& v : poly_->vertices) r = std::max(r, (v - c).norm());
            return r;
        }
        case Kind::ball: return (center_ - c).norm() + radius_;
        case Kind::parallel: return inner_->radius_about(c) + radius_;
        }
        return 0;
    }

private:
    ConvexBody() = default;

    Kind kind_ = Kind::polytope;
    int dim_ = 0;
    std::shared_ptr<const PolytopeData<Scalar>> poly_;
    VecN<Scalar> center_;
    Scalar radius_{};
    std::shared_ptr<const ConvexBody> inner_;
};

using Body = ConvexBody<double>;

/// Image of `K` under y -> R y + t. `R` must be orthogonal.
template <typename Scalar>
ConvexBody<Scalar> transformed(const ConvexBody<Scalar>& K, const MatN<Scalar>& R, const VecN<Scalar>& t)
{
    using Kind = typename ConvexBody<Scalar>::Kind;
    require(R.rows() == K.dim() && R.cols() == K.dim() && t.size() == K.dim(), Errc::dimension_mismatch,
            "transform does not match body dimension");
    switch (K.kind()) {
    case Kind::polytope: {
        std::vector<VecN<Scalar>> vs;
        for (const auto& v : K.vertices()) vs.push_back(R * v + t);
        return ConvexBody<Scalar>::polytope(vs);
    }
    case Kind::ball: return ConvexBody<Scalar>::ball(R * K.center() + t, K.radius());
    case Kind::parallel: return ConvexBody<Scalar>::parallel(transformed(K.inner(), R, t), K.rho());
    }
    return K;
}

template <typename Scalar>
ConvexBody<Scalar> translated(const ConvexBody<Scalar>& K, const VecN<Scalar>& t)
{
    return transformed(K, MatN<Scalar>(MatN<Scalar>::Identity(K.dim(), K.dim())), t);
}

/// Rotation about `pivot`: y -> R (y - pivot) + pivot.
template <typename Scalar>
ConvexBody<Scalar> rotated(const ConvexBody<Scalar>& K, const MatN<Scalar>& R, const VecN<Scalar>& pivot)
{
    return transformed(K, R, VecN<Scalar>(pivot - R * pivot));
}

/// Writes K = core + eps * B^n structurally. Accepts Parallel(M, rho) with rho >= eps and
/// Ball(c, r) with r >= eps; anything else is not recognised as eps-smooth.
template <typename Scalar>
ConvexBody<Scalar> smooth_core(const ConvexBody<Scalar>& K, Scalar eps)
{
    const Scalar slack = Scalar(1e-12) * std::max(Scalar(1), eps);
    if (K.is_parallel()) {
        const Scalar rest = K.rho() - eps;
        if (std::abs(rest) <= slack) return K.inner();
        require(rest > 0, Errc::precondition, "body is not eps-smooth: parallel radius below eps");
        return ConvexBody<Scalar>::parallel(K.inner(), rest);
    }
    if (K.is_ball()) {
        const Scalar rest = K.radius() - eps;
        if (std::abs(rest) <= slack) return ConvexBody<Scalar>::polytope({K.center()});
        require(rest > 0, Errc::precondition, "body is not eps-smooth: ball radius below eps");
        return ConvexBody<Scalar>::ball(K.center(), rest);
    }
    throw Error(Errc::precondition, "body is not eps-smooth: polytopes have no eps-smooth form");
}

} // namespace normcyc
