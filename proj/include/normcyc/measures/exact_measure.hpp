#pragma once

#include "normcyc/measures/discrete_measure.hpp"
#include "normcyc/measures/face_decomposition.hpp"

namespace normcyc {

struct ExactMeasure {
    DiscreteMeasure measure;
    /// d_bL(measure, true Lambda_i) <= bound.
    double bound = 0;
};

/// Quadrature discretization of Lambda_i(P, .). Each i-face F is split into pieces of
/// diameter <= h/sqrt(2), and so is its normal cell; every product piece becomes one atom
/// at its centre pair carrying H^i x H^{n-1-i} / ((n-i) kappa_{n-i}). Every point of a
/// piece lies within h of the atom, hence bound = h * total mass.
/// Throws `Errc::index_out_of_range` unless 0 <= i <= n-1, `Errc::invalid_argument` if h <= 0.
ExactMeasure exact_support_measure(const Body& P, int i, double h);

/// Lambda_i(P, Sigma) in closed form.
double intrinsic_volume(const Body& P, int i);

/// mu_{P,rho}(Sigma) = vol(P + rho B) - vol(P) from the face decomposition.
double local_parallel_volume(const Body& P, double rho);

/// Factor c with Theta_i = c Lambda_i, from n kappa_{n-i} Lambda_i = binom(n, i) Theta_i.
double theta_factor(int n, int i);

DiscreteMeasure theta_from_lambda(const DiscreteMeasure& lambda, int i);

} // namespace normcyc
