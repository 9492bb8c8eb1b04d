#pragma once

#include "normcyc/nc/forms.hpp"
#include "normcyc/nc/normal_bundle.hpp"

namespace normcyc {

struct NormalCycleValue {
    double value = 0;
    /// |value(level) - value(level - 1)|.
    double err_est = 0;
    int level = 0;
};

/// T_K(phi) = int_{Nor K} <a_K, phi> dH^{n-1}, summed patch by patch in patch order.
NormalCycleValue evaluate_normal_cycle(const Body& K, const DifferentialForm& phi, int level = 3);
NormalCycleValue evaluate_normal_cycle(const std::vector<NormalBundlePatch>& patches, const DifferentialForm& phi,
                                       int level = 3);

/// Raises the level from 1 until err_est <= tol; throws `non_convergence` past `max_level`.
NormalCycleValue evaluate_normal_cycle_to(const Body& K, const DifferentialForm& phi, double tol, int max_level = 8);

struct OrientationReport {
    long checks = 0;
    long positive = 0;
    /// Smallest orientation determinant divided by the product of the tangent lengths.
    double min_value = 0;

    bool all_positive() const { return checks > 0 && positive == checks; }
};

/// The orientation sign rule at every quadrature node of every patch, for each rho.
OrientationReport check_orientation(const std::vector<NormalBundlePatch>& patches, int level,
                                    const std::vector<double>& rhos = {0.1, 1.0, 10.0});

} // namespace normcyc
