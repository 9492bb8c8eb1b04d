#include "normcyc/nc/evaluate.hpp"

#include <cmath>
#include <limits>

namespace normcyc {

namespace {

double integrate(const std::vector<NormalBundlePatch>& patches, const DifferentialForm& phi, int level)
{
    double total = 0;
    for (const auto& p : patches) {
        require(p.dim == phi.dim, Errc::dimension_mismatch, "form and body differ in dimension");
        double s = 0;
        for (const auto& q : quadrature_nodes(p, level)) s += q.weight * pair(wedge_columns(q.point.frame), phi(q.point.s));
        total += s;
    }
    return total;
}

} // namespace

NormalCycleValue evaluate_normal_cycle(const std::vector<NormalBundlePatch>& patches, const DifferentialForm& phi,
                                       int level)
{
    require(level >= 0, Errc::invalid_argument, "quadrature level must be nonnegative");
    NormalCycleValue r;
    r.level = level;
    r.value = integrate(patches, phi, level);
    r.err_est = std::abs(r.value - integrate(patches, phi, level > 0 ? level - 1 : 1));
    return r;
}

NormalCycleValue evaluate_normal_cycle(const Body& K, const DifferentialForm& phi, int level)
{
    return evaluate_normal_cycle(normal_bundle(K), phi, level);
}

NormalCycleValue evaluate_normal_cycle_to(const Body& K, const DifferentialForm& phi, double tol, int max_level)
{
    const auto patches = normal_bundle(K);
    double prev = integrate(patches, phi, 0);
    for (int level = 1; level <= max_level; ++level) {
        const double v = integrate(patches, phi, level);
        if (std::abs(v - prev) <= tol) return {v, std::abs(v - prev), level};
        prev = v;
    }
    throw Error(Errc::non_convergence, "normal cycle quadrature did not reach the tolerance");
}

OrientationReport check_orientation(const std::vector<NormalBundlePatch>& patches, int level,
                                    const std::vector<double>& rhos)
{
    OrientationReport r;
    r.min_value = std::numeric_limits<double>::infinity();
    for (const auto& p : patches)
        for (const auto& q : quadrature_nodes(p, level)) {
            double scale = 1;
            for (Eigen::Index k = 0; k < q.point.frame.cols(); ++k) scale *= q.point.frame.col(k).norm();
            for (double rho : rhos) {
                const double v = orientation_value(q.point, rho) / scale;
                ++r.checks;
                if (v > 0) ++r.positive;
                r.min_value = std::min(r.min_value, v);
            }
        }
    return r;
}

} // namespace normcyc
