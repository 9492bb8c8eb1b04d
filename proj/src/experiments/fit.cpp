#include "normcyc/experiments/fit.hpp"

#include "normcyc/common.hpp"

#include <cmath>
#include <limits>

namespace normcyc {

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y)
{
    require(x.size() == y.size(), Errc::invalid_argument, "fit_loglog: column lengths differ");
    require(x.size() >= 3, Errc::precondition, "fit_loglog needs at least three rows");
    LogLogFit f;
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (!(x[k] > 0) || !(y[k] > 0) || !std::isfinite(x[k]) || !std::isfinite(y[k])) {
            f.excluded.push_back(long(k));
            continue;
        }
        lx.push_back(std::log(x[k]));
        ly.push_back(std::log(y[k]));
    }
    f.used = long(lx.size());
    if (f.used < 2) {
        f.slope = f.intercept = f.max_residual = std::numeric_limits<double>::quiet_NaN();
        return f;
    }
    Eigen::MatrixXd A(f.used, 2);
    Eigen::VectorXd b(f.used);
    for (long k = 0; k < f.used; ++k) {
        A(k, 0) = lx[k];
        A(k, 1) = 1;
        b[k] = ly[k];
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(b);
    f.slope = c[0];
    f.intercept = c[1];
    f.max_residual = (A * c - b).cwiseAbs().maxCoeff();
    return f;
}

} // namespace normcyc
