#pragma once

#include <vector>

namespace normcyc {

struct LogLogFit {
    double slope = 0;
    double intercept = 0;
    /// Largest |log y - (slope log x + intercept)| over the rows used.
    double max_residual = 0;
    long used = 0;
    /// Rows dropped for a nonpositive x or y.
    std::vector<long> excluded;
};

/// Ordinary least squares of log y on log x. Needs at least three rows; rows with a
/// nonpositive entry are excluded and flagged. With fewer than two usable rows the slope
/// and intercept are NaN.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

} // namespace normcyc
