#include "normcyc/measures/vandermonde.hpp"

#include <cmath>

namespace normcyc {

namespace {

void check_radii(const std::vector<McMeasure>& mus, const VandermondeSystem& sys)
{
    require(static_cast<int>(mus.size()) == sys.n, Errc::radii_mismatch, "need one measure per extraction radius");
    for (int j = 0; j < sys.n; ++j)
        require(std::abs(mus[j].rho - sys.radii[j]) <= 1e-12, Errc::radii_mismatch,
                "measure radius does not match the extraction radius");
}

} // namespace

VandermondeSystem vandermonde_coefficients(int n)
{
    require(n == 2 || n == 3, Errc::dimension_mismatch, "extraction is implemented for n = 2, 3");
    using LMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    LMat A(n, n);
    VandermondeSystem sys;
    sys.n = n;
    for (int j = 0; j < n; ++j) {
        const long double rho = (long double)(j + 1) / n;
        sys.radii.push_back(double(rho));
        for (int i = 0; i < n; ++i) A(j, i) = std::pow(rho, n - i) * unit_ball_volume<long double>(n - i);
    }
    const LMat inv = A.fullPivLu().inverse();
    sys.system = A.cast<double>();
    sys.coeffs = inv.cast<double>();
    return sys;
}

std::vector<DiscreteMeasure> extract_support_measures(const std::vector<McMeasure>& mus, const VandermondeSystem& sys)
{
    check_radii(mus, sys);
    std::vector<const DiscreteMeasure*> parts;
    for (const auto& m : mus) parts.push_back(&m.measure);
    std::vector<DiscreteMeasure> out;
    for (int i = 0; i < sys.n; ++i) {
        std::vector<double> c(sys.n);
        for (int j = 0; j < sys.n; ++j) c[j] = sys.coeffs(i, j);
        out.push_back(linear_combination(parts, c));
        out.back().is_signed = true;
    }
    return out;
}

ExtractedTotals extract_totals(const std::vector<McMeasure>& mus, const VandermondeSystem& sys)
{
    check_radii(mus, sys);
    ExtractedTotals t;
    for (int i = 0; i < sys.n; ++i) {
        double v = 0;
        double e = 0;
        for (int j = 0; j < sys.n; ++j) {
            v += sys.coeffs(i, j) * mus[j].measure.total_mass();
            e += std::abs(sys.coeffs(i, j)) * mus[j].stat_error;
        }
        t.value.push_back(v);
        t.stat_error.push_back(e);
    }
    return t;
}

std::vector<McMeasure> sample_at_radii(const Body& K, const VandermondeSystem& sys, long samples,
                                       std::uint64_t seed, unsigned threads)
{
    std::vector<McMeasure> out;
    for (int j = 0; j < sys.n; ++j) {
        const auto sampler = ShellSampler::make(K, sys.radii[j], samples, CounterRng::bits(seed, std::uint64_t(j)));
        out.push_back(mc_local_parallel_measure(sampler, threads));
    }
    return out;
}

} // namespace normcyc
