#include "normcyc/measures/shell_bound.hpp"

#include <cmath>

namespace normcyc {

namespace {

struct Moments {
    double s1 = 0;
    double s2 = 0;
    void add(double v)
    {
        s1 += v;
        s2 += v * v;
    }
    /// (estimate, 3 sigma) of vol * E[v].
    std::pair<double, double> finish(double vol, long N) const
    {
        const double mean = s1 / N;
        const double var = std::max(0.0, s2 / N - mean * mean);
        return {vol * mean, 3 * vol * std::sqrt(var / N)};
    }
};

} // namespace

ShellBoundTerms shell_bound_terms(const Body& K, const Body& L, double rho, long samples, std::uint64_t seed)
{
    require(samples >= 10000, Errc::precondition, "shell_bound_terms needs at least 10^4 samples");
    require(K.dim() == L.dim(), Errc::dimension_mismatch, "bodies differ in dimension");
    const auto sampler = ShellSampler::make(K, rho, samples, seed, common_box(K, L, rho));
    Moments mp, mu, ms;
    for (long k = 0; k < samples; ++k) {
        const Vec x = sampler.point(k);
        const Vec pk = metric_projection(K, x);
        const Vec pl = metric_projection(L, x);
        const double dk = (x - pk).norm();
        const double dl = (x - pl).norm();
        const bool in_k = dk > 0 && dk <= rho;
        const bool in_l = dl > 0 && dl <= rho;
        if (in_k && in_l) {
            mp.add((pk - pl).norm());
            mu.add(((x - pk) / dk - (x - pl) / dl).norm());
            ms.add(0);
        }
        else {
            mp.add(0);
            mu.add(0);
            ms.add(in_k != in_l ? 1.0 : 0.0);
        }
    }
    const double vol = sampler.box.volume();
    ShellBoundTerms t;
    std::tie(t.term_p, t.err_p) = mp.finish(vol, samples);
    std::tie(t.term_u, t.err_u) = mu.finish(vol, samples);
    std::tie(t.term_sym, t.err_sym) = ms.finish(vol, samples);
    return t;
}

} // namespace normcyc
