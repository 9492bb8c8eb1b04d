#include "normcyc/measures/sampling.hpp"

#include <cmath>
#include <thread>

namespace normcyc {

std::uint64_t CounterRng::bits(std::uint64_t seed, std::uint64_t counter)
{
    // Two rounds of the splitmix64 finalizer over (seed, counter).
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (counter + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double CounterRng::uniform(std::uint64_t seed, std::uint64_t counter)
{
    return double(bits(seed, counter) >> 11) * 0x1.0p-53;
}

ShellSampler ShellSampler::make(const Body& K, double rho, long samples, std::uint64_t seed,
                                std::optional<Box<double>> box)
{
    require(rho > 0, Errc::invalid_argument, "shell radius must be positive");
    require(samples >= 1000, Errc::precondition, "shell sampler needs at least 10^3 samples");
    require(K.full_dimensional(), Errc::degenerate_body, "shell sampler needs a full-dimensional body");
    const Box<double> own = bounding_box(K).inflated(rho + 1e-9);
    if (box) {
        require(box->lo.size() == K.dim(), Errc::dimension_mismatch, "sampling box dimension mismatch");
        require(box->contains(own.lo) && box->contains(own.hi), Errc::invalid_argument,
                "sampling box does not contain the parallel body");
    }
    return {K, rho, box.value_or(own), seed, samples};
}

Vec ShellSampler::point(long k) const
{
    const int n = K.dim();
    Vec x(n);
    for (int d = 0; d < n; ++d)
        x[d] = box.lo[d] + (box.hi[d] - box.lo[d]) * CounterRng::uniform(seed, std::uint64_t(k) * n + d);
    return x;
}

McMeasure mc_local_parallel_measure(const ShellSampler& sampler, unsigned threads)
{
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    const long N = sampler.samples;
    const double w = sampler.box.volume() / double(N);

    std::vector<std::vector<Atom>> shards(threads);
    auto work = [&](unsigned t) {
        const long lo = N * t / threads;
        const long hi = N * (t + 1) / threads;
        for (long k = lo; k < hi; ++k) {
            const Vec x = sampler.point(k);
            const Vec p = metric_projection(sampler.K, x);
            const double d = (x - p).norm();
            if (d > 0 && d <= sampler.rho) shards[t].push_back({{p, (x - p) / d}, w});
        }
    };
    if (threads == 1) {
        work(0);
    }
    else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    McMeasure out;
    out.rho = sampler.rho;
    out.measure.dim = sampler.K.dim();
    std::size_t total = 0;
    for (const auto& s : shards) total += s.size();
    out.measure.atoms.reserve(total);
    for (auto& s : shards) out.measure.atoms.insert(out.measure.atoms.end(), s.begin(), s.end());
    out.accepted = static_cast<long>(total);
    require(out.accepted > 0, Errc::precondition, "no sample landed in the shell");
    const double p = double(out.accepted) / double(N);
    out.stat_error = 3 * sampler.box.volume() * std::sqrt(p * (1 - p) / double(N));
    return out;
}

Box<double> common_box(const Body& K, const Body& L, double rho)
{
    return bounding_box(K).merged(bounding_box(L)).inflated(rho + 1e-9);
}

} // namespace normcyc
