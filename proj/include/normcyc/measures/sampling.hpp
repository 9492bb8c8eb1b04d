#pragma once

#include "normcyc/measures/discrete_measure.hpp"

#include <cstdint>
#include <optional>

namespace normcyc {

/// Stateless counter-based generator: the k-th draw of a stream depends only on
/// (seed, k), so any partition of the index range reproduces the same numbers.
struct CounterRng {
    static std::uint64_t bits(std::uint64_t seed, std::uint64_t counter);
    /// Uniform in [0, 1) with 53 random bits.
    static double uniform(std::uint64_t seed, std::uint64_t counter);
};

/// Uniform rejection sampler for the shell K^rho = K_rho \ K.
struct ShellSampler {
    Body K;
    double rho = 0;
    Box<double> box;
    std::uint64_t seed = 0;
    long samples = 0;

    /// Box defaults to the bounding box of K_rho inflated by 1e-9; a supplied box must contain it.
    static ShellSampler make(const Body& K, double rho, long samples, std::uint64_t seed,
                             std::optional<Box<double>> box = std::nullopt);

    /// The k-th uniform point of the box.
    Vec point(long k) const;
};

struct McMeasure {
    double rho = 0;
    DiscreteMeasure measure;
    /// 3 sigma binomial bound on the total mass.
    double stat_error = 0;
    long accepted = 0;
};

/// Atoms (p(K, x_k), u(K, x_k)) for the box samples with 0 < d(K, x_k) <= rho, each of
/// weight vol(box)/N. `threads` = 0 picks the hardware concurrency; output is independent of it.
McMeasure mc_local_parallel_measure(const ShellSampler& sampler, unsigned threads = 0);

/// Common box of K_rho and L_rho.
Box<double> common_box(const Body& K, const Body& L, double rho);

} // namespace normcyc
