#pragma once

#include "normcyc/measures/sampling.hpp"

namespace normcyc {

/// mu_{K,rho_j} = sum_i rho_j^{n-i} kappa_{n-i} Lambda_i at rho_j = j/n, and its inverse.
struct VandermondeSystem {
    int n = 2;
    std::vector<double> radii;
    /// system(j, i) = rho_j^{n-i} kappa_{n-i}.
    Mat system;
    /// coeffs(i, j) = a_{ij}, so that Lambda_i = sum_j a_{ij} mu_{K,rho_j}.
    Mat coeffs;
};

VandermondeSystem vandermonde_coefficients(int n);

/// Lambda_0..Lambda_{n-1} as signed atom unions sum_j a_{ij} mu_j.
/// Throws `Errc::radii_mismatch` unless mus[j].rho == rho_j for every j.
std::vector<DiscreteMeasure> extract_support_measures(const std::vector<McMeasure>& mus, const VandermondeSystem& sys);

/// Totals sum_j a_{ij} mu_j(Sigma) with their propagated statistical errors sum_j |a_{ij}| err_j.
struct ExtractedTotals {
    std::vector<double> value;
    std::vector<double> stat_error;
};
ExtractedTotals extract_totals(const std::vector<McMeasure>& mus, const VandermondeSystem& sys);

/// Runs the sampler at every rho_j with sub-seeds (seed, j).
std::vector<McMeasure> sample_at_radii(const Body& K, const VandermondeSystem& sys, long samples,
                                       std::uint64_t seed, unsigned threads = 0);

} // namespace normcyc
