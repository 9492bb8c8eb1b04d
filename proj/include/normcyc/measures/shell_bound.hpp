#pragma once

#include "normcyc/measures/sampling.hpp"

namespace normcyc {

/// Monte Carlo estimates of the three right-hand integrals
///   int_{K^rho cap L^rho} |p_K - p_L|,  int_{K^rho cap L^rho} |u_K - u_L|,  vol(K^rho sym-diff L^rho)
/// over the common box, each with a 3 sigma error bar.
struct ShellBoundTerms {
    double term_p = 0;
    double term_u = 0;
    double term_sym = 0;
    double err_p = 0;
    double err_u = 0;
    double err_sym = 0;

    double sum() const { return term_p + term_u + term_sym; }
    double err() const { return err_p + err_u + err_sym; }
};

/// Uses the box `common_box(K, L, rho)` and the same sample stream as
/// `ShellSampler::make(K, rho, N, seed, common_box(K, L, rho))`, so the estimates refer
/// to exactly the atoms of the coupled Monte Carlo measures.
ShellBoundTerms shell_bound_terms(const Body& K, const Body& L, double rho, long samples, std::uint64_t seed);

} // namespace normcyc
