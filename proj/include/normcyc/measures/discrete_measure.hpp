#pragma once

#include "normcyc/geometry/support_element.hpp"

#include <functional>

namespace normcyc {

struct Atom {
    SupportElement s;
    double w = 0;
};

/// Finitely supported measure on R^n x S^{n-1}.
struct DiscreteMeasure {
    int dim = 2;
    std::vector<Atom> atoms;
    bool is_signed = false;

    double total_mass() const;
    /// Sum of |w|.
    double variation() const;

    /// Throws `Errc::invalid_argument` on non-finite weights, negative weights in an
    /// unsigned measure, non-unit u, or atoms of the wrong dimension.
    void validate() const;

    void add(const SupportElement& s, double w) { atoms.push_back({s, w}); }
};

DiscreteMeasure scaled(const DiscreteMeasure& mu, double c);

/// Sum of c_k mu_k as an atom union (no merging). Signed if any c_k < 0 or any input is signed.
DiscreteMeasure linear_combination(const std::vector<const DiscreteMeasure*>& mus, const std::vector<double>& coeffs);

/// mu restricted to the atoms accepted by `keep`.
DiscreteMeasure restricted(const DiscreteMeasure& mu, const std::function<bool(const SupportElement&)>& keep);

/// Image of mu under (x, u) -> (0, u), scaled by `factor`. With factor 2 applied to
/// Lambda_{n-1} this is the surface area measure S_{n-1}.
DiscreteMeasure u_marginal(const DiscreteMeasure& mu, double factor = 1.0);

/// Merges atoms with bit-identical (x, u); output order is lexicographic in (x, u).
DiscreteMeasure merged(const DiscreteMeasure& mu);

} // namespace normcyc
