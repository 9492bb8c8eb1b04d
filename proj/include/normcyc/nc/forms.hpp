#pragma once

#include "normcyc/geometry/support_element.hpp"
#include "normcyc/nc/multivector.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>

namespace normcyc {

/// Polynomial in the coordinates z = (x_1..x_n, u_1..u_n) of R^{2n}.
struct Polynomial {
    struct Term {
        double c = 0;
        std::array<int, 6> e{};
    };
    int vars = 4;
    std::vector<Term> terms;

    double operator()(const VecZ<double>& z) const;
    Polynomial derivative(int j) const;
    int degree() const;
    /// sup over the box |z_j| <= r_j, bounded term by term.
    double sup_bound(const std::vector<double>& r) const;
    /// Euclidean norm bound of the gradient over the same box.
    double gradient_bound(const std::vector<double>& r) const;

    /// All monomials of total degree <= `degree` with coefficients uniform in [-1, 1],
    /// drawn from the counter stream of `seed`.
    static Polynomial random(int vars, int degree, std::uint64_t seed);
};

/// (x, u) as one vector of R^{2n}.
VecZ<double> stacked(const SupportElement& s);

/// Differential (n-1)-form on R^{2n} given by its coefficient map in the basis dual to
/// the lexicographic (n-1)-vectors, with sup and Lipschitz bounds declared on
/// M = [-R, R]^n x [-1, 1]^n.
struct DifferentialForm {
    std::string name;
    int dim = 2;
    std::function<CoeffZ<double>(const SupportElement&)> coeffs;
    double region_radius = 2;
    double sup_bound = 0;
    double lipschitz_bound = 0;

    int degree() const { return dim - 1; }
    long size() const { return binomial(2 * dim, dim - 1); }
    CoeffZ<double> operator()(const SupportElement& s) const { return coeffs(s); }
};

/// The zero (n-1)-form.
DifferentialForm zero_form(int dim);

/// u_2 dx_1 - u_1 dx_2: integrates to the perimeter.
DifferentialForm perimeter2d();

/// u_2 du_1 - u_1 du_2: integrates to the total turning.
DifferentialForm turning2d();

/// Random form whose coefficients are polynomials of degree <= 3 with coefficients in
/// [-1, 1]; the bounds are certified on M = [-R, R]^n x [-1, 1]^n.
DifferentialForm random_polynomial_form(int dim, std::uint64_t seed, double region_radius = 2);

/// Catalog lookup: "perimeter2d", "turning2d", "poly:<seed>" (any dim), "zero".
DifferentialForm form_by_name(const std::string& name, int dim = 2);

/// df for a polynomial f on R^4 (n = 2).
DifferentialForm exact_form(const Polynomial& f);

/// a * phi + b * psi.
DifferentialForm combination(double a, const DifferentialForm& phi, double b, const DifferentialForm& psi);

/// g^* phi for the rigid motion g(x, u) = (R x + t, R u).
DifferentialForm pullback(const DifferentialForm& phi, const Mat& R, const Vec& t);

} // namespace normcyc
