#pragma once

#include "normcyc/common.hpp"

#include <bit>
#include <cmath>

namespace normcyc {

/// Vector of R^{2n} with coordinates (x_1..x_n, u_1..u_n), n <= 3.
template <typename Scalar>
using VecZ = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 6, 1>;

/// Up to two tangent vectors of R^{2n} as columns.
template <typename Scalar>
using FrameZ = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 6, 2>;

/// Coefficients over the lexicographic basis of m-vectors (or m-covectors) of R^N, N <= 6.
template <typename Scalar>
using CoeffZ = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 20, 1>;

namespace detail {

/// Subsets of {0..N-1} of size m as bitmasks, in lexicographic order of their sorted
/// index lists.
inline std::vector<unsigned> multi_indices(int N, int m)
{
    std::vector<unsigned> out;
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    if (m > N) return out;
    for (;;) {
        unsigned mask = 0;
        for (int i : idx) mask |= 1u << i;
        out.push_back(mask);
        int i = m - 1;
        while (i >= 0 && idx[i] == N - m + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

inline int index_of(const std::vector<unsigned>& basis, unsigned mask)
{
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (basis[k] == mask) return static_cast<int>(k);
    return -1;
}

/// Sign of the permutation sorting the concatenation I, J (disjoint masks).
inline int merge_sign(unsigned I, unsigned J)
{
    int inversions = 0;
    for (int j = 0; j < 32; ++j)
        if (J >> j & 1u) inversions += std::popcount(I >> (j + 1));
    return inversions % 2 ? -1 : 1;
}

} // namespace detail

/// An m-vector of R^N in the lexicographic basis e_{i1} ^ ... ^ e_{im}.
template <typename Scalar>
struct MultiVector {
    int ambient = 0;
    int degree = 0;
    CoeffZ<Scalar> coeffs;

    static MultiVector zero(int ambient, int degree)
    {
        require(ambient >= 1 && ambient <= 6 && degree >= 0 && degree <= ambient, Errc::invalid_argument,
                "multivector: unsupported ambient dimension or degree");
        return {ambient, degree, CoeffZ<Scalar>::Zero(static_cast<Eigen::Index>(binomial(ambient, degree)))};
    }

    /// The basis element e_{i1} ^ ... ^ e_{im}; indices must be increasing.
    static MultiVector basis(int ambient, std::initializer_list<int> indices)
    {
        MultiVector r = zero(ambient, static_cast<int>(indices.size()));
        unsigned mask = 0;
        int last = -1;
        for (int i : indices) {
            require(i > last && i < ambient, Errc::invalid_argument, "multivector: indices must increase");
            mask |= 1u << i;
            last = i;
        }
        r.coeffs[detail::index_of(detail::multi_indices(ambient, r.degree), mask)] = 1;
        return r;
    }

    /// Euclidean norm of the coefficient vector.
    Scalar norm() const { return coeffs.norm(); }
};

/// Exterior product.
template <typename Scalar>
MultiVector<Scalar> wedge(const MultiVector<Scalar>& a, const MultiVector<Scalar>& b)
{
    require(a.ambient == b.ambient, Errc::dimension_mismatch, "wedge: ambient dimensions differ");
    auto r = MultiVector<Scalar>::zero(a.ambient, a.degree + b.degree);
    const auto ia = detail::multi_indices(a.ambient, a.degree);
    const auto ib = detail::multi_indices(a.ambient, b.degree);
    const auto ir = detail::multi_indices(a.ambient, r.degree);
    for (std::size_t p = 0; p < ia.size(); ++p) {
        if (a.coeffs[p] == 0) continue;
        for (std::size_t q = 0; q < ib.size(); ++q) {
            if (b.coeffs[q] == 0 || (ia[p] & ib[q])) continue;
            r.coeffs[detail::index_of(ir, ia[p] | ib[q])] += Scalar(detail::merge_sign(ia[p], ib[q])) * a.coeffs[p] * b.coeffs[q];
        }
    }
    return r;
}

/// The 1-vector v.
template <typename Scalar, typename Derived>
MultiVector<Scalar> as_multivector(const Eigen::MatrixBase<Derived>& v)
{
    auto r = MultiVector<Scalar>::zero(static_cast<int>(v.size()), 1);
    for (Eigen::Index i = 0; i < v.size(); ++i) r.coeffs[i] = v[i];
    return r;
}

/// t_1 ^ ... ^ t_m for the columns of `frame`.
template <typename Scalar>
MultiVector<Scalar> wedge_columns(const FrameZ<Scalar>& frame)
{
    const int N = static_cast<int>(frame.rows());
    const int m = static_cast<int>(frame.cols());
    if (m == 0) {
        auto r = MultiVector<Scalar>::zero(N, 0);
        r.coeffs[0] = 1;
        return r;
    }
    auto r = as_multivector<Scalar>(frame.col(0));
    for (int k = 1; k < m; ++k) r = wedge(r, as_multivector<Scalar>(frame.col(k)));
    return r;
}

/// Dual pairing of an m-vector with m-covector coefficients in the dual basis.
template <typename Scalar, typename Derived>
Scalar pair(const MultiVector<Scalar>& xi, const Eigen::MatrixBase<Derived>& phi)
{
    require(phi.size() == xi.coeffs.size(), Errc::dimension_mismatch, "pair: degree mismatch");
    Scalar s = 0;
    for (Eigen::Index k = 0; k < phi.size(); ++k) s += xi.coeffs[k] * phi[k];
    return s;
}

/// m-th compound of a square matrix: entry (I, J) is the minor on rows I and columns J,
/// so that wedge_columns(A * F) = compound(A, m) * wedge_columns(F).
template <typename Scalar>
MatX<Scalar> compound_matrix(const MatX<Scalar>& A, int m)
{
    const int N = static_cast<int>(A.rows());
    require(A.cols() == N, Errc::invalid_argument, "compound_matrix: matrix must be square");
    const auto basis = detail::multi_indices(N, m);
    const int B = static_cast<int>(basis.size());
    MatX<Scalar> C(B, B);
    std::vector<int> rows, cols;
    for (int I = 0; I < B; ++I) {
        rows.clear();
        for (int i = 0; i < N; ++i)
            if (basis[I] >> i & 1u) rows.push_back(i);
        for (int J = 0; J < B; ++J) {
            cols.clear();
            for (int j = 0; j < N; ++j)
                if (basis[J] >> j & 1u) cols.push_back(j);
            MatX<Scalar> sub(m, m);
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) sub(a, b) = A(rows[a], cols[b]);
            C(I, J) = m == 0 ? Scalar(1) : sub.determinant();
        }
    }
    return C;
}

} // namespace normcyc
