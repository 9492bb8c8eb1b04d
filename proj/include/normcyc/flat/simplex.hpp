#pragma once

#include "normcyc/common.hpp"

#include <array>
#include <limits>

namespace normcyc {

/// Sparse LP column with at most two nonzeros.
template <typename Scalar>
struct LpColumn {
    int nnz = 0;
    std::array<int, 2> row{};
    std::array<Scalar, 2> value{};
};

enum class LpStatus { optimal, unbounded, iteration_limit };

template <typename Scalar>
struct LpResult {
    LpStatus status = LpStatus::iteration_limit;
    Scalar objective{};
    /// Simplex multipliers pi = c_B^T B^{-1}; at optimum pi^T a_j <= c_j for every column.
    VecX<Scalar> duals;
    std::vector<long> basis;
    VecX<Scalar> basic_values;
    long iterations = 0;
};

/// Revised simplex for  min c^T x  s.t.  A x = b, x >= 0, with Bland's rule for both
/// the entering and the leaving variable, so degenerate pivots cannot cycle.
///
/// `lp` supplies the columns: `long columns() const`, `Scalar cost(long j) const` and
/// `LpColumn<Scalar> column(long j) const`. `basis` must be a feasible starting basis
/// (B^{-1} b >= 0). The inverse basis is kept dense and refactored periodically.
template <typename Scalar, typename Lp>
LpResult<Scalar> revised_simplex(const Lp& lp, const VecX<Scalar>& b, std::vector<long> basis,
                                 long max_iterations, Scalar tol = Scalar(1e-11))
{
    const int m = static_cast<int>(b.size());
    require(static_cast<int>(basis.size()) == m, Errc::invalid_argument, "simplex: basis size must match rows");
    const long ncols = lp.columns();

    std::vector<char> is_basic(static_cast<std::size_t>(ncols), 0);
    for (long j : basis) is_basic[j] = 1;

    MatX<Scalar> Binv(m, m);
    VecX<Scalar> xB(m);
    VecX<Scalar> pi(m);

    auto refactor = [&] {
        MatX<Scalar> B = MatX<Scalar>::Zero(m, m);
        for (int r = 0; r < m; ++r) {
            const auto col = lp.column(basis[r]);
            for (int k = 0; k < col.nnz; ++k) B(col.row[k], r) = col.value[k];
        }
        Eigen::FullPivLU<MatX<Scalar>> lu(B);
        require(lu.isInvertible(), Errc::non_convergence, "simplex: basis became singular");
        Binv = lu.inverse();
        xB = Binv * b;
        for (int r = 0; r < m; ++r)
            if (xB[r] < 0 && xB[r] > -tol) xB[r] = 0;
        VecX<Scalar> cB(m);
        for (int r = 0; r < m; ++r) cB[r] = lp.cost(basis[r]);
        pi = Binv.transpose() * cB;
    };
    refactor();
    for (int r = 0; r < m; ++r)
        require(xB[r] >= -tol, Errc::invalid_argument, "simplex: starting basis is infeasible");

    LpResult<Scalar> res;
    VecX<Scalar> d(m);
    for (res.iterations = 0; res.iterations < max_iterations; ++res.iterations) {
        if (res.iterations > 0 && res.iterations % 64 == 0) refactor();

        long enter = -1;
        LpColumn<Scalar> acol;
        for (long j = 0; j < ncols && enter < 0; ++j) {
            if (is_basic[j]) continue;
            const auto col = lp.column(j);
            Scalar rc = lp.cost(j);
            for (int k = 0; k < col.nnz; ++k) rc -= pi[col.row[k]] * col.value[k];
            if (rc < -tol) {
                enter = j;
                acol = col;
            }
        }
        if (enter < 0) {
            res.status = LpStatus::optimal;
            break;
        }

        d.setZero();
        for (int k = 0; k < acol.nnz; ++k) d += Binv.col(acol.row[k]) * acol.value[k];
        Scalar best = std::numeric_limits<Scalar>::infinity();
        for (int r = 0; r < m; ++r)
            if (d[r] > tol) best = std::min(best, xB[r] / d[r]);
        int leave = -1;
        for (int r = 0; r < m; ++r)
            if (d[r] > tol && xB[r] / d[r] <= best + tol && (leave < 0 || basis[r] < basis[leave])) leave = r;
        if (leave < 0) {
            res.status = LpStatus::unbounded;
            return res;
        }

        const Scalar piv = d[leave];
        const Scalar step = std::max(Scalar(0), xB[leave] / piv);
        for (int r = 0; r < m; ++r) xB[r] = std::max(Scalar(0), xB[r] - step * d[r]);
        xB[leave] = step;
        Binv.row(leave) /= piv;
        for (int r = 0; r < m; ++r)
            if (r != leave && d[r] != 0) Binv.row(r) -= d[r] * Binv.row(leave);
        is_basic[basis[leave]] = 0;
        is_basic[enter] = 1;
        basis[leave] = enter;
        VecX<Scalar> cB(m);
        for (int r = 0; r < m; ++r) cB[r] = lp.cost(basis[r]);
        pi = Binv.transpose() * cB;
    }

    refactor();
    res.duals = pi;
    res.basis = basis;
    res.basic_values = xB;
    res.objective = 0;
    for (int r = 0; r < m; ++r) res.objective += lp.cost(basis[r]) * xB[r];
    return res;
}

} // namespace normcyc
