#pragma once

#include "normcyc/measures/discrete_measure.hpp"

namespace normcyc {

/// Signed difference of two discrete measures on a common atom set. Distances between
/// atoms are Euclidean in R^{2n}.
struct DblInstance {
    int dim = 2;
    std::vector<SupportElement> atoms;
    std::vector<double> weights;

    long size() const { return static_cast<long>(atoms.size()); }
    double distance(long k, long l) const { return atoms[k].distance(atoms[l]); }

    /// Union support of mu and nu with net weights mu - nu. Coincident atoms are merged
    /// and zero weights dropped; at least one atom is always kept.
    static DblInstance from_measures(const DiscreteMeasure& mu, const DiscreteMeasure& nu);
    /// Same for a single signed measure.
    static DblInstance from_signed(const DiscreteMeasure& mu);
};

/// Unit of flow in the primal solution; -1 denotes the reservoir.
struct FlowArc {
    long from = -1;
    long to = -1;
    double amount = 0;
};

struct DblCertificate {
    double value = 0;
    /// Test function values f_k at the atoms.
    std::vector<double> witness;
    /// Largest violation of |f_k| <= 1 and |f_k - f_l| <= d(s_k, s_l).
    double max_violation = 0;
    /// |value - sum_k w_k f_k|.
    double objective_residual = 0;
    /// primal_cost - sum_k w_k f_k (flow solver only).
    double duality_gap = 0;
    double primal_cost = 0;
    /// Largest node imbalance of the primal flow (flow solver only).
    double flow_residual = 0;
    std::vector<FlowArc> flow;
    long iterations = 0;
};

/// Exact LP optimum of  max sum w_k f_k  s.t. |f_k| <= 1, |f_k - f_l| <= d(s_k, s_l).
/// Throws `cap_exceeded` above `cap` atoms and `non_convergence` if the recheck of the
/// witness fails at 1e-9.
DblCertificate dbl_lp(const DblInstance& inst, long cap = 400);

/// Same value via min-cost flow with movement cost min(d, 2) and creation/destruction
/// cost 1 through a reservoir node. Throws `non_convergence` when the pivot budget
/// runs out or the certificate does not close at 1e-9.
DblCertificate dbl_flow(const DblInstance& inst, long max_iterations = 50'000'000);

/// d_bL(mu, nu) through `dbl_flow`.
double dbl(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct Coarsened {
    DiscreteMeasure measure;
    /// Sum of |w| times snap displacement; bounds d_bL(input, measure).
    double bound = 0;
};

/// Snaps x to the grid hZ^n and u to a spherical grid of spacing about h (angles in 2D,
/// latitude rings in 3D), then merges coincident atoms.
Coarsened coarsen(const DiscreteMeasure& mu, double h);

} // namespace normcyc
