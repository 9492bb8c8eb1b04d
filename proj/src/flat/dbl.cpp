#include "normcyc/flat/dbl.hpp"

#include "normcyc/flat/network_simplex.hpp"
#include "normcyc/flat/simplex.hpp"

#include <algorithm>
#include <cmath>

namespace normcyc {

namespace {

constexpr double certificate_tol = 1e-9;

DblInstance from_merged(const DiscreteMeasure& m)
{
    DblInstance inst;
    inst.dim = m.dim;
    for (const auto& a : m.atoms) {
        if (a.w == 0) continue;
        inst.atoms.push_back(a.s);
        inst.weights.push_back(a.w);
    }
    if (inst.atoms.empty() && !m.atoms.empty()) {
        inst.atoms.push_back(m.atoms.front().s);
        inst.weights.push_back(0);
    }
    return inst;
}

/// d_bL is even in w; solving with the first nonzero weight positive makes the value
/// of (mu, nu) and (nu, mu) bit-identical.
double canonical_sign(const std::vector<double>& w)
{
    for (double v : w)
        if (v != 0) return v < 0 ? -1.0 : 1.0;
    return 1.0;
}

void check_witness(const DblInstance& inst, DblCertificate& cert)
{
    const long n = inst.size();
    double viol = 0;
    double obj = 0;
    for (long k = 0; k < n; ++k) {
        viol = std::max(viol, std::abs(cert.witness[k]) - 1);
        obj += inst.weights[k] * cert.witness[k];
        for (long l = k + 1; l < n; ++l) {
            const double gap = std::abs(cert.witness[k] - cert.witness[l]);
            if (gap > 0) viol = std::max(viol, gap - inst.distance(k, l));
        }
    }
    cert.max_violation = std::max(0.0, viol);
    cert.objective_residual = std::abs(cert.value - obj);
}

/// Dual of the LP after the shift g = f + 1 in [0, 2]:
///   min sum d_kl y_kl + 2 sum z_k  s.t.  sum_l y_kl - sum_l y_lk + z_k - s_k = w_k.
/// Columns: [0, N) z_k, [N, 2N) s_k, then y_kl for ordered pairs with d < 2.
struct DualLp {
    const DblInstance& inst;
    std::vector<std::pair<int, int>> pairs;
    std::vector<double> dist;

    explicit DualLp(const DblInstance& in) : inst(in)
    {
        const long n = inst.size();
        for (long k = 0; k < n; ++k)
            for (long l = 0; l < n; ++l) {
                if (k == l) continue;
                const double d = inst.distance(k, l);
                if (d >= 2) continue;
                pairs.emplace_back(int(k), int(l));
                dist.push_back(d);
            }
    }

    long columns() const { return 2 * inst.size() + long(pairs.size()); }
    double cost(long j) const
    {
        const long n = inst.size();
        if (j < n) return 2;
        if (j < 2 * n) return 0;
        return dist[j - 2 * n];
    }
    LpColumn<double> column(long j) const
    {
        const long n = inst.size();
        LpColumn<double> c;
        if (j < n) {
            c.nnz = 1;
            c.row[0] = int(j);
            c.value[0] = 1;
        }
        else if (j < 2 * n) {
            c.nnz = 1;
            c.row[0] = int(j - n);
            c.value[0] = -1;
        }
        else {
            const auto [k, l] = pairs[j - 2 * n];
            c.nnz = 2;
            c.row = {k, l};
            c.value = {1.0, -1.0};
        }
        return c;
    }
};

} // namespace

DblInstance DblInstance::from_measures(const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
    require(mu.dim == nu.dim, Errc::dimension_mismatch, "measures differ in dimension");
    const auto a = merged(mu);
    const auto b = merged(nu);
    return from_merged(merged(linear_combination({&a, &b}, {1.0, -1.0})));
}

DblInstance DblInstance::from_signed(const DiscreteMeasure& mu) { return from_merged(merged(mu)); }

DblCertificate dbl_lp(const DblInstance& inst, long cap)
{
    const long n = inst.size();
    require(n >= 1, Errc::invalid_argument, "dbl instance needs at least one atom");
    require(n <= cap, Errc::cap_exceeded, "dbl_lp: " + std::to_string(n) + " atoms exceed the oracle cap; use dbl_flow");

    DualLp lp(inst);
    VecX<double> b(n);
    std::vector<long> basis(n);
    double wsum = 0;
    const double sign = canonical_sign(inst.weights);
    for (long k = 0; k < n; ++k) {
        b[k] = sign * inst.weights[k];
        basis[k] = b[k] >= 0 ? k : n + k;
        wsum += b[k];
    }
    const auto res = revised_simplex(lp, b, basis, 1'000'000);
    require(res.status == LpStatus::optimal, Errc::non_convergence, "dbl_lp: simplex did not reach optimality");

    DblCertificate cert;
    cert.iterations = res.iterations;
    cert.value = res.objective - wsum;
    cert.witness.resize(n);
    for (long k = 0; k < n; ++k) cert.witness[k] = sign * (res.duals[k] - 1);
    cert.primal_cost = res.objective;
    check_witness(inst, cert);
    cert.duality_gap = cert.objective_residual;
    require(cert.max_violation <= certificate_tol && cert.objective_residual <= certificate_tol, Errc::non_convergence,
            "dbl_lp: witness recheck failed");
    return cert;
}

DblCertificate dbl_flow(const DblInstance& inst, long max_iterations)
{
    const long n = inst.size();
    require(n >= 1, Errc::invalid_argument, "dbl instance needs at least one atom");
    const double sign = canonical_sign(inst.weights);
    std::vector<double> supply(inst.weights);
    for (double& w : supply) w *= sign;

    // Column generation: start from nearest neighbours, then price every pair with
    // d < 2 (longer moves never beat the reservoir) and add the arcs that price out.
    HubNetworkSimplex<double> ns(supply, 1.0);
    constexpr long neighbours = 10;
    std::vector<std::pair<double, long>> row;
    for (long k = 0; k < n; ++k) {
        row.clear();
        for (long l = 0; l < n; ++l) {
            if (l == k) continue;
            const double d = inst.distance(k, l);
            if (d < 2) row.emplace_back(d, l);
        }
        const long m = std::min<long>(neighbours, long(row.size()));
        std::partial_sort(row.begin(), row.begin() + m, row.end());
        for (long j = 0; j < m; ++j) ns.add_arc(k, row[j].second, row[j].first);
    }
    using Status = HubNetworkSimplex<double>::Status;
    for (;;) {
        const auto status = ns.run(max_iterations);
        require(status != Status::iteration_limit, Errc::non_convergence, "dbl_flow: pivot budget exhausted");
        require(status == Status::optimal, Errc::non_convergence, "dbl_flow: unbounded flow problem");
        long added = 0;
        for (long k = 0; k < n; ++k) {
            long best = -1;
            double best_rc = 0;
            double best_d = 0;
            for (long l = 0; l < n; ++l) {
                if (l == k) continue;
                const double d = inst.distance(k, l);
                if (d >= 2) continue;
                const double rc = ns.reduced_cost(k, l, d);
                if (rc < best_rc && rc < -ns.pricing_tolerance(k, l, d)) {
                    best_rc = rc;
                    best = l;
                    best_d = d;
                }
            }
            if (best >= 0) {
                ns.add_arc(k, best, best_d);
                ++added;
            }
        }
        if (added == 0) break;
    }

    DblCertificate cert;
    cert.iterations = ns.iterations();
    cert.witness.resize(n);
    const double pr = ns.potential(ns.hub());
    for (long k = 0; k < n; ++k) cert.witness[k] = sign * (pr - ns.potential(k));

    std::vector<double> balance(n + 1, 0);
    for (const auto& [arc, amount] : ns.tree_flows()) {
        if (amount == 0) continue;
        long s = ns.source(arc);
        long t = ns.target(arc);
        cert.primal_cost += amount * ns.cost(arc);
        if (sign < 0) std::swap(s, t);
        balance[s] += amount;
        balance[t] -= amount;
        cert.flow.push_back({s == n ? -1 : s, t == n ? -1 : t, amount});
    }
    double wsum = 0;
    for (long k = 0; k < n; ++k) {
        cert.flow_residual = std::max(cert.flow_residual, std::abs(balance[k] - inst.weights[k]));
        wsum += inst.weights[k];
    }
    cert.flow_residual = std::max(cert.flow_residual, std::abs(balance[n] + wsum));

    double obj = 0;
    for (long k = 0; k < n; ++k) obj += inst.weights[k] * cert.witness[k];
    cert.value = obj;
    cert.duality_gap = cert.primal_cost - obj;
    check_witness(inst, cert);
    require(cert.max_violation <= certificate_tol && std::abs(cert.duality_gap) <= certificate_tol &&
                cert.flow_residual <= certificate_tol,
            Errc::non_convergence, "dbl_flow: certificate does not close");
    return cert;
}

double dbl(const DiscreteMeasure& mu, const DiscreteMeasure& nu)
{
    return dbl_flow(DblInstance::from_measures(mu, nu)).value;
}

} // namespace normcyc
