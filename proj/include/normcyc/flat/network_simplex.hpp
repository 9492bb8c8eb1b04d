#pragma once

#include "normcyc/common.hpp"

#include <cmath>
#include <limits>

namespace normcyc {

/// Primal network simplex for uncapacitated min-cost flow over nodes 0..N-1 plus a hub
/// node N joined to every node in both directions.
///
/// Arc ids [0, N) are k -> hub and [N, 2N) are hub -> k, all with cost `hub_cost`.
/// Further arcs are added with `add_arc`, also between runs: a new arc enters at zero
/// flow, so the current tree stays a feasible basis and `run` resumes from it.
/// Supplies are given per node; the hub absorbs the imbalance.
///
/// The spanning tree is stored with parent/thread/successor lists. The starting tree is
/// the star of hub arcs, which is a feasible basis, so no artificial arcs are needed.
/// Entering arcs are chosen by block search; non-tree arcs always carry zero flow, so
/// flows are kept per node for the arc to its parent.
template <typename Scalar>
class HubNetworkSimplex {
public:
    enum class Status { optimal, iteration_limit, unbounded };

    HubNetworkSimplex(std::vector<Scalar> supply, Scalar hub_cost) : n_(static_cast<long>(supply.size())), supply_(std::move(supply))
    {
        require(n_ >= 1, Errc::invalid_argument, "network simplex needs at least one node");
        for (long k = 0; k < n_; ++k) push_arc(k, n_, hub_cost);
        for (long k = 0; k < n_; ++k) push_arc(n_, k, hub_cost);
        init();
    }

    /// Appends the arc s -> t between atoms and returns its id.
    long add_arc(long s, long t, Scalar cost)
    {
        require(s >= 0 && s < n_ && t >= 0 && t < n_ && s != t, Errc::invalid_argument, "network simplex: bad arc");
        push_arc(s, t, cost);
        return arcs() - 1;
    }

    /// Pivots until no arc prices out or the total pivot count reaches `max_iterations`.
    Status run(long max_iterations)
    {
        block_ = std::max<long>(static_cast<long>(std::sqrt(double(arcs()))), std::min<long>(arcs(), 10));
        if (next_arc_ >= arcs()) next_arc_ = 0;
        for (; find_entering_arc(); ++iterations_) {
            if (iterations_ >= max_iterations) return Status::iteration_limit;
            find_join_node();
            const bool change = find_leaving_arc();
            if (delta_ >= inf()) return Status::unbounded;
            change_flow(change);
            if (change) {
                update_tree_structure();
                update_potential();
            }
        }
        return Status::optimal;
    }

    long nodes() const { return n_; }
    long hub() const { return n_; }
    long iterations() const { return iterations_; }
    Scalar potential(long v) const { return pi_[v]; }

    long arcs() const { return static_cast<long>(source_.size()); }
    long source(long a) const { return source_[a]; }
    long target(long a) const { return target_[a]; }
    Scalar cost(long a) const { return cost_[a]; }
    /// c + pi_s - pi_t; nonnegative on every arc at optimality.
    Scalar reduced_cost(long s, long t, Scalar c) const { return c + pi_[s] - pi_[t]; }
    /// Threshold below which a reduced cost counts as negative.
    Scalar pricing_tolerance(long s, long t, Scalar c) const
    {
        using std::abs;
        return eps_ * std::max({abs(pi_[s]), abs(pi_[t]), abs(c), Scalar(1)});
    }

    /// Tree arcs with their flows: (arc id, flow), one per non-hub node.
    std::vector<std::pair<long, Scalar>> tree_flows() const
    {
        std::vector<std::pair<long, Scalar>> out;
        for (long v = 0; v < n_; ++v) out.emplace_back(pred_[v], flow_[v]);
        return out;
    }

private:
    static Scalar inf() { return std::numeric_limits<Scalar>::infinity(); }

    void push_arc(long s, long t, Scalar c)
    {
        source_.push_back(s);
        target_.push_back(t);
        cost_.push_back(c);
        state_.push_back(1);
    }

    void init()
    {
        const long all = n_ + 1;
        parent_.assign(all, -1);
        pred_.assign(all, -1);
        forward_.assign(all, 0);
        thread_.assign(all, 0);
        rev_thread_.assign(all, 0);
        succ_num_.assign(all, 1);
        last_succ_.assign(all, 0);
        pi_.assign(all, 0);
        flow_.assign(all, 0);

        const long root = n_;
        thread_[root] = 0;
        rev_thread_[0] = root;
        succ_num_[root] = n_ + 1;
        last_succ_[root] = root - 1;
        for (long u = 0; u < n_; ++u) {
            parent_[u] = root;
            thread_[u] = u + 1;
            rev_thread_[u + 1] = u;
            succ_num_[u] = 1;
            last_succ_[u] = u;
            if (supply_[u] >= 0) {
                forward_[u] = 1;
                pred_[u] = u;
                state_[u] = 0;
                flow_[u] = supply_[u];
                pi_[u] = -cost_[u];
            }
            else {
                forward_[u] = 0;
                pred_[u] = n_ + u;
                state_[n_ + u] = 0;
                flow_[u] = -supply_[u];
                pi_[u] = cost_[n_ + u];
            }
        }
        next_arc_ = 0;
    }

    bool find_entering_arc()
    {
        Scalar min = 0;
        long cnt = block_;
        long e = next_arc_;
        in_arc_ = -1;
        const long all = arcs();
        auto good_enough = [&] {
            if (in_arc_ < 0) return false;
            return min < -pricing_tolerance(source_[in_arc_], target_[in_arc_], cost_[in_arc_]);
        };
        for (long ind = 0; ind < all; ++ind, ++e) {
            if (e == all) e = 0;
            if (!state_[e]) continue;
            const Scalar c = cost_[e] + pi_[source_[e]] - pi_[target_[e]];
            if (c < min) {
                min = c;
                in_arc_ = e;
            }
            if (--cnt == 0) {
                if (good_enough()) {
                    next_arc_ = e;
                    return true;
                }
                cnt = block_;
            }
        }
        return good_enough();
    }

    void find_join_node()
    {
        long u = source(in_arc_);
        long v = target(in_arc_);
        while (u != v) {
            if (succ_num_[u] < succ_num_[v])
                u = parent_[u];
            else
                v = parent_[v];
        }
        join_ = u;
    }

    bool find_leaving_arc()
    {
        first_ = source(in_arc_);
        second_ = target(in_arc_);
        delta_ = inf();
        int result = 0;
        for (long u = first_; u != join_; u = parent_[u]) {
            const Scalar d = forward_[u] ? flow_[u] : inf();
            if (d < delta_) {
                delta_ = d;
                u_out_ = u;
                result = 1;
            }
        }
        for (long u = second_; u != join_; u = parent_[u]) {
            const Scalar d = forward_[u] ? inf() : flow_[u];
            if (d <= delta_) {
                delta_ = d;
                u_out_ = u;
                result = 2;
            }
        }
        if (result == 1) {
            u_in_ = first_;
            v_in_ = second_;
        }
        else {
            u_in_ = second_;
            v_in_ = first_;
        }
        return result != 0;
    }

    void change_flow(bool change)
    {
        in_flow_ = 0;
        if (delta_ > 0) {
            const Scalar val = delta_;
            in_flow_ = val;
            for (long u = source(in_arc_); u != join_; u = parent_[u]) flow_[u] += forward_[u] ? -val : val;
            for (long u = target(in_arc_); u != join_; u = parent_[u]) flow_[u] += forward_[u] ? val : -val;
        }
        if (change) flow_[u_out_] = 0;
    }

    void update_tree_structure()
    {
        state_[pred_[u_out_]] = 1;
        long w;
        long u = last_succ_[u_in_];
        const long old_rev_thread = rev_thread_[u_out_];
        const long old_succ_num = succ_num_[u_out_];
        const long old_last_succ = last_succ_[u_out_];
        const long v_out = parent_[u_out_];
        long right = thread_[u];
        long last;

        // When old_rev_thread == v_in, join and v_out coincide.
        if (old_rev_thread == v_in_)
            last = thread_[last_succ_[u_out_]];
        else
            last = thread_[v_in_];

        // Re-hang the stem between u_in and u_out and splice it into the thread list.
        long stem = u_in_;
        long par_stem = v_in_;
        thread_[v_in_] = stem;
        dirty_revs_.clear();
        dirty_revs_.push_back(v_in_);
        while (stem != u_out_) {
            const long new_stem = parent_[stem];
            thread_[u] = new_stem;
            dirty_revs_.push_back(u);

            w = rev_thread_[stem];
            thread_[w] = right;
            rev_thread_[right] = w;

            parent_[stem] = par_stem;
            par_stem = stem;
            stem = new_stem;

            u = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem] : last_succ_[stem];
            right = thread_[u];
        }
        parent_[u_out_] = par_stem;
        thread_[u] = last;
        rev_thread_[last] = last_succ_[u_out_] = u;

        if (old_rev_thread != v_in_) {
            thread_[old_rev_thread] = right;
            rev_thread_[right] = old_rev_thread;
        }
        for (long d : dirty_revs_) rev_thread_[thread_[d]] = d;

        // Shift pred arcs (and their flows) along the reversed stem.
        long tmp_sc = 0;
        const long tmp_ls = last_succ_[u_out_];
        u = u_out_;
        while (u != u_in_) {
            w = parent_[u];
            pred_[u] = pred_[w];
            flow_[u] = flow_[w];
            forward_[u] = !forward_[w];
            tmp_sc += succ_num_[u] - succ_num_[w];
            succ_num_[u] = tmp_sc;
            last_succ_[w] = tmp_ls;
            u = w;
        }
        state_[in_arc_] = 0;
        pred_[u_in_] = in_arc_;
        flow_[u_in_] = in_flow_;
        forward_[u_in_] = (u_in_ == source(in_arc_));
        succ_num_[u_in_] = old_succ_num;

        long up_limit_in = -1;
        long up_limit_out = -1;
        if (last_succ_[join_] == v_in_)
            up_limit_out = join_;
        else
            up_limit_in = join_;

        for (u = v_in_; u != up_limit_in && last_succ_[u] == v_in_; u = parent_[u]) last_succ_[u] = last_succ_[u_out_];

        if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
            for (u = v_out; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u])
                last_succ_[u] = old_rev_thread;
        }
        else {
            for (u = v_out; u != up_limit_out && last_succ_[u] == old_last_succ; u = parent_[u])
                last_succ_[u] = last_succ_[u_out_];
        }

        for (u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
        for (u = v_out; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
    }

    void update_potential()
    {
        const Scalar c = cost(pred_[u_in_]);
        const Scalar sigma = forward_[u_in_] ? pi_[v_in_] - pi_[u_in_] - c : pi_[v_in_] - pi_[u_in_] + c;
        const long end = thread_[last_succ_[u_in_]];
        for (long u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
    }

    long n_;
    std::vector<Scalar> supply_;
    std::vector<long> source_, target_;
    std::vector<Scalar> cost_;
    std::vector<char> state_;
    Scalar eps_ = Scalar(1e-12);

    std::vector<long> parent_, pred_, thread_, rev_thread_, succ_num_, last_succ_, dirty_revs_;
    std::vector<char> forward_;
    std::vector<Scalar> pi_, flow_;

    long block_ = 1;
    long next_arc_ = 0;
    long in_arc_ = -1;
    long join_ = 0, first_ = 0, second_ = 0, u_in_ = 0, v_in_ = 0, u_out_ = 0;
    Scalar delta_{};
    Scalar in_flow_{};
    long iterations_ = 0;
};

} // namespace normcyc
