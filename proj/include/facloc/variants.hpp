#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "facloc/core.hpp"
#include "facloc/engine.hpp"
#include "facloc/solvers.hpp"

namespace facloc {

// Arbitrary demands: city j raises money at rate d_j, which is exactly the
// base process run on an instance with d_j unit copies of city j. The base
// solvers already read demands off the instance; this wrapper just validates.
inline SolverOutput solve_with_demands(const Instance& inst, Alg alg) {
    for (int j = 0; j < inst.n_c; ++j)
        if (!(inst.d(j) > 0)) throw ParamError("solve_with_demands: demands must be positive");
    return run_alg(inst, alg);
}

// Penalties: a city's dual stops at p_j; it keeps offering the frozen amount
// and either connects later or pays the penalty when everything stalls.
inline SolverOutput solve_with_penalties(const Instance& inst, Alg alg) {
    return run_alg(inst, alg);
}

// Uniform fault tolerance: every city must reach r distinct open facilities;
// its dual keeps rising (and offering) until the r-th connection.
inline SolverOutput solve_fault_tolerant_uniform(const Instance& inst, int r) {
    if (r < 1 || r > inst.n_f) throw ParamError("solve_fault_tolerant_uniform: need 1 <= r <= n_f");
    detail::AscentConfig cfg;
    cfg.requirement = r;
    return detail::run_dual_ascent(inst, cfg);
}

// Robust version: guess the most expensive facility of the optimum, prune
// costlier ones, force the guess open, and stop the ascent once at most l
// cities remain unconnected. Cheapest run over all guesses wins.
inline Solution solve_robust(const Instance& inst, int l) {
    inst.validate();
    if (l < 0 || l >= std::max(inst.n_c, 1)) throw ParamError("solve_robust: need 0 <= l < n_c");
    if (inst.n_f == 0) throw ParamError("solve_robust: no facilities");

    Solution best;
    bool found = false;
    for (int guess = 0; guess < inst.n_f; ++guess) {
        std::vector<int> keep;
        for (int i = 0; i < inst.n_f; ++i)
            if (inst.open_cost[i] <= inst.open_cost[guess]) keep.push_back(i);
        Instance sub;
        sub.n_f = static_cast<int>(keep.size());
        sub.n_c = inst.n_c;
        sub.demand = inst.demand;
        sub.open_cost.resize(sub.n_f);
        sub.conn.resize(static_cast<std::size_t>(sub.n_f) * sub.n_c);
        int gpos = 0;
        for (int s = 0; s < sub.n_f; ++s) {
            if (keep[s] == guess) gpos = s;
            sub.open_cost[s] = inst.open_cost[keep[s]];
            for (int j = 0; j < sub.n_c; ++j) sub.c(s, j) = inst.c(keep[s], j);
        }
        detail::AscentConfig cfg;
        cfg.forced_open = {gpos};
        cfg.min_connected = inst.n_c - l;
        SolverOutput out = detail::run_dual_ascent(sub, cfg);

        Solution sol;
        sol.assign.assign(inst.n_c, {});
        for (int s : out.solution.open) sol.open.push_back(keep[s]);
        std::sort(sol.open.begin(), sol.open.end());
        sol.facility_cost = out.solution.facility_cost;
        sol.connection_cost = out.solution.connection_cost;
        for (int j = 0; j < inst.n_c; ++j)
            for (int s : out.solution.assign[j]) sol.assign[j].push_back(keep[s]);
        if (!found || sol.total() < best.total() - kTol ||
            (sol.total() < best.total() + kTol && detail::lex_less(sol.open, best.open))) {
            best = std::move(sol);
            found = true;
        }
    }
    return best;
}

namespace detail {

// Run the switching greedy with opening costs transformed by
// f -> scale * f + surcharge, then express the answer on the original
// instance: every city moves to its nearest kept facility and facilities
// serving nobody are dropped.
inline Solution scaled_greedy2(const Instance& inst, double scale, double surcharge) {
    Instance mod = inst;
    for (double& f : mod.open_cost) f = scale * f + surcharge;
    SolverOutput out = greedy2(mod);

    Solution sol;
    sol.assign.assign(inst.n_c, {});
    std::vector<char> used(inst.n_f, 0);
    for (int j = 0; j < inst.n_c; ++j) {
        int arg = -1;
        double cheapest = kInf;
        for (int i : out.solution.open)
            if (inst.c(i, j) < cheapest) { cheapest = inst.c(i, j); arg = i; }
        if (arg >= 0) {
            used[arg] = 1;
            sol.assign[j].push_back(arg);
            sol.connection_cost += inst.d(j) * cheapest;
        }
    }
    for (int i : out.solution.open)
        if (used[i]) {
            sol.open.push_back(i);
            sol.facility_cost += inst.open_cost[i];
        }
    return sol;
}

}  // namespace detail

// Lagrangian-multiplier-preserving 2-approximation: the switching greedy on
// doubled opening costs, reported against the original costs. Satisfies
// C <= 2 (OPT - F).
inline Solution lmp2_solution(const Instance& inst) {
    return detail::scaled_greedy2(inst, 2.0, 0.0);
}

// At most k open facilities: wrap the LMP subroutine in a binary search over
// a uniform opening surcharge. Larger surcharges open fewer facilities; the
// cheapest solution seen with at most k facilities is returned (no
// convex-combination rounding between bracketing runs). With a slack
// constraint (k = n_f) the answer is the plain z = 0 run; otherwise the
// candidate pool starts from the best single facility, which is always
// feasible.
inline Solution solve_k_facility(const Instance& inst, int k) {
    inst.validate();
    if (k < 1 || k > inst.n_f) throw ParamError("solve_k_facility: need 1 <= k <= n_f");

    if (k == inst.n_f) return detail::scaled_greedy2(inst, 2.0, 0.0);

    Solution best;
    bool found = false;
    auto consider = [&](const Solution& sol) {
        if (static_cast<int>(sol.open.size()) > k) return false;
        if (!found || sol.total() < best.total() - kTol ||
            (sol.total() < best.total() + kTol && detail::lex_less(sol.open, best.open))) {
            best = sol;
            found = true;
        }
        return true;
    };

    {
        int arg = 0;
        double cheapest = kInf;
        for (int i = 0; i < inst.n_f; ++i) {
            double cost = inst.open_cost[i];
            for (int j = 0; j < inst.n_c; ++j) cost += inst.d(j) * inst.c(i, j);
            if (cost < cheapest) { cheapest = cost; arg = i; }
        }
        Solution single;
        single.open = {arg};
        single.facility_cost = inst.open_cost[arg];
        single.assign.assign(inst.n_c, {});
        for (int j = 0; j < inst.n_c; ++j) {
            single.assign[j].push_back(arg);
            single.connection_cost += inst.d(j) * inst.c(arg, j);
        }
        consider(single);
    }
    consider(detail::scaled_greedy2(inst, 2.0, 0.0));

    double max_c = 0.0, max_f = 0.0;
    for (double v : inst.conn) max_c = std::max(max_c, v);
    for (double v : inst.open_cost) max_f = std::max(max_f, v);
    double lo = 0.0, hi = std::max(1.0, inst.n_c * (max_c + max_f));
    for (int it = 0; it < 64; ++it) {
        double z = 0.5 * (lo + hi);
        Solution sol = detail::scaled_greedy2(inst, 2.0, z);
        if (static_cast<int>(sol.open.size()) > k) lo = z;
        else {
            consider(sol);
            hi = z;
        }
    }
    if (!found) throw ParamError("solve_k_facility: no feasible surcharge found");
    return best;
}

// Soft capacities u_i via the per-service reduction: solve the uncapacitated
// problem on c'_ij = c_ij + f_i / u_i, then open facility i ceil(k_i / u_i)
// times for the k_i cities it serves. Connection costs revert to the
// original metric.
struct SoftCapacitatedSolution {
    Solution solution;
    std::vector<int> multiplicity;  // copies opened per facility
};

inline SoftCapacitatedSolution solve_soft_capacitated(const Instance& inst, const std::vector<int>& u) {
    inst.validate();
    if (static_cast<int>(u.size()) != inst.n_f) throw ParamError("solve_soft_capacitated: capacity count mismatch");
    for (int cap : u)
        if (cap < 1) throw ParamError("solve_soft_capacitated: capacities must be >= 1");

    Instance mod = inst;
    for (int i = 0; i < inst.n_f; ++i) {
        double s = inst.open_cost[i] / u[i];
        for (int j = 0; j < inst.n_c; ++j) mod.c(i, j) = inst.c(i, j) + s;
    }
    SolverOutput out = greedy2(mod);

    SoftCapacitatedSolution res;
    res.multiplicity.assign(inst.n_f, 0);
    Solution& sol = res.solution;
    sol.assign = out.solution.assign;
    std::vector<int> served(inst.n_f, 0);
    for (int j = 0; j < inst.n_c; ++j)
        for (int i : sol.assign[j]) {
            ++served[i];
            sol.connection_cost += inst.d(j) * inst.c(i, j);
        }
    for (int i = 0; i < inst.n_f; ++i) {
        if (served[i] == 0) continue;
        res.multiplicity[i] = (served[i] + u[i] - 1) / u[i];
        sol.open.push_back(i);
        sol.facility_cost += res.multiplicity[i] * inst.open_cost[i];
    }
    return res;
}

// Cross-monotone-style cost shares of a base run: city j's share is its
// dual. Shares sum to the total cost, and any coalition's total share stays
// within the algorithm's factor (1.861 / 1.61) of its stand-alone cost.
inline std::vector<double> cost_shares(const SolverOutput& out) {
    return out.cert.alpha;
}

}  // namespace facloc
