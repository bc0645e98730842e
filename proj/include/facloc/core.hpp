#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace facloc {

// Absolute tolerance used for "tight" event comparisons and cost checks,
// scaled by instance magnitude where it matters.
inline constexpr double kTol = 1e-9;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Parameter errors: semantically invalid inputs (bad gamma, r > n_f, ...).
struct ParamError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Textual input errors; `pos` is the zero-based token or line position.
struct ParseError : std::runtime_error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " (at token " + std::to_string(position) + ")"),
          pos(position) {}
};

// An instance of the uncapacitated facility location problem.
// Connection costs are stored dense, row-major by facility.
// Demands default to 1 when the vector is empty; penalties are absent
// unless the vector is non-empty (entries may be +inf = "no penalty cap").
struct Instance {
    int n_f = 0;
    int n_c = 0;
    std::vector<double> open_cost;   // size n_f
    std::vector<double> conn;        // size n_f * n_c, conn[i*n_c + j]
    std::vector<double> demand;      // empty or size n_c
    std::vector<double> penalty;     // empty or size n_c
    bool metric = false;             // claim only; see check_metric

    double c(int i, int j) const { return conn[static_cast<std::size_t>(i) * n_c + j]; }
    double& c(int i, int j) { return conn[static_cast<std::size_t>(i) * n_c + j]; }
    double d(int j) const { return demand.empty() ? 1.0 : demand[j]; }
    double p(int j) const { return penalty.empty() ? kInf : penalty[j]; }
    bool has_demands() const { return !demand.empty(); }
    bool has_penalties() const { return !penalty.empty(); }

    void validate() const {
        if (n_f < 0 || n_c < 0) throw ParamError("negative dimensions");
        if (static_cast<int>(open_cost.size()) != n_f) throw ParamError("open_cost size mismatch");
        if (conn.size() != static_cast<std::size_t>(n_f) * n_c) throw ParamError("conn size mismatch");
        if (!demand.empty() && static_cast<int>(demand.size()) != n_c) throw ParamError("demand size mismatch");
        if (!penalty.empty() && static_cast<int>(penalty.size()) != n_c) throw ParamError("penalty size mismatch");
        for (double f : open_cost)
            if (!(f >= 0)) throw ParamError("negative opening cost");
        for (double v : conn)
            if (!(v >= 0)) throw ParamError("negative connection cost");
        for (double v : demand)
            if (!(v >= 0)) throw ParamError("negative demand");
        for (double v : penalty)
            if (!(v >= 0)) throw ParamError("negative penalty");
    }
};

// A (possibly partial) solution: open facilities plus per-city assignment
// lists. In the base problem each city has exactly one assigned facility;
// fault tolerant solutions carry r entries, penalty/robust ones may have 0.
struct Solution {
    std::vector<int> open;                 // sorted, unique
    std::vector<std::vector<int>> assign;  // size n_c
    double facility_cost = 0.0;
    double connection_cost = 0.0;
    double penalty_cost = 0.0;

    double total() const { return facility_cost + connection_cost + penalty_cost; }
};

// Dual values produced by a solver run. `gamma` is the shrink factor the
// caller wants the certificate checked against (>= 1).
struct DualCertificate {
    std::vector<double> alpha;
    double gamma = 1.0;
};

enum class EventKind { FacilityOpened, CityConnected, CityFrozen };

enum class FreezeReason { PenaltyCap };

struct Event {
    double time = 0.0;
    EventKind kind = EventKind::FacilityOpened;
    int facility = -1;  // FacilityOpened, CityConnected
    int city = -1;      // CityConnected, CityFrozen
    FreezeReason reason = FreezeReason::PenaltyCap;
};

struct EventTrace {
    std::vector<Event> events;
};

// Recomputes F + C + penalty_cost from scratch. Unassigned cities pay their
// penalty when the instance carries penalties, nothing otherwise.
inline double total_cost(const Instance& inst, const Solution& sol) {
    if (static_cast<int>(sol.assign.size()) != inst.n_c)
        throw std::out_of_range("assignment size does not match instance");
    double f_cost = 0.0;
    for (int i : sol.open) {
        if (i < 0 || i >= inst.n_f) throw std::out_of_range("open facility index out of range");
        f_cost += inst.open_cost[i];
    }
    double c_cost = 0.0;
    double p_cost = 0.0;
    for (int j = 0; j < inst.n_c; ++j) {
        if (sol.assign[j].empty()) {
            if (inst.has_penalties()) p_cost += inst.penalty[j];
            continue;
        }
        for (int i : sol.assign[j]) {
            if (i < 0 || i >= inst.n_f) throw std::out_of_range("assigned facility index out of range");
            c_cost += inst.d(j) * inst.c(i, j);
        }
    }
    return f_cost + c_cost + p_cost;
}

// Exhaustive bipartite triangle inequality check:
// c_ij <= c_ij' + c_i'j' + c_i'j for all facility pairs and city pairs.
inline bool check_metric(const Instance& inst, double tol = kTol) {
    for (int i = 0; i < inst.n_f; ++i)
        for (int i2 = 0; i2 < inst.n_f; ++i2)
            for (int j = 0; j < inst.n_c; ++j)
                for (int j2 = 0; j2 < inst.n_c; ++j2)
                    if (inst.c(i, j) > inst.c(i, j2) + inst.c(i2, j2) + inst.c(i2, j) + tol)
                        return false;
    return true;
}

// Per-facility slack of the shrunk dual: s_i = f_i - sum_j d_j * max(alpha_j/gamma - c_ij, 0).
// The certificate is feasible iff all slacks are >= -tol. Contributions are
// weighted by demand (a no-op for unit-demand instances).
inline std::vector<double> check_overtight(const Instance& inst, const DualCertificate& cert) {
    if (!(cert.gamma > 0)) throw ParamError("gamma must be positive");
    if (static_cast<int>(cert.alpha.size()) != inst.n_c)
        throw ParamError("alpha length does not match city count");
    std::vector<double> slack(inst.n_f, 0.0);
    for (int i = 0; i < inst.n_f; ++i) {
        double used = 0.0;
        for (int j = 0; j < inst.n_c; ++j)
            used += inst.d(j) * std::max(cert.alpha[j] / cert.gamma - inst.c(i, j), 0.0);
        slack[i] = inst.open_cost[i] - used;
    }
    return slack;
}

inline bool overtight_feasible(const std::vector<double>& slack, double tol = 1e-6) {
    for (double s : slack)
        if (s < -tol) return false;
    return true;
}

namespace detail {

// Lexicographic order on sorted index vectors, used for deterministic
// tie-breaking among equal-cost optima.
inline bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// Exact optimum by enumerating all facility subsets (n_f <= 20). Each city
// is assigned to its cheapest open facility, or pays its penalty when that
// is strictly cheaper. Ties between equal-cost optima go to the
// lexicographically smallest open set.
inline Solution brute_force_opt(const Instance& inst) {
    inst.validate();
    if (inst.n_f > 20) throw ParamError("brute_force_opt: n_f > 20 refused");
    const int nf = inst.n_f, nc = inst.n_c;

    double best_cost = kInf;
    std::uint32_t best_mask = 0;
    bool found = false;

    const std::uint32_t limit = nf == 0 ? 1u : (1u << nf);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        if (mask == 0 && nc > 0 && !inst.has_penalties()) continue;  // infeasible: nothing open
        double cost = 0.0;
        for (int i = 0; i < nf; ++i)
            if (mask & (1u << i)) cost += inst.open_cost[i];
        bool feasible = true;
        for (int j = 0; j < nc && feasible; ++j) {
            double cheapest = kInf;
            for (int i = 0; i < nf; ++i)
                if (mask & (1u << i)) cheapest = std::min(cheapest, inst.d(j) * inst.c(i, j));
            if (inst.has_penalties()) cheapest = std::min(cheapest, inst.penalty[j]);
            if (cheapest == kInf) { feasible = false; break; }
            cost += cheapest;
        }
        if (!feasible || cost > best_cost + kTol * (1.0 + std::abs(best_cost))) continue;
        if (!found || cost < best_cost - kTol * (1.0 + std::abs(cost))) {
            best_cost = cost;
            best_mask = mask;
            found = true;
        } else {
            // equal cost: prefer the lexicographically smaller open set
            std::vector<int> cur, best;
            for (int i = 0; i < nf; ++i) {
                if (mask & (1u << i)) cur.push_back(i);
                if (best_mask & (1u << i)) best.push_back(i);
            }
            if (detail::lex_less(cur, best)) { best_mask = mask; best_cost = std::min(best_cost, cost); }
        }
    }
    if (!found) throw ParamError("brute_force_opt: no feasible solution");

    Solution sol;
    for (int i = 0; i < nf; ++i)
        if (best_mask & (1u << i)) {
            sol.open.push_back(i);
            sol.facility_cost += inst.open_cost[i];
        }
    sol.assign.assign(nc, {});
    for (int j = 0; j < nc; ++j) {
        int arg = -1;
        double cheapest = kInf;
        for (int i : sol.open) {
            double w = inst.d(j) * inst.c(i, j);
            if (w < cheapest) { cheapest = w; arg = i; }
        }
        if (inst.has_penalties() && inst.penalty[j] < cheapest) {
            sol.penalty_cost += inst.penalty[j];
            continue;  // pays penalty, stays unassigned
        }
        if (arg < 0) throw ParamError("brute_force_opt: internal infeasibility");
        sol.assign[j].push_back(arg);
        sol.connection_cost += cheapest;
    }
    return sol;
}

}  // namespace facloc
