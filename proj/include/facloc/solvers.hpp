#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "facloc/core.hpp"
#include "facloc/engine.hpp"

namespace facloc {

enum class Alg { Greedy1, Greedy2 };

// Star greedy, direct form: repeatedly pick the star (facility + city set)
// with the smallest cost per newly served demand, open the facility and zero
// its opening cost, and retire the served cities. Candidate stars per
// facility are the prefixes of the unserved cities sorted by connection
// cost. Ties break on ratio, then facility index, then smaller star.
inline SolverOutput greedy1_star(const Instance& inst) {
    inst.validate();
    const int nf = inst.n_f, nc = inst.n_c;
    if (nf == 0 && nc > 0) throw ParamError("no facilities to serve cities");

    SolverOutput out;
    out.cert.alpha.assign(nc, 0.0);
    Solution& sol = out.solution;
    sol.assign.assign(nc, {});

    std::vector<double> f_rem(inst.open_cost);
    std::vector<char> open(nf, 0), served(nc, 0);
    std::vector<int> order;
    int unserved = nc;

    while (unserved > 0) {
        double best_ratio = kInf;
        int best_i = -1;
        std::vector<int> best_set;
        for (int i = 0; i < nf; ++i) {
            order.clear();
            for (int j = 0; j < nc; ++j)
                if (!served[j]) order.push_back(j);
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                double ca = inst.c(i, a), cb = inst.c(i, b);
                return ca < cb || (ca == cb && a < b);
            });
            double num = f_rem[i], den = 0.0;
            for (std::size_t k = 0; k < order.size(); ++k) {
                int j = order[k];
                num += inst.d(j) * inst.c(i, j);
                den += inst.d(j);
                if (den <= 0) continue;
                double ratio = num / den;
                bool better = ratio < best_ratio - kTol;
                bool tie = !better && ratio < best_ratio + kTol;
                if (better || (tie && (i < best_i || (i == best_i && k + 1 < best_set.size())))) {
                    best_ratio = ratio;
                    best_i = i;
                    best_set.assign(order.begin(), order.begin() + k + 1);
                }
            }
        }
        if (best_i < 0) throw ParamError("greedy1_star: no candidate star");

        if (!open[best_i]) {
            open[best_i] = 1;
            sol.open.push_back(best_i);
            sol.facility_cost += inst.open_cost[best_i];
            out.trace.events.push_back({best_ratio, EventKind::FacilityOpened, best_i, -1, FreezeReason::PenaltyCap});
        }
        f_rem[best_i] = 0.0;
        for (int j : best_set) {
            served[j] = 1;
            --unserved;
            sol.assign[j].push_back(best_i);
            sol.connection_cost += inst.d(j) * inst.c(best_i, j);
            out.cert.alpha[j] = best_ratio;
            out.trace.events.push_back({best_ratio, EventKind::CityConnected, best_i, j, FreezeReason::PenaltyCap});
        }
        ++out.events;
    }
    std::sort(sol.open.begin(), sol.open.end());
    return out;
}

// Time-based restatement of the star greedy: duals of unconnected cities
// rise together; a facility opens when the contributions aimed at it cover
// its opening cost, and connected cities withdraw from everything else.
// Event times are recomputed by full rescan after every event (cubic
// overall); no heap-based incremental refinement.
inline SolverOutput greedy1_restatement(const Instance& inst) {
    detail::AscentConfig cfg;
    return detail::run_dual_ascent(inst, cfg);
}

// Algorithm with switching: connected cities keep offering the savings they
// would gain from a closer facility, and move there when it opens.
inline SolverOutput greedy2(const Instance& inst) {
    detail::AscentConfig cfg;
    cfg.switch_offers = true;
    return detail::run_dual_ascent(inst, cfg);
}

inline SolverOutput run_alg(const Instance& inst, Alg alg) {
    return alg == Alg::Greedy1 ? greedy1_restatement(inst) : greedy2(inst);
}

// Primal-dual baseline: phase 1 raises all duals without withdrawal until
// every city has a tight edge to a temporarily open facility; phase 2 keeps
// a maximal independent set of the temporarily open facilities (two conflict
// when some city contributed positively to both), greedily by opening time,
// and reassigns every city to the nearest kept facility.
inline SolverOutput jv(const Instance& inst) {
    inst.validate();
    const int nf = inst.n_f, nc = inst.n_c;
    if (nf == 0 && nc > 0) throw ParamError("no facilities to serve cities");

    SolverOutput out;
    out.cert.alpha.assign(nc, 0.0);
    Solution& sol = out.solution;
    sol.assign.assign(nc, {});
    if (nc == 0) return out;

    std::vector<char> temp_open(nf, 0), frozen(nc, 0);
    std::vector<double> open_time(nf, kInf);
    std::vector<double> alpha(nc, 0.0);
    std::vector<int> open_order;
    double t = 0.0;
    int active = nc;

    std::vector<detail::PaidSegment> segs;
    while (active > 0) {
        double best_t = kInf;
        bool is_open_event = false;
        int best_i = -1, best_j = -1;

        for (int i = 0; i < nf; ++i) {
            if (temp_open[i]) continue;
            segs.clear();
            double base = 0.0;
            for (int j = 0; j < nc; ++j) {
                double cij = inst.c(i, j);
                if (frozen[j]) base += inst.d(j) * std::max(alpha[j] - cij, 0.0);
                else segs.push_back({cij, kInf, inst.d(j)});
            }
            double ti = detail::crossing_time(inst.open_cost[i], base, segs, t);
            if (ti < best_t - kTol) { best_t = ti; is_open_event = true; best_i = i; }
        }
        for (int j = 0; j < nc; ++j) {
            if (frozen[j]) continue;
            for (int i : open_order) {
                double tc = std::max(inst.c(i, j), t);
                if (tc < best_t - kTol) { best_t = tc; is_open_event = false; best_i = i; best_j = j; }
                else if (!is_open_event && best_j >= 0 && tc < best_t + kTol &&
                         (j < best_j || (j == best_j && i < best_i))) { best_i = i; best_j = j; }
            }
        }
        t = best_t;
        ++out.events;
        if (is_open_event) {
            temp_open[best_i] = 1;
            open_time[best_i] = t;
            open_order.push_back(best_i);
            out.trace.events.push_back({t, EventKind::FacilityOpened, best_i, -1, FreezeReason::PenaltyCap});
            for (int j = 0; j < nc; ++j)
                if (!frozen[j] && t >= inst.c(best_i, j) - kTol) {
                    frozen[j] = 1;
                    alpha[j] = t;
                    --active;
                    out.trace.events.push_back({t, EventKind::CityConnected, best_i, j, FreezeReason::PenaltyCap});
                }
        } else {
            frozen[best_j] = 1;
            alpha[best_j] = t;
            --active;
            out.trace.events.push_back({t, EventKind::CityConnected, best_i, best_j, FreezeReason::PenaltyCap});
        }
    }
    out.cert.alpha = alpha;

    // cleanup: conflict = some city pays toward both facilities
    std::vector<int> chosen;
    std::vector<char> kept(nf, 0);
    std::vector<int> by_time(open_order);
    std::stable_sort(by_time.begin(), by_time.end(), [&](int a, int b) {
        return open_time[a] < open_time[b] || (open_time[a] == open_time[b] && a < b);
    });
    for (int i : by_time) {
        bool conflict = false;
        for (int i2 : chosen) {
            for (int j = 0; j < nc && !conflict; ++j)
                if (alpha[j] - inst.c(i, j) > kTol && alpha[j] - inst.c(i2, j) > kTol) conflict = true;
            if (conflict) break;
        }
        if (!conflict) { chosen.push_back(i); kept[i] = 1; }
    }
    for (int i = 0; i < nf; ++i)
        if (kept[i]) {
            sol.open.push_back(i);
            sol.facility_cost += inst.open_cost[i];
        }
    for (int j = 0; j < nc; ++j) {
        int arg = -1;
        double best = kInf;
        for (int i : sol.open)
            if (inst.c(i, j) < best) { best = inst.c(i, j); arg = i; }
        sol.assign[j].push_back(arg);
        sol.connection_cost += inst.d(j) * best;
    }
    return out;
}

}  // namespace facloc
