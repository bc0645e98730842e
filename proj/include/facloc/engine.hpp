#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "facloc/core.hpp"

namespace facloc {

// Output of one solver run. The certificate's gamma is left at 1; callers
// supply the shrink factor they want to check against.
struct SolverOutput {
    Solution solution;
    DualCertificate cert;
    EventTrace trace;
    int events = 0;  // number of processed opening/connection events
};

namespace detail {

// Configuration of the shared dual-ascent simulation.
//
// All duals of active cities rise at rate 1 (scaled by demand in money
// terms). A facility opens when the offers it receives reach its opening
// cost; an active city connects to an open facility when its dual reaches
// the connection cost. The knobs below turn the one process into the two
// greedy algorithms and their variants:
//
//   switch_offers   connected cities keep offering their would-be savings
//                   and switch when a cheaper facility opens
//   requirement     connections each city needs before its dual freezes
//   min_connected   stop once this many cities have a connection (robust)
//   forced_open     facilities open (and paid) at time zero
//
// Penalty caps and demand rates are read from the instance.
struct AscentConfig {
    bool switch_offers = false;
    int requirement = 1;
    int min_connected = -1;
    std::vector<int> forced_open;
};

struct PaidSegment {
    double start;  // contribution begins once t exceeds this
    double cap;    // ... and stops growing past this (penalty cap)
    double rate;   // demand
};

// Smallest t >= t_now at which base + sum_j rate_j * (clamp(t, start, cap) - start)+
// reaches need; +inf if the capped total never does.
inline double crossing_time(double need, double base, std::vector<PaidSegment>& segs, double t_now) {
    double remaining = need - base;
    if (remaining <= 0) return t_now;
    // sweep breakpoints in time order
    std::vector<std::pair<double, double>> delta;  // (time, slope change)
    delta.reserve(segs.size() * 2);
    for (const auto& s : segs) {
        if (s.cap <= s.start) continue;
        delta.emplace_back(s.start, s.rate);
        if (s.cap < kInf) delta.emplace_back(s.cap, -s.rate);
    }
    if (delta.empty()) return kInf;
    std::sort(delta.begin(), delta.end());
    double t = delta.front().first;
    double slope = 0.0;
    double paid = 0.0;
    std::size_t idx = 0;
    while (idx < delta.size()) {
        // apply all slope changes at time t
        while (idx < delta.size() && delta[idx].first <= t) slope += delta[idx++].second;
        double t_next = idx < delta.size() ? delta[idx].first : kInf;
        if (slope > 0) {
            double t_hit = t + (remaining - paid) / slope;
            if (t_hit <= t_next) return std::max(t_hit, t_now);
        }
        if (t_next == kInf) break;
        paid += slope * (t_next - t);
        t = t_next;
    }
    return kInf;
}

inline SolverOutput run_dual_ascent(const Instance& inst, const AscentConfig& cfg) {
    inst.validate();
    const int nf = inst.n_f, nc = inst.n_c;
    const int req = cfg.requirement;
    if (req < 1) throw ParamError("requirement must be >= 1");
    if (req > nf && nc > 0) throw ParamError("requirement exceeds facility count");
    if (nf == 0 && nc > 0 && !inst.has_penalties())
        throw ParamError("no facilities to serve cities");

    SolverOutput out;
    out.cert.alpha.assign(nc, 0.0);
    out.cert.gamma = 1.0;

    std::vector<char> open(nf, 0);
    std::vector<std::vector<int>> conn(nc);
    std::vector<char> saturated(nc, 0);
    std::vector<char> frozen(nc, 0);            // dual capped at penalty, unsaturated
    std::vector<double> cur_cost(nc, kInf);     // current connection cost (switch_offers)
    std::vector<int> sigma(nc, -1);             // current facility (switch_offers)
    std::vector<int> open_list;

    for (int g : cfg.forced_open) {
        if (g < 0 || g >= nf) throw ParamError("forced facility index out of range");
        if (!open[g]) { open[g] = 1; open_list.push_back(g); }
    }

    double t = 0.0;
    int connected_cities = 0;
    const int target = cfg.min_connected >= 0 ? std::min(cfg.min_connected, nc) : nc;

    auto city_alpha_now = [&](int j) { return std::min(t, inst.p(j)); };

    auto record_connect = [&](int j, int i, double price) {
        conn[j].push_back(i);
        out.cert.alpha[j] += price;
        out.trace.events.push_back({t, EventKind::CityConnected, i, j, FreezeReason::PenaltyCap});
        if (static_cast<int>(conn[j].size()) == 1) ++connected_cities;
        if (static_cast<int>(conn[j].size()) >= req) saturated[j] = 1;
        if (cfg.switch_offers) { sigma[j] = i; cur_cost[j] = inst.c(i, j); }
    };

    // sum of constant offers plus growth segments a facility receives
    auto opening_time = [&](int i, std::vector<PaidSegment>& segs) {
        segs.clear();
        double base = 0.0;
        for (int j = 0; j < nc; ++j) {
            double cij = inst.c(i, j);
            if (saturated[j]) {
                if (cfg.switch_offers && cur_cost[j] > cij)
                    base += inst.d(j) * (cur_cost[j] - cij);
                continue;
            }
            if (std::find(conn[j].begin(), conn[j].end(), i) != conn[j].end()) continue;
            if (frozen[j]) {
                base += inst.d(j) * std::max(inst.p(j) - cij, 0.0);
                continue;
            }
            segs.push_back({cij, inst.p(j), inst.d(j)});
        }
        return crossing_time(inst.open_cost[i], base, segs, t);
    };

    enum class Cand { None, Opening, Connection, Freeze };

    std::vector<PaidSegment> segs;
    for (;;) {
        if (cfg.min_connected >= 0 && connected_cities >= target) break;
        bool all_done = true;
        for (int j = 0; j < nc; ++j)
            if (!saturated[j]) { all_done = false; break; }
        if (all_done) break;

        Cand kind = Cand::None;
        double best_t = kInf;
        int best_i = -1, best_j = -1;

        // opening events, preferred on ties, lowest facility index first
        for (int i = 0; i < nf; ++i) {
            if (open[i]) continue;
            double ti = opening_time(i, segs);
            if (ti < best_t - kTol) { best_t = ti; kind = Cand::Opening; best_i = i; best_j = -1; }
        }
        // connection events: active city reaches an open facility
        for (int j = 0; j < nc; ++j) {
            if (saturated[j] || frozen[j]) continue;
            for (int i : open_list) {
                if (std::find(conn[j].begin(), conn[j].end(), i) != conn[j].end()) continue;
                double cij = inst.c(i, j);
                if (cij > inst.p(j)) continue;  // dual can never reach it
                double tc = std::max(cij, t);
                if (tc < best_t - kTol) { best_t = tc; kind = Cand::Connection; best_i = i; best_j = j; }
                else if (kind == Cand::Connection && tc < best_t + kTol &&
                         (j < best_j || (j == best_j && i < best_i))) { best_i = i; best_j = j; }
            }
        }
        // penalty freeze events
        for (int j = 0; j < nc; ++j) {
            if (saturated[j] || frozen[j] || inst.p(j) == kInf) continue;
            double tf = std::max(inst.p(j), t);
            if (tf < best_t - kTol) { best_t = tf; kind = Cand::Freeze; best_i = -1; best_j = j; }
            else if (kind == Cand::Freeze && tf < best_t + kTol && j < best_j) best_j = j;
        }

        if (kind == Cand::None) {
            // only penalty-frozen cities may legitimately remain unserved
            for (int j = 0; j < nc; ++j)
                if (conn[j].empty() && inst.p(j) == kInf)
                    throw ParamError("dual ascent stalled with an unserved city");
            break;
        }
        t = best_t;

        if (kind == Cand::Opening) {
            ++out.events;
            open[best_i] = 1;
            open_list.push_back(best_i);
            out.trace.events.push_back({t, EventKind::FacilityOpened, best_i, -1, FreezeReason::PenaltyCap});
            for (int j = 0; j < nc; ++j) {
                double cij = inst.c(best_i, j);
                if (saturated[j]) {
                    if (cfg.switch_offers && cur_cost[j] - cij > kTol) {
                        // reconnection: strictly decreases the city's connection cost
                        conn[j].assign(1, best_i);
                        sigma[j] = best_i;
                        cur_cost[j] = cij;
                        out.trace.events.push_back({t, EventKind::CityConnected, best_i, j, FreezeReason::PenaltyCap});
                    }
                    continue;
                }
                if (std::find(conn[j].begin(), conn[j].end(), best_i) != conn[j].end()) continue;
                double aj = frozen[j] ? inst.p(j) : city_alpha_now(j);
                double offer = aj - cij;
                bool take = cfg.switch_offers ? offer > kTol : offer >= -kTol;
                if (take) record_connect(j, best_i, aj);
            }
        } else if (kind == Cand::Connection) {
            ++out.events;
            record_connect(best_j, best_i, city_alpha_now(best_j));
        } else {
            frozen[best_j] = 1;
            out.trace.events.push_back({t, EventKind::CityFrozen, -1, best_j, FreezeReason::PenaltyCap});
        }
    }

    // final duals of cities that never saturated
    for (int j = 0; j < nc; ++j)
        if (conn[j].empty() && !saturated[j]) out.cert.alpha[j] += city_alpha_now(j);

    Solution& sol = out.solution;
    sol.assign.assign(nc, {});
    for (int i = 0; i < nf; ++i)
        if (open[i]) {
            sol.open.push_back(i);
            sol.facility_cost += inst.open_cost[i];
        }
    for (int j = 0; j < nc; ++j) {
        sol.assign[j] = conn[j];
        std::sort(sol.assign[j].begin(), sol.assign[j].end());
        for (int i : sol.assign[j]) sol.connection_cost += inst.d(j) * inst.c(i, j);
        if (conn[j].empty() && inst.has_penalties())
            sol.penalty_cost += inst.penalty[j];
    }
    return out;
}

}  // namespace detail
}  // namespace facloc
