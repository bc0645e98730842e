#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "facloc/core.hpp"
#include "facloc/lp.hpp"

namespace facloc {

// Which factor-revealing program to build, and the star size k.
struct FrlpSpec {
    enum class Kind { Alg1, Alg2, Tradeoff };
    Kind kind = Kind::Alg1;
    int k = 1;
    double gamma_f = 1.0;  // Tradeoff only, >= 1
};

inline constexpr int kFrlpSizeGuard = 60;  // largest k the dense solver commits to

namespace detail {

inline void frlp_validate(const FrlpSpec& spec) {
    if (spec.k < 1) throw ParamError("frlp: k must be >= 1");
    if (spec.kind == FrlpSpec::Kind::Tradeoff && !(spec.gamma_f >= 1.0))
        throw ParamError("frlp: gamma_f must be >= 1");
}

// Worst-case star program for the no-switching greedy. Variables, in order:
// a1..ak, d1..dk, f, then x_j_l for l >= j. The ratio objective is
// normalized by the equality row f + sum d = 1. Ordered-pair constraints
// a_j <= a_l + d_j + d_l are emitted for j > l only: for j <= l they follow
// from the sortedness chain and d >= 0.
inline LpModel build_frlp_alg1(int k) {
    LpModel m;
    m.name = "frlp_alg1_k" + std::to_string(k);
    const int n_x = k * (k + 1) / 2;
    m.resize(2 * k + 1 + n_x);
    auto a = [](int j) { return j - 1; };                 // 1-based city
    auto d = [k](int j) { return k + j - 1; };
    const int f = 2 * k;
    std::vector<int> xbase(k + 1, 0);
    {
        int at = 2 * k + 1;
        for (int j = 1; j <= k; ++j) {
            xbase[j] = at - j;  // x(j,l) = xbase[j] + l for l in [j..k]
            at += k - j + 1;
        }
    }
    auto x = [&](int j, int l) { return xbase[j] + l; };

    for (int j = 1; j <= k; ++j) {
        m.objective[a(j)] = 1.0;
        m.var_names[a(j)] = "a" + std::to_string(j);
        m.var_names[d(j)] = "d" + std::to_string(j);
        for (int l = j; l <= k; ++l)
            m.var_names[x(j, l)] = "x" + std::to_string(j) + "_" + std::to_string(l);
    }
    m.var_names[f] = "f";

    {
        LpRow& row = m.add_row(RowSense::Equal, 1.0);
        row.coef[f] = 1.0;
        for (int j = 1; j <= k; ++j) row.coef[d(j)] = 1.0;
    }
    for (int j = 1; j < k; ++j) {
        LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // a_j <= a_{j+1}
        row.coef[a(j)] = 1.0;
        row.coef[a(j + 1)] = -1.0;
    }
    for (int j = 2; j <= k; ++j)
        for (int l = 1; l < j; ++l) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // a_j <= a_l + d_j + d_l
            row.coef[a(j)] = 1.0;
            row.coef[a(l)] = -1.0;
            row.coef[d(j)] = -1.0;
            row.coef[d(l)] = -1.0;
        }
    for (int j = 1; j <= k; ++j)
        for (int l = j; l <= k; ++l) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // x_jl >= a_j - d_l
            row.coef[a(j)] = 1.0;
            row.coef[d(l)] = -1.0;
            row.coef[x(j, l)] = -1.0;
        }
    for (int j = 1; j <= k; ++j) {
        LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // sum_{l>=j} x_jl <= f
        for (int l = j; l <= k; ++l) row.coef[x(j, l)] = 1.0;
        row.coef[f] = -1.0;
    }
    return m;
}

// Worst-case star program for the switching greedy, linearized with g/h
// auxiliaries (g_i_j >= r_j_i - d_j for j < i, h_i_j >= a_i - d_j for j >= i).
// Variables, in order: a1..ak, d1..dk, f, r_j_i (j-major), g_i_j (i-major),
// h_i_j (i-major). The Tradeoff flavour keeps the same rows but normalizes
// sum d = 1 and maximizes sum a - gamma_f * f.
inline LpModel build_frlp_alg2(int k, bool tradeoff, double gamma_f) {
    LpModel m;
    m.name = (tradeoff ? "frlp_tradeoff_k" : "frlp_alg2_k") + std::to_string(k);
    const int n_r = k * (k - 1) / 2;
    const int n_g = n_r;
    const int n_h = k * (k + 1) / 2;
    m.resize(2 * k + 1 + n_r + n_g + n_h);
    auto a = [](int j) { return j - 1; };
    auto d = [k](int j) { return k + j - 1; };
    const int f = 2 * k;

    std::vector<int> rbase(k + 1, 0);
    {
        int at = 2 * k + 1;
        for (int j = 1; j < k; ++j) {
            rbase[j] = at - j - 1;  // r(j,i) = rbase[j] + i for i in [j+1..k]
            at += k - j;
        }
    }
    auto r = [&](int j, int i) { return rbase[j] + i; };
    std::vector<int> gbase(k + 1, 0);
    {
        int at = 2 * k + 1 + n_r;
        for (int i = 2; i <= k; ++i) {
            gbase[i] = at - 1;  // g(i,j) = gbase[i] + j for j in [1..i-1]
            at += i - 1;
        }
    }
    auto g = [&](int i, int j) { return gbase[i] + j; };
    std::vector<int> hbase(k + 1, 0);
    {
        int at = 2 * k + 1 + n_r + n_g;
        for (int i = 1; i <= k; ++i) {
            hbase[i] = at - i;  // h(i,j) = hbase[i] + j for j in [i..k]
            at += k - i + 1;
        }
    }
    auto h = [&](int i, int j) { return hbase[i] + j; };

    for (int j = 1; j <= k; ++j) {
        m.objective[a(j)] = 1.0;
        m.var_names[a(j)] = "a" + std::to_string(j);
        m.var_names[d(j)] = "d" + std::to_string(j);
    }
    m.var_names[f] = "f";
    if (tradeoff) m.objective[f] = -gamma_f;
    for (int j = 1; j < k; ++j)
        for (int i = j + 1; i <= k; ++i)
            m.var_names[r(j, i)] = "r" + std::to_string(j) + "_" + std::to_string(i);
    for (int i = 2; i <= k; ++i)
        for (int j = 1; j < i; ++j)
            m.var_names[g(i, j)] = "g" + std::to_string(i) + "_" + std::to_string(j);
    for (int i = 1; i <= k; ++i)
        for (int j = i; j <= k; ++j)
            m.var_names[h(i, j)] = "h" + std::to_string(i) + "_" + std::to_string(j);

    {
        LpRow& row = m.add_row(RowSense::Equal, 1.0);
        if (!tradeoff) row.coef[f] = 1.0;
        for (int j = 1; j <= k; ++j) row.coef[d(j)] = 1.0;
    }
    for (int i = 1; i < k; ++i) {
        LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // a_i <= a_{i+1}
        row.coef[a(i)] = 1.0;
        row.coef[a(i + 1)] = -1.0;
    }
    for (int j = 1; j < k; ++j)
        for (int i = j + 1; i < k; ++i) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // r_{j,i+1} <= r_{j,i}
            row.coef[r(j, i + 1)] = 1.0;
            row.coef[r(j, i)] = -1.0;
        }
    for (int i = 2; i <= k; ++i)
        for (int j = 1; j < i; ++j) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // a_i <= r_ji + d_i + d_j
            row.coef[a(i)] = 1.0;
            row.coef[r(j, i)] = -1.0;
            row.coef[d(i)] = -1.0;
            row.coef[d(j)] = -1.0;
        }
    for (int i = 2; i <= k; ++i)
        for (int j = 1; j < i; ++j) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // g_ij >= r_ji - d_j
            row.coef[r(j, i)] = 1.0;
            row.coef[d(j)] = -1.0;
            row.coef[g(i, j)] = -1.0;
        }
    for (int i = 1; i <= k; ++i)
        for (int j = i; j <= k; ++j) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // h_ij >= a_i - d_j
            row.coef[a(i)] = 1.0;
            row.coef[d(j)] = -1.0;
            row.coef[h(i, j)] = -1.0;
        }
    for (int i = 1; i <= k; ++i) {
        LpRow& row = m.add_row(RowSense::LessEq, 0.0);  // offers never exceed f
        for (int j = 1; j < i; ++j) row.coef[g(i, j)] = 1.0;
        for (int j = i; j <= k; ++j) row.coef[h(i, j)] = 1.0;
        row.coef[f] = -1.0;
    }
    return m;
}

}  // namespace detail

inline LpModel build_frlp(const FrlpSpec& spec) {
    detail::frlp_validate(spec);
    switch (spec.kind) {
        case FrlpSpec::Kind::Alg1: return detail::build_frlp_alg1(spec.k);
        case FrlpSpec::Kind::Alg2: return detail::build_frlp_alg2(spec.k, false, 1.0);
        default: return detail::build_frlp_alg2(spec.k, true, spec.gamma_f);
    }
}

inline LpSolution solve_frlp_model(const FrlpSpec& spec, int max_iters = 0) {
    return simplex_solve(build_frlp(spec), max_iters);
}

// Optimal value z_k of the factor-revealing program (the worst-case shrink
// factor over stars of size k; for Tradeoff, the connection factor gamma_c
// at the given gamma_f).
inline double solve_frlp(const FrlpSpec& spec, int max_iters = 0) {
    LpSolution sol = solve_frlp_model(spec, max_iters);
    if (sol.status != LpStatus::Optimal)
        throw ParamError(std::string("frlp solve failed: ") + to_string(sol.status));
    return sol.objective;
}

// Running maximum of z_i over i <= k: the factor certified for stars of up
// to k cities without leaning on monotonicity of the sequence.
inline double solve_frlp_cumulative(const FrlpSpec& spec, int max_iters = 0) {
    double best = 0.0;
    for (int i = 1; i <= spec.k; ++i) {
        FrlpSpec sub = spec;
        sub.k = i;
        best = std::max(best, solve_frlp(sub, max_iters));
    }
    return best;
}

// Worst-case instance realizing the Alg1 factor: k + 1 facilities, the first
// k free and co-assigned one city each, the last one costing f and at
// distance d_j from city j. Cross distances come from the triangle
// inequality. The greedy pays sum a_j while the optimum opens only the last
// facility. Its opening cost carries a 1e-7 relative bump so that exactly
// tight offer rows in the LP optimum cannot make the greedy open it early
// under the openings-first tie rule.
inline Instance tight_instance(const FrlpSpec& spec, const LpSolution& solution) {
    detail::frlp_validate(spec);
    if (spec.kind != FrlpSpec::Kind::Alg1) throw ParamError("tight_instance: alg1 only");
    const int k = spec.k;
    if (static_cast<int>(solution.x.size()) < 2 * k + 1)
        throw ParamError("tight_instance: solution vector too short");
    std::vector<double> alpha(solution.x.begin(), solution.x.begin() + k);
    std::vector<double> dist(solution.x.begin() + k, solution.x.begin() + 2 * k);
    double f = solution.x[2 * k];

    const double tol = 1e-6;
    if (f < -tol) throw ParamError("tight_instance: negative f");
    for (int j = 0; j < k; ++j)
        if (alpha[j] < -tol || dist[j] < -tol) throw ParamError("tight_instance: negative entry");
    for (int j = 0; j + 1 < k; ++j)
        if (alpha[j] > alpha[j + 1] + tol) throw ParamError("tight_instance: alphas not sorted");
    for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l)
            if (alpha[j] > alpha[l] + dist[j] + dist[l] + tol)
                throw ParamError("tight_instance: ordering constraint violated");
    for (int j = 0; j < k; ++j) {
        double offered = 0.0;
        for (int l = j; l < k; ++l) offered += std::max(alpha[j] - dist[l], 0.0);
        if (offered > f + tol) throw ParamError("tight_instance: offer constraint violated");
    }
    f = std::max(f, 0.0);
    for (int j = 0; j < k; ++j) {
        alpha[j] = std::max(alpha[j], 0.0);
        dist[j] = std::max(dist[j], 0.0);
    }

    Instance inst;
    inst.n_f = k + 1;
    inst.n_c = k;
    inst.open_cost.assign(k + 1, 0.0);
    inst.open_cost[k] = f * (1.0 + 1e-7);
    inst.conn.assign(static_cast<std::size_t>(k + 1) * k, 0.0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            inst.c(i, j) = i == j ? alpha[j] : dist[i] + dist[j] + alpha[i];
    for (int j = 0; j < k; ++j) inst.c(k, j) = dist[j];
    inst.metric = true;
    return inst;
}

}  // namespace facloc
