#pragma once

#include <string>

#include "facloc/core.hpp"
#include "facloc/lp.hpp"

namespace facloc {

inline constexpr int kLpSizeGuard = 20000;  // max n_f * n_c for the dense solver

// LP relaxation in the classic variables:
//   min sum f_i y_i + sum d_j c_ij x_ij
//   s.t. sum_i x_ij >= 1 for every city, x_ij <= y_i, x, y >= 0.
// Variable order: y_0..y_{nf-1}, then x_ij facility-major.
inline LpModel build_fl_relaxation(const Instance& inst) {
    inst.validate();
    const int nf = inst.n_f, nc = inst.n_c;
    if (nf * nc > kLpSizeGuard)
        throw ParamError("fl relaxation too large for the dense solver; split the instance or lower its size");

    LpModel m;
    m.name = "fl_relaxation";
    m.sense = ObjSense::Minimize;
    m.resize(nf + nf * nc);
    auto xid = [nc, nf](int i, int j) { return nf + i * nc + j; };
    for (int i = 0; i < nf; ++i) {
        m.objective[i] = inst.open_cost[i];
        m.var_names[i] = "y" + std::to_string(i);
        for (int j = 0; j < nc; ++j) {
            m.objective[xid(i, j)] = inst.d(j) * inst.c(i, j);
            m.var_names[xid(i, j)] = "x" + std::to_string(i) + "_" + std::to_string(j);
        }
    }
    for (int j = 0; j < nc; ++j) {
        LpRow& row = m.add_row(RowSense::GreaterEq, 1.0);
        for (int i = 0; i < nf; ++i) row.coef[xid(i, j)] = 1.0;
    }
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nc; ++j) {
            LpRow& row = m.add_row(RowSense::LessEq, 0.0);
            row.coef[xid(i, j)] = 1.0;
            row.coef[i] = -1.0;
        }
    return m;
}

// Fractional optimum of the relaxation; the denominator of every
// experimental ratio.
inline double fl_lp_bound(const Instance& inst, int max_iters = 0) {
    LpSolution sol = simplex_solve(build_fl_relaxation(inst), max_iters);
    if (sol.status != LpStatus::Optimal)
        throw ParamError(std::string("fl relaxation solve failed: ") + to_string(sol.status));
    return sol.objective;
}

}  // namespace facloc
