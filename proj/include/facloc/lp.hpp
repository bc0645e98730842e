#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "facloc/core.hpp"

namespace facloc {

enum class RowSense { LessEq, Equal, GreaterEq };
enum class ObjSense { Minimize, Maximize };

struct LpRow {
    std::vector<double> coef;  // length num_vars
    RowSense sense = RowSense::LessEq;
    double rhs = 0.0;
};

// Dense LP: all variables default to lower bound 0 and no upper bound.
struct LpModel {
    int num_vars = 0;
    ObjSense sense = ObjSense::Maximize;
    std::vector<double> objective;
    std::vector<LpRow> rows;
    std::vector<double> lower;  // empty = all zero
    std::vector<double> upper;  // empty = all +inf
    std::vector<std::string> var_names;
    std::string name;

    void resize(int n) {
        num_vars = n;
        objective.assign(n, 0.0);
        var_names.resize(n);
    }
    LpRow& add_row(RowSense s, double rhs_value) {
        rows.push_back({std::vector<double>(num_vars, 0.0), s, rhs_value});
        return rows.back();
    }
    double lb(int v) const { return lower.empty() ? 0.0 : lower[v]; }
    double ub(int v) const { return upper.empty() ? kInf : upper[v]; }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    double objective = 0.0;
    std::vector<double> x;
    int iterations = 0;
};

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        default: return "iteration-limit";
    }
}

// Largest row/bound violation of x under the model; 0 means feasible.
inline double lp_max_violation(const LpModel& m, const std::vector<double>& x) {
    double worst = 0.0;
    for (const auto& row : m.rows) {
        double lhs = 0.0;
        for (int v = 0; v < m.num_vars; ++v) lhs += row.coef[v] * x[v];
        double viol = 0.0;
        switch (row.sense) {
            case RowSense::LessEq: viol = lhs - row.rhs; break;
            case RowSense::GreaterEq: viol = row.rhs - lhs; break;
            case RowSense::Equal: viol = std::abs(lhs - row.rhs); break;
        }
        worst = std::max(worst, viol);
    }
    for (int v = 0; v < m.num_vars; ++v) {
        worst = std::max(worst, m.lb(v) - x[v]);
        if (m.ub(v) < kInf) worst = std::max(worst, x[v] - m.ub(v));
    }
    return worst;
}

namespace detail {

// Dense two-phase primal simplex on the full tableau. Dantzig pricing with a
// permanent switch to Bland's rule once the objective stalls; the
// factor-revealing programs are heavily degenerate.
class SimplexTableau {
  public:
    SimplexTableau(const LpModel& model, int max_iters)
        : m_(static_cast<int>(model.rows.size())), max_iters_(max_iters) {
        build(model);
    }

    LpSolution solve(const LpModel& model) {
        LpSolution res;
        if (n_art_ > 0) {
            phase1();
            if (status_ == LpStatus::IterationLimit) return finish(model, res);
            if (infeasible_) {
                res.status = LpStatus::Infeasible;
                res.iterations = iters_;
                return res;
            }
        }
        phase2();
        return finish(model, res);
    }

  private:
    int m_;
    int n_total_ = 0;   // structural + slack/surplus + artificial
    int n_struct_ = 0;
    int n_art_ = 0;
    int art_begin_ = 0;
    int max_iters_;
    int iters_ = 0;
    bool infeasible_ = false;
    LpStatus status_ = LpStatus::Optimal;
    std::vector<double> tab_;    // m rows, width n_total_ + 1 (last = rhs)
    std::vector<double> obj_;    // reduced cost row, width n_total_ + 1
    std::vector<int> basis_;
    std::vector<char> banned_;   // artificials barred from re-entering
    std::vector<double> shift_;  // lower-bound shift per structural var

    double* row(int r) { return tab_.data() + static_cast<std::size_t>(r) * (n_total_ + 1); }

    void build(const LpModel& model) {
        const int n = model.num_vars;
        n_struct_ = n;
        shift_.assign(n, 0.0);
        for (int v = 0; v < n; ++v) shift_[v] = model.lb(v);

        // upper bounds become extra rows after the shift
        std::vector<LpRow> rows = model.rows;
        for (int v = 0; v < n; ++v) {
            if (model.ub(v) < kInf) {
                LpRow r{std::vector<double>(n, 0.0), RowSense::LessEq, model.ub(v)};
                r.coef[v] = 1.0;
                rows.push_back(std::move(r));
            }
        }
        m_ = static_cast<int>(rows.size());

        std::vector<double> rhs(m_);
        std::vector<RowSense> sense(m_);
        for (int r = 0; r < m_; ++r) {
            double b = rows[r].rhs;
            if (!std::isfinite(b)) throw ParamError("row rhs must be finite");
            for (int v = 0; v < n; ++v) b -= rows[r].coef[v] * shift_[v];
            rhs[r] = b;
            sense[r] = rows[r].sense;
        }
        int n_slack = 0;
        for (int r = 0; r < m_; ++r) {
            bool neg = rhs[r] < 0;
            if (neg) {
                if (sense[r] == RowSense::LessEq) sense[r] = RowSense::GreaterEq;
                else if (sense[r] == RowSense::GreaterEq) sense[r] = RowSense::LessEq;
            }
            if (sense[r] != RowSense::Equal) ++n_slack;
            if (sense[r] == RowSense::GreaterEq || sense[r] == RowSense::Equal) ++n_art_;
        }
        n_total_ = n + n_slack + n_art_;
        art_begin_ = n + n_slack;
        tab_.assign(static_cast<std::size_t>(m_) * (n_total_ + 1), 0.0);
        obj_.assign(n_total_ + 1, 0.0);
        basis_.assign(m_, -1);
        banned_.assign(n_total_, 0);

        int slack_at = n, art_at = art_begin_;
        for (int r = 0; r < m_; ++r) {
            double* tr = row(r);
            double sign = rhs[r] < 0 ? -1.0 : 1.0;
            for (int v = 0; v < n; ++v) tr[v] = sign * rows[r].coef[v];
            tr[n_total_] = sign * rhs[r];
            switch (sense[r]) {
                case RowSense::LessEq:
                    tr[slack_at] = 1.0;
                    basis_[r] = slack_at++;
                    break;
                case RowSense::GreaterEq:
                    tr[slack_at++] = -1.0;
                    tr[art_at] = 1.0;
                    basis_[r] = art_at++;
                    break;
                case RowSense::Equal:
                    tr[art_at] = 1.0;
                    basis_[r] = art_at++;
                    break;
            }
        }
    }

    // one pivot; returns false if max_iters exhausted
    bool pivot(int pc, int pr) {
        double* prow = row(pr);
        double pv = prow[pc];
        for (int v = 0; v <= n_total_; ++v) prow[v] /= pv;
        prow[pc] = 1.0;
        for (int r = 0; r < m_; ++r) {
            if (r == pr) continue;
            double* tr = row(r);
            double factor = tr[pc];
            if (std::abs(factor) <= 1e-12) continue;
            for (int v = 0; v <= n_total_; ++v) tr[v] -= factor * prow[v];
            tr[pc] = 0.0;
        }
        double factor = obj_[pc];
        if (std::abs(factor) > 1e-12) {
            for (int v = 0; v <= n_total_; ++v) obj_[v] -= factor * prow[v];
            obj_[pc] = 0.0;
        }
        basis_[pr] = pc;
        ++iters_;
        return iters_ < max_iters_;
    }

    // maximize; obj_ holds reduced costs (positive = improving) and rhs cell
    // holds the current objective value
    void iterate(bool art_allowed) {
        const double eps = 1e-9;
        bool bland = false;
        int stall = 0;
        double last_obj = obj_[n_total_];
        const int stall_limit = 4 * m_ + 200;
        for (;;) {
            int pc = -1;
            double best = eps;
            int scan_end = art_allowed ? n_total_ : art_begin_;
            if (bland) {
                for (int v = 0; v < scan_end; ++v)
                    if (!banned_[v] && obj_[v] > eps) { pc = v; break; }
            } else {
                for (int v = 0; v < scan_end; ++v)
                    if (!banned_[v] && obj_[v] > best) { best = obj_[v]; pc = v; }
            }
            if (pc < 0) { status_ = LpStatus::Optimal; return; }

            int pr = -1;
            double best_ratio = kInf;
            for (int r = 0; r < m_; ++r) {
                double a = row(r)[pc];
                if (a <= eps) continue;
                double ratio = row(r)[n_total_] / a;
                if (ratio < best_ratio - 1e-12 ||
                    (ratio < best_ratio + 1e-12 && (pr < 0 || basis_[r] < basis_[pr]))) {
                    best_ratio = ratio;
                    pr = r;
                }
            }
            if (pr < 0) { status_ = LpStatus::Unbounded; return; }
            if (!pivot(pc, pr)) { status_ = LpStatus::IterationLimit; return; }

            if (!bland) {
                double cur = obj_[n_total_];
                if (std::abs(cur - last_obj) <= 1e-12 * (1.0 + std::abs(cur))) {
                    if (++stall > stall_limit) bland = true;
                } else {
                    stall = 0;
                    last_obj = cur;
                }
            }
        }
    }

    void phase1() {
        // minimize sum of artificials == maximize -(sum); the reduced-cost
        // row starts as the sum of the artificial-basic rows
        std::fill(obj_.begin(), obj_.end(), 0.0);
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < art_begin_) continue;
            double* tr = row(r);
            for (int v = 0; v <= n_total_; ++v) obj_[v] += tr[v];
        }
        for (int v = art_begin_; v < n_total_; ++v) obj_[v] = 0.0;
        iterate(/*art_allowed=*/false);
        if (status_ == LpStatus::IterationLimit) return;
        status_ = LpStatus::Optimal;
        if (obj_[n_total_] > 1e-7) {
            infeasible_ = true;
            return;
        }
        // drive leftover artificials out of the basis where possible
        for (int r = 0; r < m_; ++r) {
            if (basis_[r] < art_begin_) continue;
            double* tr = row(r);
            int pc = -1;
            for (int v = 0; v < art_begin_; ++v)
                if (std::abs(tr[v]) > 1e-7) { pc = v; break; }
            if (pc >= 0) pivot(pc, r);
        }
        for (int v = art_begin_; v < n_total_; ++v) banned_[v] = 1;
    }

    std::vector<double> struct_obj_;

    void set_phase2_objective() {
        std::fill(obj_.begin(), obj_.end(), 0.0);
        for (int v = 0; v < n_struct_; ++v) obj_[v] = struct_obj_[v];
        // eliminate basic columns: obj_ becomes the reduced-cost row, with
        // positive entries improving and the rhs cell tracking -z
        for (int r = 0; r < m_; ++r) {
            int b = basis_[r];
            double cb = b < n_struct_ ? struct_obj_[b] : 0.0;
            if (cb == 0.0) continue;
            double* tr = row(r);
            for (int v = 0; v <= n_total_; ++v) obj_[v] -= cb * tr[v];
            obj_[b] = 0.0;
        }
    }

  public:
    void set_objective(std::vector<double> maximize_coefs) { struct_obj_ = std::move(maximize_coefs); }

  private:
    void phase2() {
        set_phase2_objective();
        iterate(/*art_allowed=*/false);
    }

    LpSolution finish(const LpModel& model, LpSolution& res) {
        res.iterations = iters_;
        res.status = status_;
        if (infeasible_) res.status = LpStatus::Infeasible;
        res.x.assign(model.num_vars, 0.0);
        for (int r = 0; r < m_; ++r)
            if (basis_[r] < n_struct_) res.x[basis_[r]] = row(r)[n_total_];
        for (int v = 0; v < model.num_vars; ++v) res.x[v] += shift_[v];
        res.objective = 0.0;
        for (int v = 0; v < model.num_vars; ++v) res.objective += model.objective[v] * res.x[v];
        return res;
    }
};

}  // namespace detail

// Two-phase dense simplex. max_iters <= 0 picks a size-based default.
inline LpSolution simplex_solve(const LpModel& model, int max_iters = 0) {
    if (static_cast<int>(model.objective.size()) != model.num_vars)
        throw ParamError("objective size mismatch");
    for (const auto& r : model.rows)
        if (static_cast<int>(r.coef.size()) != model.num_vars)
            throw ParamError("row coefficient size mismatch");
    if (max_iters <= 0)
        max_iters = 50000 + 200 * (static_cast<int>(model.rows.size()) + model.num_vars);
    detail::SimplexTableau tab(model, max_iters);
    std::vector<double> obj(model.objective);
    if (model.sense == ObjSense::Minimize)
        for (double& v : obj) v = -v;
    tab.set_objective(std::move(obj));
    return tab.solve(model);
}

namespace detail {

inline std::string fmt_num(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

inline void append_terms(std::string& line, const std::vector<double>& coef,
                         const std::vector<std::string>& names) {
    bool first = true;
    for (std::size_t v = 0; v < coef.size(); ++v) {
        double c = coef[v];
        if (c == 0.0) continue;
        if (first) {
            if (c < 0) { line += "- "; c = -c; }
            first = false;
        } else {
            line += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        }
        line += fmt_num(c);
        line += ' ';
        line += names[v];
    }
    if (first) line += "0";
}

}  // namespace detail

// Writes the model in LP text format (objective, Subject To, optional
// Bounds, End). Variable names fall back to x1..xn when unset.
inline std::string export_lp_text(const LpModel& model) {
    std::vector<std::string> names(model.var_names);
    names.resize(model.num_vars);
    for (int v = 0; v < model.num_vars; ++v)
        if (names[v].empty()) names[v] = "x" + std::to_string(v + 1);

    std::string s;
    s += model.sense == ObjSense::Maximize ? "Maximize\n" : "Minimize\n";
    s += " obj: ";
    {
        std::string line;
        detail::append_terms(line, model.objective, names);
        s += line;
    }
    s += "\nSubject To\n";
    for (std::size_t r = 0; r < model.rows.size(); ++r) {
        std::string line = " c" + std::to_string(r + 1) + ": ";
        detail::append_terms(line, model.rows[r].coef, names);
        switch (model.rows[r].sense) {
            case RowSense::LessEq: line += " <= "; break;
            case RowSense::Equal: line += " = "; break;
            case RowSense::GreaterEq: line += " >= "; break;
        }
        line += detail::fmt_num(model.rows[r].rhs);
        s += line;
        s += '\n';
    }
    bool any_bounds = false;
    for (int v = 0; v < model.num_vars; ++v)
        if (model.lb(v) != 0.0 || model.ub(v) < kInf) { any_bounds = true; break; }
    if (any_bounds) {
        s += "Bounds\n";
        for (int v = 0; v < model.num_vars; ++v) {
            if (model.lb(v) == 0.0 && model.ub(v) == kInf) continue;
            std::string line = " ";
            if (model.ub(v) < kInf)
                line += detail::fmt_num(model.lb(v)) + " <= " + names[v] + " <= " + detail::fmt_num(model.ub(v));
            else
                line += names[v] + " >= " + detail::fmt_num(model.lb(v));
            s += line;
            s += '\n';
        }
    }
    s += "End\n";
    return s;
}

// Minimal parser for the format written by export_lp_text. Variables are
// numbered in order of first appearance.
inline LpModel parse_lp_text(const std::string& text) {
    std::istringstream in(text);
    std::string tok;
    std::vector<std::string> toks;
    while (in >> tok) toks.push_back(tok);
    std::size_t pos = 0;
    auto need = [&](const char* what) -> const std::string& {
        if (pos >= toks.size()) throw ParseError(std::string("unexpected end, wanted ") + what, pos);
        return toks[pos];
    };

    LpModel model;
    std::vector<std::pair<std::vector<std::pair<int, double>>, std::pair<RowSense, double>>> sparse_rows;
    std::vector<std::pair<int, double>> sparse_obj;
    std::vector<std::string> names;
    auto var_id = [&](const std::string& nm) {
        for (std::size_t v = 0; v < names.size(); ++v)
            if (names[v] == nm) return static_cast<int>(v);
        names.push_back(nm);
        return static_cast<int>(names.size() - 1);
    };
    auto parse_num = [&](const std::string& s, double& out_val) {
        auto r = std::from_chars(s.data(), s.data() + s.size(), out_val);
        return r.ec == std::errc() && r.ptr == s.data() + s.size();
    };

    const std::string& head = need("Maximize/Minimize");
    if (head == "Maximize") model.sense = ObjSense::Maximize;
    else if (head == "Minimize") model.sense = ObjSense::Minimize;
    else throw ParseError("expected Maximize or Minimize", pos);
    ++pos;
    if (need("obj label") != "obj:") throw ParseError("expected obj:", pos);
    ++pos;

    // terms until "Subject"
    auto read_terms = [&](std::vector<std::pair<int, double>>& out_terms,
                          const std::vector<std::string>& stops) -> std::string {
        double sign = 1.0;
        for (;;) {
            if (pos >= toks.size()) return "";
            const std::string& w = toks[pos];
            for (const auto& stop : stops)
                if (w == stop) return w;
            if (w == "+") { sign = 1.0; ++pos; continue; }
            if (w == "-") { sign = -1.0; ++pos; continue; }
            double v;
            if (parse_num(w, v)) {
                ++pos;
                if (pos < toks.size() && !parse_num(toks[pos], v)) {
                    bool is_stop = false;
                    for (const auto& stop : stops) is_stop |= toks[pos] == stop;
                    bool is_sense = toks[pos] == "<=" || toks[pos] == ">=" || toks[pos] == "=";
                    if (!is_stop && !is_sense && toks[pos] != "+" && toks[pos] != "-") {
                        out_terms.emplace_back(var_id(toks[pos]), sign * v);
                        ++pos;
                        sign = 1.0;
                        continue;
                    }
                }
                // bare constant (e.g. empty objective "0")
                sign = 1.0;
                continue;
            }
            out_terms.emplace_back(var_id(w), sign * 1.0);
            ++pos;
            sign = 1.0;
        }
    };

    read_terms(sparse_obj, {"Subject"});
    if (need("Subject") != "Subject") throw ParseError("expected Subject To", pos);
    ++pos;
    if (need("To") != "To") throw ParseError("expected To", pos);
    ++pos;

    while (pos < toks.size() && toks[pos] != "Bounds" && toks[pos] != "End") {
        const std::string& label = toks[pos];
        if (label.empty() || label.back() != ':') throw ParseError("expected row label", pos);
        ++pos;
        std::vector<std::pair<int, double>> terms;
        for (;;) {
            std::string stop = read_terms(terms, {"<=", ">=", "=", "Bounds", "End"});
            if (stop == "<=" || stop == ">=" || stop == "=") {
                RowSense sense = stop == "<=" ? RowSense::LessEq
                               : stop == ">=" ? RowSense::GreaterEq
                                              : RowSense::Equal;
                ++pos;
                double rhs;
                if (!parse_num(need("rhs"), rhs)) throw ParseError("expected numeric rhs", pos);
                ++pos;
                sparse_rows.push_back({std::move(terms), {sense, rhs}});
                break;
            }
            throw ParseError("row without relational operator", pos);
        }
    }
    // Bounds section: skipped (models written by export_lp_text with default
    // bounds never emit one; tolerate and ignore otherwise)
    while (pos < toks.size() && toks[pos] != "End") ++pos;

    model.resize(static_cast<int>(names.size()));
    model.var_names = names;
    for (auto& [v, c] : sparse_obj) model.objective[v] += c;
    for (auto& [terms, tail] : sparse_rows) {
        LpRow& row = model.add_row(tail.first, tail.second);
        for (auto& [v, c] : terms) row.coef[v] += c;
    }
    return model;
}

}  // namespace facloc
