#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "facloc/core.hpp"
#include "facloc/generators.hpp"
#include "facloc/relaxation.hpp"
#include "facloc/solvers.hpp"

namespace facloc {

// One harness result: mean cost / LP-bound ratio for one algorithm on one
// batch of seeded instances.
struct BenchRow {
    int n_c = 0;
    int n_f = 0;
    std::string alg;
    double mean_ratio = 0.0;
    int trials = 0;
    std::uint64_t seed_base = 0;
    double wall_ms = 0.0;
    bool lp_skipped = false;
};

struct BenchSize {
    int n_c = 0;
    int n_f = 0;
};

struct BenchSpec {
    GenSpec::Kind suite = GenSpec::Kind::Grid;
    std::vector<BenchSize> sizes;
    int trials = 15;
    std::uint64_t seed = 1;
};

// Reporting order: the baseline first, then the two greedy solvers.
inline const std::vector<std::string>& bench_algorithms() {
    static const std::vector<std::string> algs = {"jv", "greedy1", "greedy2"};
    return algs;
}

inline std::uint64_t bench_instance_seed(std::uint64_t base, std::size_t size_index, int trial) {
    return base + 1000003ull * size_index + static_cast<std::uint64_t>(trial);
}

// Runs the batches. Instance seeds are a pure function of (seed, size index,
// trial), so a fixed spec always reproduces the same numbers.
inline std::vector<BenchRow> run_bench(const BenchSpec& spec) {
    std::vector<BenchRow> rows;
    for (std::size_t si = 0; si < spec.sizes.size(); ++si) {
        const BenchSize& size = spec.sizes[si];
        std::vector<double> sums(bench_algorithms().size(), 0.0);
        std::vector<double> times(bench_algorithms().size(), 0.0);
        bool lp_ok = static_cast<long long>(size.n_c) * size.n_f <= kLpSizeGuard;
        for (int trial = 0; lp_ok && trial < spec.trials; ++trial) {
            GenSpec g;
            g.kind = spec.suite;
            g.n_c = size.n_c;
            g.n_f = size.n_f;
            g.seed = bench_instance_seed(spec.seed, si, trial);
            if (spec.suite == GenSpec::Kind::Gnp) g.cost_max = 300;
            Instance inst = generate(g);
            double bound = fl_lp_bound(inst);
            for (std::size_t ai = 0; ai < bench_algorithms().size(); ++ai) {
                auto t0 = std::chrono::steady_clock::now();
                double cost = 0.0;
                if (ai == 0) cost = jv(inst).solution.total();
                else if (ai == 1) cost = greedy1_restatement(inst).solution.total();
                else cost = greedy2(inst).solution.total();
                auto t1 = std::chrono::steady_clock::now();
                times[ai] += std::chrono::duration<double, std::milli>(t1 - t0).count();
                sums[ai] += cost / bound;
            }
        }
        for (std::size_t ai = 0; ai < bench_algorithms().size(); ++ai) {
            BenchRow row;
            row.n_c = size.n_c;
            row.n_f = size.n_f;
            row.alg = bench_algorithms()[ai];
            row.trials = spec.trials;
            row.seed_base = spec.seed;
            row.lp_skipped = !lp_ok;
            row.mean_ratio = lp_ok ? sums[ai] / spec.trials : 0.0;
            row.wall_ms = times[ai];
            rows.push_back(row);
        }
    }
    return rows;
}

// CSV view: deterministic columns only (wall time lives in the human table),
// so output is byte-stable for a fixed seed and version.
inline std::string bench_csv(const std::vector<BenchRow>& rows) {
    std::string s = "n_c,n_f,alg,mean_ratio,trials,seed\n";
    char buf[160];
    for (const auto& r : rows) {
        if (r.lp_skipped)
            std::snprintf(buf, sizeof buf, "%d,%d,%s,lp=skipped,%d,%llu\n", r.n_c, r.n_f, r.alg.c_str(),
                          r.trials, static_cast<unsigned long long>(r.seed_base));
        else
            std::snprintf(buf, sizeof buf, "%d,%d,%s,%.6f,%d,%llu\n", r.n_c, r.n_f, r.alg.c_str(),
                          r.mean_ratio, r.trials, static_cast<unsigned long long>(r.seed_base));
        s += buf;
    }
    return s;
}

// Human-readable table in the JV | ALG1 | ALG2 layout.
inline std::string bench_table(const std::vector<BenchRow>& rows) {
    std::string s = "  n_c   n_f         JV      ALG 1      ALG 2    time(ms)\n";
    char buf[200];
    for (std::size_t at = 0; at + 3 <= rows.size(); at += 3) {
        const BenchRow& a = rows[at];
        const BenchRow& b = rows[at + 1];
        const BenchRow& c = rows[at + 2];
        if (a.lp_skipped)
            std::snprintf(buf, sizeof buf, "%5d %5d  lp=skipped\n", a.n_c, a.n_f);
        else
            std::snprintf(buf, sizeof buf, "%5d %5d  %9.4f  %9.4f  %9.4f  %10.1f\n", a.n_c, a.n_f,
                          a.mean_ratio, b.mean_ratio, c.mean_ratio, a.wall_ms + b.wall_ms + c.wall_ms);
        s += buf;
    }
    return s;
}

}  // namespace facloc
