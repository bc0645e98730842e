// facloc: facility location solvers, variants, benchmarks, and the
// factor-revealing LP workbench on the command line.

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "facloc/bench.hpp"
#include "facloc/core.hpp"
#include "facloc/frlp.hpp"
#include "facloc/generators.hpp"
#include "facloc/io.hpp"
#include "facloc/relaxation.hpp"
#include "facloc/solvers.hpp"
#include "facloc/variants.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitParam = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw facloc::ParseError("cannot open '" + path + "'", 0);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw facloc::ParamError("cannot write '" + path + "'");
    out << text;
}

std::string fmt(double v) {
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

struct SolveOptions {
    std::string input;
    std::string format = "native";
    std::string alg = "greedy2";
    std::string cert_path;
    bool shares = false;
    bool use_penalties = false;
    int fault_r = 0;
    int robust_l = -1;
    int k_max = 0;
    int soft_cap = 0;
};

double alg_gamma(const std::string& alg) {
    if (alg == "greedy2") return 1.61;
    if (alg == "jv") return 1.0;
    return 1.861;
}

int run_solve(const SolveOptions& opt) {
    facloc::Instance inst = opt.format == "orlib" ? facloc::parse_orlib(read_file(opt.input))
                                                  : facloc::from_native(read_file(opt.input));

    int variant_flags = (opt.use_penalties ? 1 : 0) + (opt.fault_r > 0 ? 1 : 0) +
                        (opt.robust_l >= 0 ? 1 : 0) + (opt.k_max > 0 ? 1 : 0) +
                        (opt.soft_cap > 0 ? 1 : 0);
    if (variant_flags > 1) {
        std::cerr << "error: variant flags (--penalties/--fault/--robust/--k/--soft-cap) "
                     "are mutually exclusive\n";
        return kExitParse;
    }
    if (opt.fault_r > inst.n_f)
        throw facloc::ParamError("--fault: r exceeds the facility count");
    if (opt.robust_l >= inst.n_c && opt.robust_l >= 0)
        throw facloc::ParamError("--robust: l must be smaller than the city count");
    if (opt.k_max > inst.n_f)
        throw facloc::ParamError("--k: k exceeds the facility count");
    facloc::Alg alg_id = opt.alg == "greedy1" || opt.alg == "greedy1-star" ? facloc::Alg::Greedy1
                                                                           : facloc::Alg::Greedy2;

    facloc::Solution sol;
    std::vector<double> alpha;
    bool have_alpha = false;

    if (opt.use_penalties) {
        if (!inst.has_penalties()) throw facloc::ParamError("--penalties: instance has no p section");
        auto out = facloc::solve_with_penalties(inst, alg_id);
        sol = out.solution;
        alpha = out.cert.alpha;
        have_alpha = true;
    } else if (opt.fault_r > 0) {
        auto out = facloc::solve_fault_tolerant_uniform(inst, opt.fault_r);
        sol = out.solution;
        alpha = out.cert.alpha;
        have_alpha = true;
    } else if (opt.robust_l >= 0) {
        sol = facloc::solve_robust(inst, opt.robust_l);
    } else if (opt.k_max > 0) {
        sol = facloc::solve_k_facility(inst, opt.k_max);
    } else if (opt.soft_cap > 0) {
        auto res = facloc::solve_soft_capacitated(inst, std::vector<int>(inst.n_f, opt.soft_cap));
        sol = res.solution;
        std::string mult = "multiplicity:";
        for (int m : res.multiplicity) mult += " " + std::to_string(m);
        std::cout << mult << "\n";
    } else {
        facloc::SolverOutput out;
        if (opt.alg == "greedy1") out = facloc::greedy1_restatement(inst);
        else if (opt.alg == "greedy1-star") out = facloc::greedy1_star(inst);
        else if (opt.alg == "jv") out = facloc::jv(inst);
        else out = facloc::greedy2(inst);
        sol = out.solution;
        alpha = out.cert.alpha;
        have_alpha = true;
        if (opt.alg != "jv") {
            // hard internal consistency gate before anything is printed
            double sum = 0.0;
            for (int j = 0; j < inst.n_c; ++j) sum += inst.d(j) * alpha[j];
            if (std::abs(sum - sol.total()) > 1e-6 * (1.0 + sol.total()))
                throw facloc::ParamError("internal check failed: dual sum != total cost");
        }
    }

    std::cout << "facility_cost " << fmt(sol.facility_cost) << "\n";
    std::cout << "connection_cost " << fmt(sol.connection_cost) << "\n";
    std::cout << "penalty_cost " << fmt(sol.penalty_cost) << "\n";
    std::cout << "total " << fmt(sol.total()) << "\n";
    std::cout << "open";
    for (int i : sol.open) std::cout << " " << i;
    std::cout << "\n";
    if (have_alpha) {
        double sum = 0.0;
        for (int j = 0; j < inst.n_c; ++j) sum += inst.d(j) * alpha[j];
        std::cout << "alpha_sum " << fmt(sum) << "\n";
        if (opt.shares) {
            std::cout << "shares";
            for (double a : alpha) std::cout << " " << fmt(a);
            std::cout << "\n";
        }
    }
    if (!opt.cert_path.empty()) {
        if (!have_alpha) throw facloc::ParamError("--cert: selected variant produces no certificate");
        double gamma = opt.fault_r > 0 ? 1.861 : alg_gamma(opt.alg);
        std::string text = "gamma " + fmt(gamma) + "\n";
        text += "alpha";
        for (double a : alpha) text += " " + fmt(a);
        text += "\n";
        write_file(opt.cert_path, text);
    }
    return 0;
}

struct BenchOptions {
    std::string suite = "grid";
    std::vector<std::string> sizes;
    int trials = 15;
    std::uint64_t seed = 1;
    std::string csv_path;
};

int run_bench(const BenchOptions& opt) {
    facloc::BenchSpec spec;
    spec.suite = opt.suite == "gnp" ? facloc::GenSpec::Kind::Gnp : facloc::GenSpec::Kind::Grid;
    spec.trials = opt.trials;
    spec.seed = opt.seed;
    for (const std::string& group : opt.sizes) {
        std::istringstream ss(group);
        std::string s;
        while (std::getline(ss, s, ',')) {
            if (s.empty()) continue;
            auto x = s.find('x');
            facloc::BenchSize size;
            try {
                if (x == std::string::npos) throw std::invalid_argument("no x");
                size.n_c = std::stoi(s.substr(0, x));
                size.n_f = std::stoi(s.substr(x + 1));
            } catch (const std::exception&) {
                throw facloc::ParamError("--sizes: expected N_CxN_F, got '" + s + "'");
            }
            spec.sizes.push_back(size);
        }
    }
    if (spec.sizes.empty()) spec.sizes = {{50, 20}, {100, 20}};
    auto rows = facloc::run_bench(spec);
    std::string csv = facloc::bench_csv(rows);
    if (!opt.csv_path.empty()) write_file(opt.csv_path, csv);
    std::cout << csv << "\n" << facloc::bench_table(rows);
    return 0;
}

struct FrlpOptions {
    std::string kind = "alg1";
    int k = 1;
    double gamma_f = 1.0;
    bool cumulative = false;
    std::string export_path;
    std::string tight_path;
    std::vector<double> curve;
};

int run_frlp(const FrlpOptions& opt) {
    facloc::FrlpSpec spec;
    spec.k = opt.k;
    spec.gamma_f = opt.gamma_f;
    if (opt.kind == "alg1") spec.kind = facloc::FrlpSpec::Kind::Alg1;
    else if (opt.kind == "alg2") spec.kind = facloc::FrlpSpec::Kind::Alg2;
    else if (opt.kind == "tradeoff") spec.kind = facloc::FrlpSpec::Kind::Tradeoff;
    else throw facloc::ParamError("--kind must be alg1|alg2|tradeoff");

    if (!opt.export_path.empty()) {
        write_file(opt.export_path, facloc::export_lp_text(facloc::build_frlp(spec)));
        std::cout << "exported " << opt.export_path << "\n";
        if (spec.k > facloc::kFrlpSizeGuard) return 0;
    }
    if (spec.k > facloc::kFrlpSizeGuard) {
        std::cerr << "error: --k " << spec.k << " exceeds the dense-solver guard ("
                  << facloc::kFrlpSizeGuard << "); use --export and an external solver\n";
        return kExitParam;
    }

    if (!opt.curve.empty()) {
        if (spec.kind != facloc::FrlpSpec::Kind::Tradeoff)
            throw facloc::ParamError("--curve requires --kind tradeoff");
        std::cout << "gamma_f,gamma_c\n";
        for (double gf : opt.curve) {
            facloc::FrlpSpec pt = spec;
            pt.gamma_f = gf;
            std::printf("%.6f,%.6f\n", gf, facloc::solve_frlp(pt));
        }
        return 0;
    }

    facloc::LpSolution lp = facloc::solve_frlp_model(spec);
    if (lp.status != facloc::LpStatus::Optimal)
        throw facloc::ParamError(std::string("frlp solve failed: ") + facloc::to_string(lp.status));
    std::cout << "z_" << spec.k << " " << fmt(lp.objective) << "\n";
    if (opt.cumulative)
        std::cout << "max_z_upto_" << spec.k << " " << fmt(facloc::solve_frlp_cumulative(spec)) << "\n";
    if (!opt.tight_path.empty()) {
        if (spec.kind != facloc::FrlpSpec::Kind::Alg1)
            throw facloc::ParamError("--tight requires --kind alg1");
        write_file(opt.tight_path, facloc::to_native(facloc::tight_instance(spec, lp)));
        std::cout << "tight instance written to " << opt.tight_path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"facility location solver toolkit"};
    app.require_subcommand(1);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand("solve", "solve one instance");
    solve->add_option("--input", solve_opt.input, "instance file")->required();
    solve->add_option("--format", solve_opt.format, "orlib|native")
        ->check(CLI::IsMember({"orlib", "native"}));
    solve->add_option("--alg", solve_opt.alg, "greedy1|greedy1-star|greedy2|jv")
        ->check(CLI::IsMember({"greedy1", "greedy1-star", "greedy2", "jv"}));
    solve->add_flag("--shares", solve_opt.shares, "print per-city cost shares");
    solve->add_option("--cert", solve_opt.cert_path, "write the dual certificate here");
    solve->add_flag("--penalties", solve_opt.use_penalties, "penalty variant (uses the p section)");
    solve->add_option("--fault", solve_opt.fault_r, "fault-tolerant connectivity requirement r");
    solve->add_option("--robust", solve_opt.robust_l, "robust variant: cities allowed unconnected");
    solve->add_option("--k", solve_opt.k_max, "open at most k facilities");
    solve->add_option("--soft-cap", solve_opt.soft_cap, "soft capacity per facility");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "seeded benchmark batches vs the LP bound");
    bench->add_option("--suite", bench_opt.suite, "grid|gnp")->check(CLI::IsMember({"grid", "gnp"}));
    bench->add_option("--sizes", bench_opt.sizes, "sizes as N_CxN_F, e.g. 100x20");
    bench->add_option("--trials", bench_opt.trials, "instances per size");
    bench->add_option("--seed", bench_opt.seed, "seed base");
    bench->add_option("--csv", bench_opt.csv_path, "also write the CSV here");

    FrlpOptions frlp_opt;
    CLI::App* frlp = app.add_subcommand("frlp", "factor-revealing LP workbench");
    frlp->add_option("--kind", frlp_opt.kind, "alg1|alg2|tradeoff");
    frlp->add_option("--k", frlp_opt.k, "star size")->required();
    frlp->add_option("--gamma-f", frlp_opt.gamma_f, "facility factor (tradeoff)");
    frlp->add_flag("--cumulative", frlp_opt.cumulative, "also report max_{i<=k} z_i");
    frlp->add_option("--export", frlp_opt.export_path, "write the LP in text form");
    frlp->add_option("--tight", frlp_opt.tight_path, "write the worst-case instance (alg1)");
    frlp->add_option("--curve", frlp_opt.curve, "gamma_f sweep, emits CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (solve->parsed()) return run_solve(solve_opt);
        if (bench->parsed()) return run_bench(bench_opt);
        if (frlp->parsed()) return run_frlp(frlp_opt);
    } catch (const facloc::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const facloc::ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParam;
    }
    return 0;
}
