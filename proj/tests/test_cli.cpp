#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "facloc/core.hpp"
#include "facloc/io.hpp"
#include "test_util.hpp"

namespace {

const char* cli = FACLOC_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/facloc_cli_out.txt";
    std::string cmd = std::string(cli) + " " + args + " > " + out_path + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult res;
    res.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    res.out = slurp(out_path);
    return res;
}

std::string tmp_file(const std::string& name, const std::string& content) {
    std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/" + name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("cli solve: one-star native instance") {
    facloc::Instance inst = facloc_test::make_instance({5}, {{3}});
    std::string path = tmp_file("one_star.fl", facloc::to_native(inst));
    RunResult r = run("solve --input " + path + " --alg greedy2 --shares");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("total 8") != std::string::npos);
    CHECK(r.out.find("alpha_sum 8") != std::string::npos);
    CHECK(r.out.find("shares 8") != std::string::npos);
}

TEST_CASE("cli solve: orlib format end to end") {
    std::string path = tmp_file("mini.orlib", "2 2  0 4  0 6  1  1 5  2  8 2");
    RunResult r = run("solve --input " + path + " --format orlib --alg greedy2");
    CHECK(r.exit_code == 0);
    // facility 0 (f=4) serves city 0 at 1 and city 1 at 4/unit * demand 2
    CHECK(r.out.find("facility_cost") != std::string::npos);
    CHECK(r.out.find("total") != std::string::npos);

    RunResult bad = run("solve --input " + path + " --format native");
    CHECK(bad.exit_code == 2);
}

TEST_CASE("cli solve: greedy1 certificate passes the overtight check at 1.861") {
    facloc::Instance inst = facloc_test::small_metric_instance(6, 12, 4040);
    std::string path = tmp_file("grid.fl", facloc::to_native(inst));
    std::string cert_path = tmp_file("grid.cert", "");
    RunResult r = run("solve --input " + path + " --alg greedy1 --cert " + cert_path);
    REQUIRE(r.exit_code == 0);

    std::istringstream in(slurp(cert_path));
    std::string key;
    double gamma;
    REQUIRE((in >> key >> gamma));
    REQUIRE(key == "gamma");
    CHECK(gamma == doctest::Approx(1.861));
    facloc::DualCertificate cert;
    cert.gamma = gamma;
    REQUIRE((in >> key));
    REQUIRE(key == "alpha");
    double a;
    while (in >> a) cert.alpha.push_back(a);
    REQUIRE(static_cast<int>(cert.alpha.size()) == inst.n_c);
    CHECK(facloc::overtight_feasible(facloc::check_overtight(inst, cert), 1e-6));
}

TEST_CASE("cli solve: robust l = n_c exits 3 naming the flag") {
    facloc::Instance inst = facloc_test::make_instance({1, 2}, {{1, 2}, {2, 1}});
    std::string path = tmp_file("robust.fl", facloc::to_native(inst));
    RunResult r = run("solve --input " + path + " --robust 2");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("--robust") != std::string::npos);
}

TEST_CASE("cli solve: unreadable input exits 2") {
    RunResult r = run("solve --input /nonexistent/file.fl");
    CHECK(r.exit_code == 2);
}

TEST_CASE("cli solve: mutually exclusive variant flags exit 2") {
    facloc::Instance inst = facloc_test::make_instance({1}, {{1}});
    std::string path = tmp_file("excl.fl", facloc::to_native(inst));
    RunResult r = run("solve --input " + path + " --fault 1 --k 1");
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("mutually exclusive") != std::string::npos);
}

TEST_CASE("cli bench: CSV is byte-stable and ratio-sane") {
    std::string csv_a = tmp_file("bench_a.csv", "");
    std::string csv_b = tmp_file("bench_b.csv", "");
    std::string args = "bench --suite grid --sizes 20x6 --trials 3 --seed 11";
    RunResult a = run(args + " --csv " + csv_a);
    RunResult b = run(args + " --csv " + csv_b);
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(slurp(csv_a) == slurp(csv_b));  // wall time stays out of the CSV
    CHECK(a.out.find("n_c,n_f,alg,mean_ratio,trials,seed") != std::string::npos);
    // column order: jv, then greedy1, then greedy2
    auto jv_at = a.out.find(",jv,");
    auto g1_at = a.out.find(",greedy1,");
    auto g2_at = a.out.find(",greedy2,");
    REQUIRE(jv_at != std::string::npos);
    CHECK(jv_at < g1_at);
    CHECK(g1_at < g2_at);

    std::istringstream in(a.out.substr(a.out.find('\n') + 1));
    std::string line;
    int rows = 0;
    while (std::getline(in, line) && line.find(',') != std::string::npos) {
        auto at = line.find(",1.");
        bool ratio_ge_one = at != std::string::npos || line.find(",0.999") != std::string::npos ||
                            line.find(",1,") != std::string::npos;
        CHECK(ratio_ge_one);
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("cli bench: oversized rows are marked lp=skipped") {
    RunResult r = run("bench --suite grid --sizes 600x60 --trials 1 --seed 3");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("lp=skipped") != std::string::npos);
}

TEST_CASE("cli frlp: alg2 k=4 prints z and cumulative max") {
    RunResult r = run("frlp --kind alg2 --k 4 --cumulative");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("z_4 ") != std::string::npos);
    CHECK(r.out.find("max_z_upto_4 ") != std::string::npos);
}

TEST_CASE("cli frlp: tradeoff gamma_f=1 k=10 reports 1.9") {
    RunResult r = run("frlp --kind tradeoff --gamma-f 1 --k 10");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("z_10 1.9") != std::string::npos);
}

TEST_CASE("cli frlp: tight instance loop reproduces the 1.5 gap") {
    std::string tight_path = tmp_file("tight2.fl", "");
    RunResult r = run("frlp --kind alg1 --k 2 --tight " + tight_path);
    REQUIRE(r.exit_code == 0);
    facloc::Instance inst = facloc::from_native(slurp(tight_path));
    CHECK(inst.n_f == 3);
    CHECK(inst.n_c == 2);

    RunResult greedy = run("solve --input " + tight_path + " --alg greedy1");
    REQUIRE(greedy.exit_code == 0);
    auto at = greedy.out.find("total ");
    double total = std::stod(greedy.out.substr(at + 6));
    double opt = facloc::brute_force_opt(inst).total();
    CHECK(total / opt >= 1.5 - 1e-4);
    CHECK(total / opt <= 1.5 + 1e-4);
}

TEST_CASE("cli frlp: oversized k without export exits 3") {
    RunResult r = run("frlp --kind alg2 --k 100");
    CHECK(r.exit_code == 3);
    CHECK(r.out.find("--export") != std::string::npos);
}

TEST_CASE("cli frlp: oversized k with export succeeds") {
    std::string path = tmp_file("big.lp", "");
    RunResult r = run("frlp --kind alg1 --k 100 --export " + path);
    CHECK(r.exit_code == 0);
    std::string text = slurp(path);
    CHECK(text.find("Maximize") == 0);
    CHECK(text.find("a100") != std::string::npos);
}
