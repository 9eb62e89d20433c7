#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const std::string path = std::string(PDISC_CLI_PATH);
    const std::string out_file = "cli_test_out.tmp";
    const std::string cmd = path + " " + args + " > " + out_file + " 2>/dev/null";
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = (rc >= 256) ? rc / 256 : rc;
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

int count_lines(const std::string& s) {
    int n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("density subcommand") {
    const RunResult r = run_cli("density --p 2 --u 1");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    // x/(1-x)^2 / (2 pi) at x = 1/e.
    const double x = std::exp(-1.0);
    const double expect = x / ((1 - x) * (1 - x)) / (2 * std::numbers::pi);
    CHECK(std::fabs(j["value"].get<double>() - expect) <= 1e-9);
    CHECK(j["exit_code"].get<int>() == 0);

    const RunResult b = run_cli("density --p 7 --abs-z 0.99999");
    REQUIRE(b.exit_code == 0);
    const json jb = json::parse(b.out);
    CHECK(std::fabs(jb["value"].get<double>() - 6.0 / (2 * std::numbers::pi)) <=
          1e-5);
    CHECK(jb["method_used"] == "partial-fraction");
}

TEST_CASE("density usage errors exit 2") {
    CHECK(run_cli("density --p 2 --u 0").exit_code == 2);
    CHECK(run_cli("density --p 2").exit_code == 2);
    CHECK(run_cli("density --p 2 --u 1 --abs-z 0.5").exit_code == 2);
    CHECK(run_cli("density --p 2 --u 1 --method nope").exit_code == 2);
}

TEST_CASE("grid subcommand: row count, bump heights, determinism") {
    const std::string args =
        "grid --p-list 32,128,512 --x-min 0.05 --x-max 0.99 --points 400 "
        "--scaled";
    const RunResult r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    CHECK(count_lines(r.out) == 1201);  // header + 3 * 400 rows

    // Parse rows; check scaled heights near the bump centers for p = 512.
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,p,value");
    double best1 = 1e9, v1 = 0.0, best2 = 1e9, v2 = 0.0;
    while (std::getline(in, line)) {
        double x, v;
        int p;
        std::sscanf(line.c_str(), "%lf,%d,%lf", &x, &p, &v);
        if (p != 512) continue;
        if (std::fabs(x - std::exp(-1.0)) < best1) {
            best1 = std::fabs(x - std::exp(-1.0));
            v1 = v;
        }
        if (std::fabs(x - std::exp(-0.5)) < best2) {
            best2 = std::fabs(x - std::exp(-0.5));
            v2 = v;
        }
    }
    CHECK(std::fabs(v1 - 1.0) <= 0.05);
    CHECK(std::fabs(v2 - 0.5) <= 0.05);

    const RunResult again = run_cli(args);
    CHECK(again.out == r.out);

    CHECK(run_cli("grid --p-list 4 --x-min 0.9 --x-max 0.1 --points 10")
              .exit_code == 2);
}

TEST_CASE("offdiag on the diagonal equals density") {
    const RunResult off = run_cli("offdiag --p 3 --ux 1 --uy 1 --dtheta 0");
    const RunResult den = run_cli("density --p 3 --u 1");
    REQUIRE(off.exit_code == 0);
    REQUIRE(den.exit_code == 0);
    const double a = json::parse(off.out)["weighted_modulus"].get<double>();
    const double b = json::parse(den.out)["value"].get<double>();
    CHECK(std::fabs(a - b) / b <= 1e-10);
}

TEST_CASE("sup subcommand") {
    const RunResult r = run_cli("sup --p 400");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::fabs(j["scaled_sup"].get<double>() - 1.0) <= 0.05);
}

TEST_CASE("orbifold subcommand") {
    const RunResult r = run_cli("orbifold --p 3 --order 3 --abs-z 0");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(std::fabs(j["value"].get<double>() - 9.0 / std::numbers::pi) <= 1e-12);
}

TEST_CASE("verify subcommand") {
    CHECK(run_cli("verify --suite none").exit_code == 2);
    for (const std::string suite : {"orbifold", "quadrature"}) {
        const RunResult r = run_cli("verify --suite " + suite);
        REQUIRE(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j["exit_code"].get<int>() == 0);
        for (const auto& c : j["criteria"]) CHECK(c["pass"].get<bool>());
    }
    const RunResult fast = run_cli("verify --suite appendix --fast");
    REQUIRE(fast.exit_code == 0);
}
