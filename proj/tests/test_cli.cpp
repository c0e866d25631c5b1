#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "json.hpp"

using Catch::Approx;
using nlohmann::json;

namespace {

struct CmdResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

CmdResult run_cli(const std::string& args) {
    const std::string cmd = std::string(MCMAP_CLI_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, got);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("map solves the uniform anchor") {
    const auto r = run_cli("map --family beta --mean 0.5 --cstat 0.8333333333 --json");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.output);
    CHECK(out.at("converged").get<bool>());
    CHECK(out.at("params").at("alpha").get<double>() == Approx(1.0).margin(1e-4));
    CHECK(out.at("params").at("beta").get<double>() == Approx(1.0).margin(1e-4));
}

TEST_CASE("map rejects c below one half with a label-flip hint") {
    const auto r = run_cli("map --family beta --mean 0.5 --cstat 0.4");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("flip") != std::string::npos);
}

TEST_CASE("eval computes the forward map") {
    const auto r = run_cli("eval --family beta --p1 1 --p2 3 --json");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.output);
    CHECK(out.at("m").get<double>() == Approx(0.25).margin(1e-8));
    CHECK(out.at("c").get<double>() == Approx(0.785714285714).margin(1e-6));
}

TEST_CASE("map then eval reproduces the input pair") {
    const auto solved = run_cli("map --family logitnorm --mean 0.3 --cstat 0.75 --json");
    REQUIRE(solved.exit_code == 0);
    const json params = json::parse(solved.output).at("params");
    std::ostringstream cmd;
    cmd.precision(17);
    cmd << "eval --family logitnorm --p1 " << params.at("mu").get<double>() << " --p2 "
        << params.at("sigma").get<double>() << " --json";
    const auto round = run_cli(cmd.str());
    REQUIRE(round.exit_code == 0);
    const json out = json::parse(round.output);
    CHECK(out.at("m").get<double>() == Approx(0.3).margin(1e-6));
    CHECK(out.at("c").get<double>() == Approx(0.75).margin(1e-6));
}

TEST_CASE("generic mapping through the CLI") {
    const auto r = run_cli(
        "map --family generic --base probitnorm --mean 0.5 --cstat 0.8333333333 --json");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.output);
    CHECK(out.at("params").at("mu").get<double>() == Approx(0.0).margin(1e-3));
    CHECK(out.at("params").at("sigma").get<double>() == Approx(1.0).margin(1e-3));
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run_cli("map --family beta --mean 0.5 --cstat 0.8 --bogus-flag").exit_code == 1);
    CHECK(run_cli("map --family beta --mean notanumber --cstat 0.8").exit_code == 1);
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("domain errors exit with code 2") {
    CHECK(run_cli("map --family beta --mean 1.5 --cstat 0.8").exit_code == 2);
    CHECK(run_cli("map --family weibull --mean 0.3 --cstat 0.8").exit_code == 2);
    CHECK(run_cli("eval --family beta --p1 -2 --p2 1").exit_code == 2);
    CHECK(run_cli("counterexample --kind mode --a 0.5").exit_code == 2);
}

TEST_CASE("counterexample subcommand verifies a pair") {
    const auto r = run_cli("counterexample --kind mode --a 0.2 --json");
    REQUIRE(r.exit_code == 0);
    const json out = json::parse(r.output);
    CHECK(out.at("verified").get<bool>());
    CHECK(out.at("mode_1").get<double>() == Approx(0.5).margin(1e-4));
    const auto med = run_cli("counterexample --kind median --a 0.1");
    CHECK(med.exit_code == 0);
    CHECK(med.output.find("verified: true") != std::string::npos);
}

TEST_CASE("grid emits a stable, exactly-headed CSV") {
    const std::string base =
        "grid --families beta --m-from 0.3 --m-to 0.4 --m-step 0.1 "
        "--c-from 0.7 --c-to 0.75 --c-step 0.05 --se 0.02 --seed 17 --out ";
    REQUIRE(run_cli(base + "cli_grid_a.csv").exit_code == 0);
    REQUIRE(run_cli(base + "cli_grid_b.csv").exit_code == 0);
    REQUIRE(run_cli(base + "cli_grid_c.csv --threads 3").exit_code == 0);
    const auto a = slurp("cli_grid_a.csv");
    CHECK(a == slurp("cli_grid_b.csv"));
    CHECK(a == slurp("cli_grid_c.csv"));
    CHECK(a.rfind("family,m,c,p1,p2,n,m_hat,c_hat,dm,dc,converged,seed\n", 0) == 0);
    // 2 m-values x 2 c-values + header
    int lines = 0;
    for (char ch : a) lines += ch == '\n';
    CHECK(lines == 5);
    std::remove("cli_grid_a.csv");
    std::remove("cli_grid_b.csv");
    std::remove("cli_grid_c.csv");
}
