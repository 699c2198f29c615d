// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <nlohmann/json.hpp>

#ifndef SDOFSIM_CLI_PATH
#error "SDOFSIM_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI through /bin/sh, capturing stdout. stderr is dropped so parse
// errors stay quiet in the test log. `env` may hold VAR=value assignments.
RunResult run_cli(const std::string &args, const std::string &env = {}) {
    const std::string cmd = (env.empty() ? std::string{} : env + " ") +
                            std::string(SDOFSIM_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

} // namespace

TEST_CASE("closed-form query prints the exact value with a decimal rendering") {
    const RunResult r = run_cli("sdof --m 4 --n1 2 --neve 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "2/3 (0.666667)\n");

    const RunResult r2 = run_cli("sdof --m 3 --n1 1 --neve 2");
    CHECK(r2.exit_code == 0);
    CHECK(r2.out == "1/2 (0.5)\n");

    const RunResult r3 = run_cli("sdof --m 5 --n1 2 --neve 2");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out == "1 (1)\n");

    // Eavesdroppers enter only through the largest count.
    const RunResult r4 = run_cli("sdof --m 4 --n1 2 --neve 3,1,2");
    CHECK(r4.exit_code == 0);
    CHECK(r4.out == "2/3 (0.666667)\n");
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("sdof --m 4 --n1 2").exit_code == 2);          // missing --neve
    CHECK(run_cli("sdof --m 4 --n1 0 --neve 3").exit_code == 2); // invalid count
    CHECK(run_cli("").exit_code == 2);                           // subcommand required
    CHECK(run_cli("frobnicate").exit_code == 2);                 // unknown subcommand
    CHECK(run_cli("converse --lemma bogus --m 4 --n1 2 --neve 3").exit_code == 2);
    CHECK(run_cli("converse --lemma lal --strategy sneaky --m 4 --n1 2 --neve 3").exit_code == 2);
    CHECK(run_cli("simulate --format yaml").exit_code == 2);
    // Two-phase strategy outside its regime.
    CHECK(run_cli("converse --lemma lal --m 2 --n1 2 --neve 3 --trials 5").exit_code == 2);
    // Enumeration past the cap.
    CHECK(run_cli("ais --p 4 --m 4 --grid 64").exit_code == 2);
}

TEST_CASE("help exits cleanly") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("simulate --help").exit_code == 0);
    CHECK(run_cli("--version").out == std::string("sdofsim 0.1.0\n"));
}

TEST_CASE("simulation subcommand reports and round-trips through a config file") {
    const RunResult json = run_cli("simulate --m 4 --n1 2 --neve 3 --trials 4 --seed 9");
    CHECK(json.exit_code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc.at("regime").get<std::string>() == "two-phase");
    CHECK(doc.at("sdof").get<std::string>() == "2/3");
    CHECK(doc.at("passed").get<bool>());
    CHECK(doc.contains("meta"));

    // Feed the embedded config back through --config: same checks pass.
    const std::filesystem::path cfg_path =
        std::filesystem::temp_directory_path() / "sdofsim_cli_cfg.json";
    {
        std::ofstream f{cfg_path};
        f << doc.at("config").dump();
    }
    const RunResult again =
        run_cli("simulate --config " + cfg_path.string() + " --trials 3 --format csv");
    CHECK(again.exit_code == 0);
    CHECK(again.out.rfind("check,trials,passes,failures,degenerate,passed\n", 0) == 0);
    CHECK(again.out.find("decode-roundtrip,3,3,0,0,true") != std::string::npos);
    std::filesystem::remove(cfg_path);
}

TEST_CASE("no-positive-sdof configurations succeed with an empty check list") {
    const RunResult r = run_cli("simulate --m 2 --n1 2 --neve 3 --trials 2");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("regime").get<std::string>() == "no-positive-sdof");
    CHECK(doc.at("checks").empty());
}

TEST_CASE("converse subcommand runs every inequality under both strategies") {
    for (const std::string lemma :
         {"lal", "delayed", "nocsit", "nocsit-cond", "joint", "prop1", "prop2"}) {
        for (const std::string strategy : {"random", "two-phase"}) {
            const RunResult r =
                run_cli("converse --lemma " + lemma + " --strategy " + strategy +
                        " --m 4 --n1 2 --neve 3 --trials 10 --seed 4");
            INFO("lemma=" << lemma << " strategy=" << strategy);
            CHECK(r.exit_code == 0);
            const auto doc = nlohmann::json::parse(r.out);
            CHECK(doc.at("passed").get<bool>());
            CHECK(doc.at("trials").get<int>() == 10);
            CHECK(doc.at("strategy").get<std::string>() == strategy);
            CHECK(!doc.at("note").get<std::string>().empty());
        }
    }
}

TEST_CASE("table subcommand emits exact rational cells") {
    const RunResult csv = run_cli("tables --format csv --max-m 4 --max-n1 2 --max-nmax 3");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("m,n1,nmax,sdof,prior,reference\n", 0) == 0);
    CHECK(csv.out.find("4,2,3,2/3,1/2,4/5") != std::string::npos);
    CHECK(csv.out.find("3,1,2,1/2,1/3,3/5") != std::string::npos);

    const RunResult json = run_cli("tables --max-m 4 --max-n1 2 --max-nmax 3");
    CHECK(json.exit_code == 0);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc.at("sdof_comparison").size() == 4 * 2 * 3);
    CHECK(doc.at("achievability_examples").size() == 2);
    CHECK(doc.at("regime_formulas").at("rows").size() == 2);
}

TEST_CASE("alignment subcommand checks both bounds") {
    const RunResult r = run_cli("ais --p 16 --m 1 --grid 8 --dmax 2 --samples 64 --seed 2");
    CHECK(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("prob_bound_holds").get<bool>());
    CHECK(doc.at("size_bound_holds").get<bool>());
    CHECK(doc.at("passed").get<bool>());
    CHECK(doc.at("states").get<int>() == 5);
}

TEST_CASE("relative output paths land under the configured directory") {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "sdofsim_cli_outdir";
    std::filesystem::remove_all(dir);
    const RunResult r = run_cli("tables --format csv --out nested/t.csv",
                                "SDOFSIM_OUT_DIR=" + dir.string());
    CHECK(r.exit_code == 0);
    std::ifstream f{dir / "nested" / "t.csv"};
    REQUIRE(f.good());
    std::string header;
    std::getline(f, header);
    CHECK(header == "m,n1,nmax,sdof,prior,reference");
    std::filesystem::remove_all(dir);
}
