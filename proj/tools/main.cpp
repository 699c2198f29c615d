// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "sdofsim/aligned_images.hpp"
#include "sdofsim/converse.hpp"
#include "sdofsim/errors.hpp"
#include "sdofsim/experiment.hpp"
#include "sdofsim/sdof.hpp"

namespace {

using namespace sdofsim;

// Exit codes: 0 every check passed (or the command is purely informational),
// 1 the run completed but a check failed, 2 the invocation could not produce
// a verdict (bad flags, invalid parameters, I/O problems).
constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

std::filesystem::path resolve_out(const std::string &out) {
    std::filesystem::path p{out};
    if (p.is_relative()) {
        if (const char *dir = std::getenv(kOutDirEnvVar); dir != nullptr && *dir != '\0')
            p = std::filesystem::path{dir} / p;
    }
    return p;
}

// Empty path -> stdout. Relative paths land under $SDOFSIM_OUT_DIR when set.
void write_output(const std::string &payload, const std::string &out) {
    if (out.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n')
            std::cout << '\n';
        return;
    }
    const std::filesystem::path path = resolve_out(out);
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream f{path, std::ios::binary};
    f << payload;
    if (payload.empty() || payload.back() != '\n')
        f << '\n';
    if (!f)
        throw std::runtime_error("cannot write " + path.string());
}

AntennaConfig make_config(int m, int n1, const std::vector<int> &neve) {
    std::vector<int> n{n1};
    n.insert(n.end(), neve.begin(), neve.end());
    return AntennaConfig(m, std::move(n)); // validates
}

ordered_json antennas_json(const AntennaConfig &cfg) {
    ordered_json j;
    j["m"] = cfg.m;
    j["n1"] = cfg.n1();
    j["eavesdroppers"] = std::vector<int>(cfg.n.begin() + 1, cfg.n.end());
    return j;
}

std::string format_value(const Rational &r) {
    std::ostringstream os;
    os << to_string(r) << " (" << to_double(r) << ")";
    return os.str();
}

// ---------------------------------------------------------------- sdof ----

struct SdofOpts {
    int m = 0;
    int n1 = 0;
    std::vector<int> neve;
};

int run_sdof(const SdofOpts &o) {
    const AntennaConfig cfg = make_config(o.m, o.n1, o.neve);
    std::cout << format_value(compute_sdof(cfg)) << '\n';
    return kExitPass;
}

// -------------------------------------------------------------- tables ----

struct TablesOpts {
    int max_m = 6;
    int max_n1 = 4;
    int max_nmax = 4;
    std::string format = "json";
    std::string out;
};

int run_tables(const TablesOpts &o) {
    const std::vector<ComparisonRow> rows =
        comparison_table(sweep_configs(o.max_m, o.max_n1, o.max_nmax));

    if (o.format == "csv") {
        std::ostringstream os;
        os << "m,n1,nmax,sdof,prior,reference\n";
        for (const ComparisonRow &r : rows) {
            os << r.config.m << ',' << r.config.n1() << ',' << r.config.n_max() << ','
               << to_string(r.sdof) << ',' << (r.prior ? to_string(*r.prior) : std::string{})
               << ',' << to_string(r.reference) << '\n';
        }
        write_output(os.str(), o.out);
        return kExitPass;
    }

    ordered_json doc;
    doc["sdof_comparison"] = ordered_json::array();
    for (const ComparisonRow &r : rows) {
        ordered_json row = antennas_json(r.config);
        row["sdof"] = to_string(r.sdof);
        row["prior"] = r.prior ? ordered_json(to_string(*r.prior)) : ordered_json(nullptr);
        row["reference"] = to_string(r.reference);
        doc["sdof_comparison"].push_back(std::move(row));
    }
    doc["achievability_examples"] = ordered_json::array();
    for (const AchievabilityExample &e : achievability_examples()) {
        ordered_json row;
        row["regime"] = e.regime;
        row.update(antennas_json(e.example));
        row["prior"] = to_string(e.prior);
        row["sdof"] = to_string(e.sdof);
        doc["achievability_examples"].push_back(std::move(row));
    }
    ordered_json formulas;
    formulas["headers"] = kRegimeHeaders;
    formulas["rows"] = ordered_json::array();
    for (const RegimeFormulaRow &r : regime_formula_table()) {
        ordered_json row;
        row["network"] = r.network;
        row["formulas"] = r.formulas;
        formulas["rows"].push_back(std::move(row));
    }
    doc["regime_formulas"] = std::move(formulas);
    write_output(doc.dump(2), o.out);
    return kExitPass;
}

// ------------------------------------------------------------ simulate ----

struct SimulateOpts {
    std::string config_path;
    int m = 0;
    int n1 = 0;
    std::vector<int> neve;
    std::uint64_t seed = 0;
    int trials = 0;
    int workers = 0;
    double p = 0.0;
    bool noisy = false;
    std::string format = "json";
    std::string out;
};

ExperimentConfig load_config_file(const std::string &path) {
    std::ifstream f{path};
    if (!f)
        throw std::invalid_argument("cannot read config file " + path);
    ordered_json j;
    f >> j;
    return ExperimentConfig::from_json(j);
}

int run_simulate(const CLI::App &sub, const SimulateOpts &o) {
    ExperimentConfig cfg;
    if (sub.count("--config") != 0U)
        cfg = load_config_file(o.config_path);
    if (sub.count("--m") != 0U)
        cfg.m = o.m;
    if (sub.count("--n1") != 0U)
        cfg.n1 = o.n1;
    if (sub.count("--neve") != 0U)
        cfg.eavesdroppers = o.neve;
    if (sub.count("--seed") != 0U)
        cfg.seed = o.seed;
    if (sub.count("--trials") != 0U)
        cfg.trials = o.trials;
    if (sub.count("--workers") != 0U)
        cfg.workers = o.workers;
    if (sub.count("--power") != 0U)
        cfg.p = o.p;
    if (sub.count("--noisy") != 0U)
        cfg.noisy = o.noisy;

    const auto start = std::chrono::steady_clock::now();
    const ExperimentReport rep = run_simulation(cfg);
    const double elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();

    write_output(o.format == "csv" ? rep.to_csv() : rep.to_json(true, elapsed_ms).dump(2), o.out);
    return rep.passed() ? kExitPass : kExitCheckFailed;
}

// ------------------------------------------------------------ converse ----

struct ConverseOpts {
    std::string lemma;
    std::string strategy = "two-phase";
    int m = 0;
    int n1 = 0;
    std::vector<int> neve;
    std::uint64_t seed = 1;
    int trials = 1000;
    std::string format = "json";
    std::string out;
};

int run_converse(const ConverseOpts &o) {
    const AntennaConfig cfg = make_config(o.m, o.n1, o.neve);
    const ChannelLaw law{};
    const LinearStrategy strategy = o.strategy == "two-phase"
                                        ? LinearStrategy::two_phase(cfg)
                                        : LinearStrategy::channel_independent(cfg.m, 1, cfg.m);

    const int n1 = cfg.n1();
    const int nmax = cfg.n_max();
    ConverseCheckReport rep;
    if (o.lemma == "lal") {
        rep = check_least_alignment(n1, strategy, law, o.trials, o.seed);
    } else if (o.lemma == "delayed") {
        rep = check_eri_delayed(n1, nmax, strategy, law, o.trials, o.seed);
    } else if (o.lemma == "nocsit") {
        rep = check_eri_nocsit(std::max(n1, nmax), std::min(n1, nmax), 0, strategy, law,
                               o.trials, o.seed);
    } else if (o.lemma == "nocsit-cond") {
        rep = check_eri_nocsit(std::max(n1, nmax), std::min(n1, nmax), std::min(n1, nmax),
                               strategy, law, o.trials, o.seed);
    } else if (o.lemma == "joint") {
        rep = check_joint_claim(n1, 1, 1, strategy, law, o.trials, o.seed);
    } else if (o.lemma == "prop1") {
        rep = check_proposition1(cfg, strategy, law, o.trials, o.seed);
    } else { // prop2, enforced by the flag validator
        rep = check_proposition2(cfg, strategy, law, o.trials, o.seed);
    }

    if (o.format == "csv") {
        std::ostringstream os;
        os << "check,strategy,trials,holds,violations,degenerate,passed\n"
           << rep.check << ',' << strategy.name() << ',' << rep.trials << ',' << rep.holds << ','
           << rep.violations << ',' << rep.degenerate << ','
           << (rep.passed ? "true" : "false") << '\n';
        write_output(os.str(), o.out);
    } else {
        ordered_json doc;
        doc["check"] = rep.check;
        doc["strategy"] = strategy.name();
        doc["config"] = antennas_json(cfg);
        doc["trials"] = rep.trials;
        doc["holds"] = rep.holds;
        doc["violations"] = rep.violations;
        doc["degenerate"] = rep.degenerate;
        doc["lhs_mean"] = rep.lhs_mean;
        doc["rhs_mean"] = rep.rhs_mean;
        doc["passed"] = rep.passed;
        doc["failing_streams"] = rep.failing_streams;
        doc["note"] = rep.note;
        write_output(doc.dump(2), o.out);
    }
    return rep.passed ? kExitPass : kExitCheckFailed;
}

// ----------------------------------------------------------------- ais ----

struct AisOpts {
    std::int64_t p = 4;
    int m = 1;
    int grid = 8;
    std::int64_t dmax = 2;
    std::uint64_t samples = 64;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out;
};

int run_ais(const AisOpts &o) {
    DeterministicChannelSpec spec;
    spec.p = o.p;
    spec.m = o.m;
    spec.n0 = 1;
    spec.slots = 1;
    spec.d_max = Rational(o.dmax);
    spec.grid_points = o.grid;

    const AlignedImageSetReport rep = check_alignment_bounds(spec, o.samples, o.seed);

    if (o.format == "csv") {
        std::ostringstream os;
        os << "states,g1_checked,g2_combos,prob_bound_holds,prob_worst_margin,avg_size_max,"
              "size_bound_exact,size_bound_holds,passed\n"
           << rep.states << ',' << rep.g1_combos_checked << ',' << rep.g2_combos << ','
           << (rep.prob_bound_holds ? "true" : "false") << ',' << rep.prob_worst_margin << ','
           << rep.avg_size_max << ',' << rep.size_bound_exact << ','
           << (rep.size_bound_holds ? "true" : "false") << ','
           << (rep.passed() ? "true" : "false") << '\n';
        write_output(os.str(), o.out);
    } else {
        ordered_json doc;
        doc["p"] = o.p;
        doc["m"] = o.m;
        doc["n0"] = spec.n0;
        doc["slots"] = spec.slots;
        doc["d_max"] = to_string(spec.d_max);
        doc["grid_points"] = o.grid;
        doc["samples"] = o.samples;
        doc["seed"] = o.seed;
        doc["states"] = rep.states;
        doc["g1_combos_total"] = rep.g1_combos_total;
        doc["g1_combos_checked"] = rep.g1_combos_checked;
        doc["g2_combos"] = rep.g2_combos;
        doc["prob_bound_holds"] = rep.prob_bound_holds;
        doc["prob_instances"] = rep.prob_instances;
        doc["prob_worst_margin"] = rep.prob_worst_margin;
        doc["size_bound_holds"] = rep.size_bound_holds;
        doc["avg_size_max"] = rep.avg_size_max;
        doc["size_bound_exact"] = rep.size_bound_exact;
        doc["size_bound_exact_str"] = rep.size_bound_exact_str;
        doc["size_bound_headline"] = rep.size_bound_headline;
        doc["size_slack"] = rep.size_slack;
        doc["vbar_stats"] = ordered_json::array();
        for (const VbarStat &vs : rep.vbar_stats) {
            ordered_json row;
            row["vbar"] = vs.vbar;
            row["avg_size"] = vs.avg_size;
            row["max_size"] = vs.max_size;
            doc["vbar_stats"].push_back(std::move(row));
        }
        doc["passed"] = rep.passed();
        write_output(doc.dump(2), o.out);
    }
    return rep.passed() ? kExitPass : kExitCheckFailed;
}

void add_format_out(CLI::App *sub, std::string &format, std::string &out) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out,
                    "output file; relative paths land under $" + std::string(kOutDirEnvVar) +
                        " when it is set; stdout when omitted");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"secure-degrees-of-freedom simulator for multi-antenna wiretap channels "
                 "with delayed legitimate-receiver feedback"};
    app.set_version_flag("--version", std::string(kToolVersion));
    app.require_subcommand(1);

    SdofOpts sdof_opts;
    CLI::App *sdof_cmd = app.add_subcommand("sdof", "closed-form secure degrees of freedom");
    sdof_cmd->add_option("--m", sdof_opts.m, "transmit antennas")->required();
    sdof_cmd->add_option("--n1", sdof_opts.n1, "legitimate receiver antennas")->required();
    sdof_cmd->add_option("--neve", sdof_opts.neve, "eavesdropper antenna counts")
        ->required()
        ->delimiter(',');

    TablesOpts tables_opts;
    CLI::App *tables_cmd =
        app.add_subcommand("tables", "closed-form comparison and formula tables");
    tables_cmd->add_option("--max-m", tables_opts.max_m, "largest transmit antenna count");
    tables_cmd->add_option("--max-n1", tables_opts.max_n1, "largest legitimate antenna count");
    tables_cmd->add_option("--max-nmax", tables_opts.max_nmax,
                           "largest eavesdropper antenna count");
    add_format_out(tables_cmd, tables_opts.format, tables_opts.out);

    SimulateOpts sim_opts;
    CLI::App *sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo verification of the transmission scheme");
    sim_cmd->add_option("--config", sim_opts.config_path, "JSON config file (flags override)");
    sim_cmd->add_option("--m", sim_opts.m, "transmit antennas");
    sim_cmd->add_option("--n1", sim_opts.n1, "legitimate receiver antennas");
    sim_cmd->add_option("--neve", sim_opts.neve, "eavesdropper antenna counts")->delimiter(',');
    sim_cmd->add_option("--seed", sim_opts.seed, "master seed");
    sim_cmd->add_option("--trials", sim_opts.trials, "Monte Carlo trials");
    sim_cmd->add_option("--workers", sim_opts.workers, "worker threads (0 = hardware)");
    sim_cmd->add_option("--power", sim_opts.p, "symbol power");
    sim_cmd->add_flag("--noisy", sim_opts.noisy, "add unit receiver noise");
    add_format_out(sim_cmd, sim_opts.format, sim_opts.out);

    ConverseOpts conv_opts;
    CLI::App *conv_cmd =
        app.add_subcommand("converse", "Monte Carlo rank surrogates of the converse steps");
    conv_cmd->add_option("--lemma", conv_opts.lemma, "which inequality to sample")
        ->required()
        ->check(CLI::IsMember(
            {"lal", "delayed", "nocsit", "nocsit-cond", "joint", "prop1", "prop2"}));
    conv_cmd->add_option("--strategy", conv_opts.strategy, "transmit strategy under test")
        ->check(CLI::IsMember({"random", "two-phase"}));
    conv_cmd->add_option("--m", conv_opts.m, "transmit antennas")->required();
    conv_cmd->add_option("--n1", conv_opts.n1, "legitimate receiver antennas")->required();
    conv_cmd->add_option("--neve", conv_opts.neve, "eavesdropper antenna counts")
        ->required()
        ->delimiter(',');
    conv_cmd->add_option("--seed", conv_opts.seed, "master seed");
    conv_cmd->add_option("--trials", conv_opts.trials, "Monte Carlo trials");
    add_format_out(conv_cmd, conv_opts.format, conv_opts.out);

    AisOpts ais_opts;
    CLI::App *ais_cmd = app.add_subcommand(
        "ais", "exact aligned-image-set enumeration over a rational coefficient grid");
    ais_cmd->add_option("--p", ais_opts.p, "power (alphabet is 0..ceil(sqrt(p)))");
    ais_cmd->add_option("--m", ais_opts.m, "transmit antennas");
    ais_cmd->add_option("--grid", ais_opts.grid, "coefficient grid points");
    ais_cmd->add_option("--dmax", ais_opts.dmax, "integer coefficient magnitude bound");
    ais_cmd->add_option("--samples", ais_opts.samples, "first-channel combos to enumerate");
    ais_cmd->add_option("--seed", ais_opts.seed, "subsampling seed");
    add_format_out(ais_cmd, ais_opts.format, ais_opts.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e); // prints help or the parse error
        return code == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (sdof_cmd->parsed())
            return run_sdof(sdof_opts);
        if (tables_cmd->parsed())
            return run_tables(tables_opts);
        if (sim_cmd->parsed())
            return run_simulate(*sim_cmd, sim_opts);
        if (conv_cmd->parsed())
            return run_converse(conv_opts);
        if (ais_cmd->parsed())
            return run_ais(ais_opts);
    } catch (const too_large_error &e) {
        std::cerr << "error: " << e.what() << " (" << e.states() << " states)\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage; // unreachable: require_subcommand(1)
}
