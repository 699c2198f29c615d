// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "sdofsim/converse.hpp"
#include "sdofsim/encoder.hpp"
#include "sdofsim/errors.hpp"
#include "sdofsim/sdof.hpp"

namespace sdofsim {

namespace {

constexpr int kMaxResample = 8;

// Everything measured on one trial; aggregation happens later in trial-index
// order so reports do not depend on scheduling.
struct TrialResult {
    std::uint64_t stream = 0;
    int degenerate = 0; // resampled attempts
    bool exhausted = false;
    bool decode_ok = false;
    bool legit_rank_ok = false;
    bool eve_rank_ok = false;
    double leak_legit = 0.0;   // per-slot leakage slope at Rx1
    double leak_eve_max = 0.0; // largest per-slot eavesdropper leakage
    double power_ratio = 1.0;  // E[||x||^2 | G] / (b p), exactly 1 by design
};

// Conditional per-slot average power over draw power: the normalization must
// make this exactly 1 for every channel realization.
double conditional_power_ratio(const SchemeEncoding &enc) {
    if (enc.power <= 0.0)
        return 1.0;
    return enc.scale * enc.scale * (enc.power / enc.width) * enc.precoder.squaredNorm() /
           (static_cast<double>(enc.b) * enc.power);
}

std::string iso8601_now() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void require_key_count(const ordered_json &j, std::size_t expected) {
    if (!j.is_object())
        throw std::invalid_argument("config must be a JSON object");
    if (j.size() != expected)
        throw std::invalid_argument("config holds " + std::to_string(j.size()) +
                                    " keys, schema expects exactly " + std::to_string(expected));
}

template <typename T> T field(const ordered_json &j, const char *key) {
    const auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("config key missing: ") + key);
    try {
        return it->get<T>();
    } catch (const nlohmann::json::exception &) {
        throw std::invalid_argument(std::string("config key has the wrong type: ") + key);
    }
}

// Relative decode accuracy: noiseless runs must reproduce v essentially to
// machine precision; noisy runs are held to the zero-forcing error floor.
bool decode_close(const cvec &vhat, const cvec &v, bool noisy, double p) {
    const double ref = std::max(v.norm(), 1e-300);
    const double rel = (vhat - v).norm() / ref;
    return noisy ? rel * rel <= 1e4 / p : rel <= 1e-8;
}

TrialResult run_two_phase_trial(const ExperimentConfig &cfg, const AntennaConfig &ant,
                                const TwoPhasePlan &plan, int trial) {
    const ChannelLaw law = cfg.law();
    TrialResult res;
    for (int attempt = 0; attempt < kMaxResample; ++attempt) {
        res.stream = trial_stream(trial, attempt);
        RngStream rng(cfg.seed, res.stream);
        try {
            const ChannelRealization real(ant, plan.b, law, rng);
            const SchemeEncoding enc = encode_two_phase(ant, cfg.p, real, rng);
            const auto received = apply_channel(
                real, enc.x, cfg.noisy ? NoiseMode::unit_variance : NoiseMode::off, &rng);
            const cvec vhat =
                decode_legitimate(ant, received[0].values, real, cfg.rank_rel_tol);
            res.decode_ok = decode_close(vhat, enc.v, cfg.noisy, cfg.p);

            const SecrecyRankReport legit = secrecy_rank_check(ant, enc, real, 1, cfg.rank_rel_tol);
            res.legit_rank_ok = legit.decodable_dims == plan.v_len;
            res.leak_legit = leakage_dof(ant, enc, real, 1, cfg.p0, cfg.p1) / plan.b;

            res.eve_rank_ok = true;
            res.leak_eve_max = 0.0;
            for (int j = 2; j <= ant.receivers(); ++j) {
                const SecrecyRankReport eve = secrecy_rank_check(ant, enc, real, j, cfg.rank_rel_tol);
                res.eve_rank_ok = res.eve_rank_ok && eve.rank_full == eve.rank_noise;
                res.leak_eve_max = std::max(
                    res.leak_eve_max, leakage_dof(ant, enc, real, j, cfg.p0, cfg.p1) / plan.b);
            }
            res.power_ratio = conditional_power_ratio(enc);
            return res;
        } catch (const degenerate_draw_error &) {
            ++res.degenerate;
        }
    }
    res.exhausted = true;
    return res;
}

TrialResult run_case_a_trial(const ExperimentConfig &cfg, const AntennaConfig &ant, int trial) {
    const ChannelLaw law = cfg.law();
    const int info = ant.m - ant.n_max();
    TrialResult res;
    for (int attempt = 0; attempt < kMaxResample; ++attempt) {
        res.stream = trial_stream(trial, attempt);
        RngStream rng(cfg.seed, res.stream);
        try {
            const ChannelRealization real(ant, 1, law, rng);
            const SchemeEncoding enc = encode_case_a(ant, cfg.p, rng);
            const auto received = apply_channel(
                real, enc.x, cfg.noisy ? NoiseMode::unit_variance : NoiseMode::off, &rng);
            const cvec vhat = decode_case_a(ant, received[0].values, real, cfg.rank_rel_tol);
            res.decode_ok = decode_close(vhat, enc.v, cfg.noisy, cfg.p);

            const SecrecyRankReport legit = secrecy_rank_check(ant, enc, real, 1, cfg.rank_rel_tol);
            res.legit_rank_ok = legit.decodable_dims == info;
            res.leak_legit = leakage_dof(ant, enc, real, 1, cfg.p0, cfg.p1);

            res.eve_rank_ok = true;
            res.leak_eve_max = 0.0;
            for (int j = 2; j <= ant.receivers(); ++j) {
                const SecrecyRankReport eve = secrecy_rank_check(ant, enc, real, j, cfg.rank_rel_tol);
                res.eve_rank_ok = res.eve_rank_ok && eve.rank_full == eve.rank_noise;
                res.leak_eve_max =
                    std::max(res.leak_eve_max, leakage_dof(ant, enc, real, j, cfg.p0, cfg.p1));
            }
            res.power_ratio = conditional_power_ratio(enc);
            return res;
        } catch (const degenerate_draw_error &) {
            ++res.degenerate;
        }
    }
    res.exhausted = true;
    return res;
}

// Folds per-trial booleans into one named summary, in trial order.
CheckSummary fold_check(const std::string &name, const std::vector<TrialResult> &results,
                        const std::function<bool(const TrialResult &)> &ok) {
    CheckSummary s;
    s.name = name;
    s.trials = static_cast<int>(results.size());
    for (const TrialResult &r : results) {
        if (ok(r) && !r.exhausted) {
            ++s.passes;
        } else {
            ++s.failures;
            s.failing_streams.push_back(r.stream);
        }
        s.degenerate += r.degenerate;
    }
    s.passed = s.failures == 0;
    return s;
}

double mean_of(const std::vector<TrialResult> &results,
               const std::function<double(const TrialResult &)> &f) {
    double acc = 0.0;
    for (const TrialResult &r : results)
        acc += f(r);
    return results.empty() ? 0.0 : acc / static_cast<double>(results.size());
}

} // namespace

AntennaConfig ExperimentConfig::antennas() const {
    std::vector<int> n;
    n.reserve(eavesdroppers.size() + 1);
    n.push_back(n1);
    n.insert(n.end(), eavesdroppers.begin(), eavesdroppers.end());
    return AntennaConfig(m, n);
}

void ExperimentConfig::validate() const {
    if (schema_version != kSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " +
                                    std::to_string(schema_version) + ", tool speaks " +
                                    std::to_string(kSchemaVersion));
    antennas().validate();
    law().validate();
    if (trials < 1)
        throw std::invalid_argument("trials must be positive");
    if (workers < 0)
        throw std::invalid_argument("workers must be nonnegative (0 = hardware concurrency)");
    if (!(p >= 0.0) || !std::isfinite(p))
        throw std::invalid_argument("power must be finite and nonnegative");
    if (!(p0 > 0.0) || !(p1 > 0.0) || p0 == p1)
        throw std::invalid_argument("slope powers must be positive and distinct");
    if (!(slope_tol > 0.0) || !(rank_rel_tol > 0.0) || !(power_tol > 0.0))
        throw std::invalid_argument("tolerances must be positive");
}

ordered_json ExperimentConfig::to_json() const {
    ordered_json j;
    j["schema_version"] = schema_version;
    j["m"] = m;
    j["n1"] = n1;
    j["eavesdroppers"] = eavesdroppers;
    j["seed"] = seed;
    j["trials"] = trials;
    j["workers"] = workers;
    j["p"] = p;
    j["p0"] = p0;
    j["p1"] = p1;
    j["slope_tol"] = slope_tol;
    j["rank_rel_tol"] = rank_rel_tol;
    j["power_tol"] = power_tol;
    j["d_max"] = d_max;
    j["noisy"] = noisy;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const ordered_json &j) {
    require_key_count(j, 15);
    ExperimentConfig c;
    c.schema_version = field<int>(j, "schema_version");
    c.m = field<int>(j, "m");
    c.n1 = field<int>(j, "n1");
    c.eavesdroppers = field<std::vector<int>>(j, "eavesdroppers");
    c.seed = field<std::uint64_t>(j, "seed");
    c.trials = field<int>(j, "trials");
    c.workers = field<int>(j, "workers");
    c.p = field<double>(j, "p");
    c.p0 = field<double>(j, "p0");
    c.p1 = field<double>(j, "p1");
    c.slope_tol = field<double>(j, "slope_tol");
    c.rank_rel_tol = field<double>(j, "rank_rel_tol");
    c.power_tol = field<double>(j, "power_tol");
    c.d_max = field<double>(j, "d_max");
    c.noisy = field<bool>(j, "noisy");
    c.validate();
    return c;
}

ordered_json CheckSummary::to_json() const {
    ordered_json j;
    j["name"] = name;
    j["trials"] = trials;
    j["passes"] = passes;
    j["failures"] = failures;
    j["degenerate"] = degenerate;
    j["passed"] = passed;
    j["failing_streams"] = failing_streams;
    j["details"] = details.is_null() ? ordered_json::object() : details;
    return j;
}

bool ExperimentReport::passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckSummary &c) { return c.passed; });
}

ordered_json ExperimentReport::to_json(bool include_meta, double elapsed_ms) const {
    ordered_json j;
    j["tool_version"] = tool_version;
    j["config"] = config.to_json();
    j["regime"] = regime;
    j["sdof"] = sdof;
    j["checks"] = ordered_json::array();
    for (const CheckSummary &c : checks)
        j["checks"].push_back(c.to_json());
    j["passed"] = passed();
    if (include_meta) {
        ordered_json meta;
        meta["timestamp"] = iso8601_now();
        meta["elapsed_ms"] = elapsed_ms;
        j["meta"] = meta;
    }
    return j;
}

std::string ExperimentReport::to_csv() const {
    std::ostringstream os;
    os << "check,trials,passes,failures,degenerate,passed\n";
    for (const CheckSummary &c : checks)
        os << c.name << "," << c.trials << "," << c.passes << "," << c.failures << ","
           << c.degenerate << "," << (c.passed ? "true" : "false") << "\n";
    return os.str();
}

void parallel_trials(int trials, int workers, const std::function<void(int)> &fn) {
    if (trials <= 0)
        return;
    int w = workers == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : workers;
    w = std::clamp(w, 1, trials);
    if (w == 1) {
        for (int i = 0; i < trials; ++i)
            fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(w));
    for (int k = 0; k < w; ++k)
        pool.emplace_back([&] {
            for (int i; (i = next.fetch_add(1)) < trials;)
                fn(i);
        });
    for (std::thread &t : pool)
        t.join();
}

ExperimentReport run_simulation(const ExperimentConfig &config) {
    config.validate();
    const AntennaConfig ant = config.antennas();

    ExperimentReport rep;
    rep.config = config;
    rep.sdof = to_string(compute_sdof(ant));

    const bool case_a = ant.n_max() < ant.m && ant.m <= ant.n1();
    const bool two_phase = ant.m > std::max(ant.n1(), ant.n_max());
    if (!case_a && !two_phase) {
        rep.regime = "no-positive-sdof";
        return rep;
    }
    rep.regime = case_a ? "case-a" : "two-phase";

    int block_slots = 1;
    int info_dims = ant.m - ant.n_max();
    TwoPhasePlan plan{};
    if (two_phase) {
        plan = TwoPhasePlan::for_config(ant);
        block_slots = plan.b;
        info_dims = plan.v_len;
    }

    std::vector<TrialResult> results(static_cast<std::size_t>(config.trials));
    parallel_trials(config.trials, config.workers, [&](int trial) {
        results[static_cast<std::size_t>(trial)] =
            two_phase ? run_two_phase_trial(config, ant, plan, trial)
                      : run_case_a_trial(config, ant, trial);
    });

    const double target = to_double(compute_sdof(ant));

    CheckSummary decode = fold_check("decode-roundtrip", results,
                                     [](const TrialResult &r) { return r.decode_ok; });
    decode.details["symbols_per_block"] = info_dims;
    decode.details["block_slots"] = block_slots;
    decode.details["rate"] = to_string(Rational(info_dims, block_slots));
    decode.details["rate_matches_formula"] = Rational(info_dims, block_slots) == compute_sdof(ant);
    rep.checks.push_back(std::move(decode));

    rep.checks.push_back(fold_check("legitimate-rank", results, [](const TrialResult &r) {
        return r.legit_rank_ok;
    }));
    rep.checks.push_back(fold_check("eavesdropper-rank", results, [](const TrialResult &r) {
        return r.eve_rank_ok;
    }));

    CheckSummary leak_legit =
        fold_check("leakage-legitimate", results, [&](const TrialResult &r) {
            return std::abs(r.leak_legit - target) <= config.slope_tol;
        });
    leak_legit.details["target"] = target;
    leak_legit.details["mean"] = mean_of(results, [](const TrialResult &r) { return r.leak_legit; });
    rep.checks.push_back(std::move(leak_legit));

    CheckSummary leak_eve = fold_check("leakage-eavesdropper", results, [&](const TrialResult &r) {
        return r.leak_eve_max <= config.slope_tol;
    });
    leak_eve.details["mean_max"] =
        mean_of(results, [](const TrialResult &r) { return r.leak_eve_max; });
    rep.checks.push_back(std::move(leak_eve));

    CheckSummary power = fold_check("power-accounting", results, [&](const TrialResult &r) {
        return std::abs(r.power_ratio - 1.0) <= config.power_tol;
    });
    power.details["mean_conditional_ratio"] =
        mean_of(results, [](const TrialResult &r) { return r.power_ratio; });
    power.details["tolerance"] = config.power_tol;
    rep.checks.push_back(std::move(power));

    CheckSummary degen;
    degen.name = "degeneracy-rate";
    degen.trials = config.trials;
    int resampled = 0;
    for (const TrialResult &r : results) {
        resampled += r.degenerate;
        if (r.exhausted) {
            ++degen.failures;
            degen.failing_streams.push_back(r.stream);
        } else {
            ++degen.passes;
        }
    }
    degen.degenerate = resampled;
    const double rate = static_cast<double>(resampled) / config.trials;
    degen.passed = degen.failures == 0 && rate < 1e-3;
    degen.details["rate"] = rate;
    rep.checks.push_back(std::move(degen));

    return rep;
}

} // namespace sdofsim
