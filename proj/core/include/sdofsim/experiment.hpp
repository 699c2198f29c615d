// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "sdofsim/analysis.hpp"
#include "sdofsim/rational.hpp"

namespace sdofsim {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char *kToolVersion = "sdofsim 0.1.0";
inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kOutDirEnvVar = "SDOFSIM_OUT_DIR";

// Everything a simulation run depends on. Serializes round-trip identically
// (fixed key order); unknown keys or a schema_version mismatch are rejected.
struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    int m = 4;
    int n1 = 2;
    std::vector<int> eavesdroppers = {3};
    std::uint64_t seed = 1;
    int trials = 100;
    int workers = 1; // 0 = hardware concurrency
    double p = 1e8;  // symbol draw power
    double p0 = kSlopeP0;
    double p1 = kSlopeP1;
    double slope_tol = kSlopeTol;
    double rank_rel_tol = kRankRelTol;
    double power_tol = 0.05;
    double d_max = 10.0;
    bool noisy = false;

    AntennaConfig antennas() const;
    ChannelLaw law() const { return ChannelLaw{d_max}; }

    ordered_json to_json() const;
    static ExperimentConfig from_json(const ordered_json &j); // throws std::invalid_argument
    void validate() const;
};

// One named pass/fail line of a report, with enough provenance to replay any
// failing trial: stream id s belongs to trial s / kAttemptStride.
struct CheckSummary {
    std::string name;
    int trials = 0;
    int passes = 0;
    int failures = 0;
    int degenerate = 0;
    bool passed = false;
    std::vector<std::uint64_t> failing_streams;
    ordered_json details; // deterministic scalars only

    ordered_json to_json() const;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string tool_version = kToolVersion;
    std::string regime; // "case-a", "two-phase", "no-positive-sdof"
    std::string sdof;   // exact rational rendering
    std::vector<CheckSummary> checks;

    bool passed() const;

    // Deterministic payload; timestamp and wall-clock time are isolated in a
    // single "meta" object appended only when include_meta is set.
    ordered_json to_json(bool include_meta = true, double elapsed_ms = 0.0) const;
    std::string to_csv() const; // one row per check
};

// Runs the scheme matching the configured regime over config.trials trials.
// Identical config + seed produce identical reports for any worker count.
ExperimentReport run_simulation(const ExperimentConfig &config);

// Runs fn(0..trials-1) on `workers` threads (0 = hardware concurrency).
// Callers must keep fn(i) independent of scheduling.
void parallel_trials(int trials, int workers, const std::function<void(int)> &fn);

} // namespace sdofsim
