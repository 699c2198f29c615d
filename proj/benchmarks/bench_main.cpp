// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include <benchmark/benchmark.h>

#include "sdofsim/aligned_images.hpp"
#include "sdofsim/analysis.hpp"
#include "sdofsim/converse.hpp"
#include "sdofsim/encoder.hpp"
#include "sdofsim/experiment.hpp"
#include "sdofsim/rng.hpp"
#include "sdofsim/sdof.hpp"

namespace {

using namespace sdofsim;

cmat random_cmat(int rows, int cols, std::uint64_t seed) {
    RngStream rng(seed, 0);
    cmat a(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a(r, c) = rng.cgaussian();
    return a;
}

void BM_ClosedFormTable(benchmark::State &state) {
    const std::vector<AntennaConfig> sweep = sweep_configs(8, 4, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(comparison_table(sweep));
}
BENCHMARK(BM_ClosedFormTable);

void BM_NumericRank(benchmark::State &state) {
    const cmat a = random_cmat(static_cast<int>(state.range(0)),
                               static_cast<int>(state.range(1)), 11);
    for (auto _ : state)
        benchmark::DoNotOptimize(numeric_rank(a));
}
BENCHMARK(BM_NumericRank)->Args({6, 8})->Args({12, 20});

void BM_LogDetSlope(benchmark::State &state) {
    const cmat a = random_cmat(12, 20, 13);
    for (auto _ : state)
        benchmark::DoNotOptimize(logdet_dof_slope(a));
}
BENCHMARK(BM_LogDetSlope);

void BM_TwoPhaseEncode(benchmark::State &state) {
    const AntennaConfig cfg(4, {2, 3});
    const ChannelLaw law{};
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        const ChannelRealization real = generate_channel(cfg, plan.b, law, 17, stream);
        RngStream sym(17, 1'000'000 + stream);
        benchmark::DoNotOptimize(encode_two_phase(cfg, 1e8, real, sym));
        ++stream;
    }
}
BENCHMARK(BM_TwoPhaseEncode);

void BM_TwoPhaseDecode(benchmark::State &state) {
    const AntennaConfig cfg(4, {2, 3});
    const ChannelLaw law{};
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    const ChannelRealization real = generate_channel(cfg, plan.b, law, 19, 0);
    RngStream sym(19, 1);
    const SchemeEncoding enc = encode_two_phase(cfg, 1e8, real, sym);
    const std::vector<SignalBlock> received = apply_channel(real, enc.x, NoiseMode::off);
    for (auto _ : state)
        benchmark::DoNotOptimize(decode_legitimate(cfg, received[0].values, real));
}
BENCHMARK(BM_TwoPhaseDecode);

void BM_LeakageSlope(benchmark::State &state) {
    const AntennaConfig cfg(4, {2, 3});
    const ChannelLaw law{};
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    const ChannelRealization real = generate_channel(cfg, plan.b, law, 23, 0);
    RngStream sym(23, 1);
    const SchemeEncoding enc = encode_two_phase(cfg, 1e8, real, sym);
    for (auto _ : state)
        benchmark::DoNotOptimize(leakage_dof(cfg, enc, real, 2));
}
BENCHMARK(BM_LeakageSlope);

void BM_SimulationTrialBatch(benchmark::State &state) {
    ExperimentConfig cfg;
    cfg.m = 4;
    cfg.n1 = 2;
    cfg.eavesdroppers = {3};
    cfg.seed = 29;
    cfg.trials = 8;
    cfg.workers = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_simulation(cfg));
}
BENCHMARK(BM_SimulationTrialBatch);

void BM_ConverseDelayedRatio(benchmark::State &state) {
    const AntennaConfig cfg(4, {2, 3});
    const LinearStrategy strategy = LinearStrategy::two_phase(cfg);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            check_eri_delayed(2, 3, strategy, ChannelLaw{}, 32, 31));
}
BENCHMARK(BM_ConverseDelayedRatio);

void BM_AlignmentEnumeration(benchmark::State &state) {
    DeterministicChannelSpec spec;
    spec.p = state.range(0);
    spec.m = static_cast<int>(state.range(1));
    spec.n0 = 1;
    spec.slots = 1;
    spec.d_max = Rational(2);
    spec.grid_points = 8;
    for (auto _ : state)
        benchmark::DoNotOptimize(check_alignment_bounds(spec, 64, 37));
}
BENCHMARK(BM_AlignmentEnumeration)->Args({4, 1})->Args({16, 2});

} // namespace

BENCHMARK_MAIN();
