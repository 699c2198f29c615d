// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <map>
#include <vector>

#include "sdofsim/rational.hpp"

namespace sdofsim {

// Arbitrary-precision rationals for the enumeration bounds: harmonic-sum
// denominators overflow int64 once the output range passes ~43.
using BigRational = boost::multiprecision::cpp_rational;

// Dense rational matrix, row-major.
struct RatMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Rational> a;

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}
    Rational &at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const Rational &at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }
};

// One receiver's channel over `slots` slots, one n0 x m matrix per slot.
using RatChannel = std::vector<RatMatrix>;

using IntVec = std::vector<std::int64_t>;

// Deterministic integer-input model: inputs lie in {0, ..., ceil(sqrt(p))}^m
// per slot, channel coefficients on a finite uniform rational grid, receive
// antennas observe sums of floored products. All arithmetic is exact; no
// floating point enters the enumerator.
struct DeterministicChannelSpec {
    std::int64_t p = 4;
    int m = 1;
    int n0 = 1;    // receive antennas per receiver
    int slots = 1; // n
    Rational d_max = Rational(2);
    int grid_points = 8;

    // Midpoint grid: d_max * (2i + 1 - N) / N for i = 0..N-1. No atom sits
    // on an endpoint, magnitudes stay strictly below d_max.
    std::vector<Rational> grid() const;

    // Density surrogate of the grid law: grid_points / (2 d_max).
    Rational f_max() const;

    std::int64_t alphabet_size() const; // ceil(sqrt(p)) + 1
    std::uint64_t state_count() const;  // alphabet^(m*slots)
    std::uint64_t channel_combos() const; // grid_points^(n0*m*slots)

    void validate() const; // throws std::invalid_argument / too_large_error
};

// Enumeration caps. Exceeding either throws too_large_error carrying the
// computed count.
inline constexpr std::uint64_t kMaxStates = 1'000'000;
inline constexpr std::uint64_t kMaxChannelCombos = 1'000'000;

// ybar_j(t) = sum_i floor(g_{j,i}(t) xbar_i(t)), exact rational floor.
// xbar stacks slots * m inputs; the result stacks slots * n0 outputs.
IntVec deterministic_output(const DeterministicChannelSpec &spec, const RatChannel &g,
                            const IntVec &xbar);

// Aligned image sets for one channel pair under the L0 preimage map (the
// lexicographically smallest input reproducing a reachable output).
struct AlignedImageSets {
    std::map<IntVec, IntVec> l0;                // reachable y1 -> L0 input
    std::map<IntVec, std::vector<IntVec>> sets; // vbar -> member y1 outputs
};

AlignedImageSets enumerate_aligned_image_set(const DeterministicChannelSpec &spec,
                                             const RatChannel &g1, const RatChannel &g2);

struct VbarStat {
    IntVec vbar;
    double avg_size = 0.0;      // E|S_vbar| over enumerated channel pairs
    std::int64_t max_size = 0;  // largest single-pair set size
};

struct AlignedImageSetReport {
    std::uint64_t states = 0;
    std::uint64_t g1_combos_total = 0;
    std::uint64_t g1_combos_checked = 0;
    std::uint64_t g2_combos = 0;

    // Per-instance conditional probability vs the product bound
    //   max(1, f_max m d_max)^(n n0) * prod_{t,j} 1/max(1, |y1_j(t)| - m),
    // decided in exact rational arithmetic.
    bool prob_bound_holds = true;
    std::int64_t prob_instances = 0;
    double prob_worst_margin = 0.0; // min over instances of bound - probability

    // Average set size vs the exact finite-p bound
    //   max(1, f_max m d_max)^(n n0) * S(q)^(n n0),
    // S(q) = sum_{|y| <= q} 1/max(1, |y| - m), q = floor(m d_max ceil(sqrt p)) + m.
    bool size_bound_holds = true;
    double avg_size_max = 0.0;
    double size_bound_exact = 0.0;
    std::string size_bound_exact_str; // exact rational rendering
    double size_bound_headline = 0.0; // max(1, f_max m d_max)^(n n0) * log(sqrt p)^(n n0)
    double size_slack = 0.0;          // exact bound - headline
    std::vector<VbarStat> vbar_stats;

    bool passed() const { return prob_bound_holds && size_bound_holds; }
};

// Exhaustively enumerates channel pairs (subsampling G1 combos to at most
// `samples` via a seeded substream when there are more) and checks both
// bounds for every instance. G2 combos are always exhausted: the conditional
// probabilities are exact, not sampled.
AlignedImageSetReport check_alignment_bounds(const DeterministicChannelSpec &spec,
                                             std::uint64_t samples, std::uint64_t master_seed);

} // namespace sdofsim
