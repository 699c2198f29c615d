// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/aligned_images.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "sdofsim/errors.hpp"
#include "sdofsim/rng.hpp"

namespace sdofsim {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    // b > 0 always: boost::rational keeps denominators positive.
    const std::int64_t q = a / b;
    return (a % b != 0 && a < 0) ? q - 1 : q;
}

std::int64_t ceil_sqrt(std::int64_t p) {
    if (p <= 0)
        return 0;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p)));
    while (r > 0 && r * r > p)
        --r;
    while ((r + 1) * (r + 1) <= p)
        ++r;
    return r * r == p ? r : r + 1;
}

std::uint64_t saturating_pow(std::uint64_t base, int exp) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(acc);
}

BigRational rational_pow(const BigRational &base, int exp) {
    BigRational acc(1);
    for (int i = 0; i < exp; ++i)
        acc *= base;
    return acc;
}

BigRational to_big(const Rational &r) {
    return BigRational(r.numerator(), r.denominator());
}

void check_channel_shape(const DeterministicChannelSpec &spec, const RatChannel &g,
                         const char *who) {
    if (static_cast<int>(g.size()) != spec.slots)
        throw std::invalid_argument(std::string(who) + " must hold one matrix per slot");
    for (const RatMatrix &mat : g)
        if (mat.rows != spec.n0 || mat.cols != spec.m)
            throw std::invalid_argument(std::string(who) + " blocks must be n0 x m");
}

// Odometer step in lexicographic order: last digit fastest, so vectors are
// produced in ascending lex order and the first preimage seen is L0.
bool next_input(IntVec &x, std::int64_t alphabet) {
    for (auto it = x.rbegin(); it != x.rend(); ++it) {
        if (++*it < alphabet)
            return true;
        *it = 0;
    }
    return false;
}

RatChannel channel_from_index(const DeterministicChannelSpec &spec,
                              const std::vector<Rational> &grid, std::uint64_t idx) {
    RatChannel ch(static_cast<std::size_t>(spec.slots), RatMatrix(spec.n0, spec.m));
    const auto n = static_cast<std::uint64_t>(grid.size());
    for (int t = 0; t < spec.slots; ++t)
        for (int j = 0; j < spec.n0; ++j)
            for (int i = 0; i < spec.m; ++i) {
                ch[static_cast<std::size_t>(t)].at(j, i) = grid[static_cast<std::size_t>(idx % n)];
                idx /= n;
            }
    return ch;
}

} // namespace

std::vector<Rational> DeterministicChannelSpec::grid() const {
    if (grid_points < 1)
        throw std::invalid_argument("grid needs at least one point");
    if (!(d_max > Rational(0)))
        throw std::invalid_argument("coefficient bound must be positive");
    std::vector<Rational> g(static_cast<std::size_t>(grid_points));
    for (int i = 0; i < grid_points; ++i)
        g[static_cast<std::size_t>(i)] = d_max * Rational(2 * i + 1 - grid_points, grid_points);
    return g;
}

Rational DeterministicChannelSpec::f_max() const {
    if (!(d_max > Rational(0)))
        throw std::invalid_argument("coefficient bound must be positive");
    return Rational(grid_points) / (Rational(2) * d_max);
}

std::int64_t DeterministicChannelSpec::alphabet_size() const {
    return ceil_sqrt(p) + 1;
}

std::uint64_t DeterministicChannelSpec::state_count() const {
    return saturating_pow(static_cast<std::uint64_t>(alphabet_size()), m * slots);
}

std::uint64_t DeterministicChannelSpec::channel_combos() const {
    return saturating_pow(static_cast<std::uint64_t>(grid_points), n0 * m * slots);
}

void DeterministicChannelSpec::validate() const {
    if (p < 0)
        throw std::invalid_argument("power must be nonnegative");
    if (m < 1 || n0 < 1 || slots < 1)
        throw std::invalid_argument("antenna and slot counts must be positive");
    if (grid_points < 1)
        throw std::invalid_argument("grid needs at least one point");
    if (!(d_max > Rational(0)))
        throw std::invalid_argument("coefficient bound must be positive");
    if (state_count() > kMaxStates)
        throw too_large_error("input state space exceeds the enumeration cap", state_count());
    if (channel_combos() > kMaxChannelCombos)
        throw too_large_error("channel grid space exceeds the enumeration cap", channel_combos());
}

IntVec deterministic_output(const DeterministicChannelSpec &spec, const RatChannel &g,
                            const IntVec &xbar) {
    check_channel_shape(spec, g, "channel");
    const std::int64_t alphabet = spec.alphabet_size();
    if (xbar.size() != static_cast<std::size_t>(spec.m) * static_cast<std::size_t>(spec.slots))
        throw std::invalid_argument("input must stack slots * m entries");
    for (std::int64_t x : xbar)
        if (x < 0 || x >= alphabet)
            throw std::invalid_argument("input entry " + std::to_string(x) +
                                        " outside the alphabet [0, " +
                                        std::to_string(alphabet - 1) + "]");
    IntVec out(static_cast<std::size_t>(spec.slots) * static_cast<std::size_t>(spec.n0));
    for (int t = 0; t < spec.slots; ++t) {
        const RatMatrix &mat = g[static_cast<std::size_t>(t)];
        for (int j = 0; j < spec.n0; ++j) {
            std::int64_t acc = 0;
            for (int i = 0; i < spec.m; ++i) {
                const Rational &r = mat.at(j, i);
                acc += floor_div(r.numerator() * xbar[static_cast<std::size_t>(t * spec.m + i)],
                                 r.denominator());
            }
            out[static_cast<std::size_t>(t * spec.n0 + j)] = acc;
        }
    }
    return out;
}

AlignedImageSets enumerate_aligned_image_set(const DeterministicChannelSpec &spec,
                                             const RatChannel &g1, const RatChannel &g2) {
    spec.validate();
    check_channel_shape(spec, g1, "first channel");
    check_channel_shape(spec, g2, "second channel");

    AlignedImageSets out;
    IntVec x(static_cast<std::size_t>(spec.m) * static_cast<std::size_t>(spec.slots), 0);
    do {
        const IntVec y1 = deterministic_output(spec, g1, x);
        out.l0.emplace(y1, x); // keeps the first (lex smallest) preimage
    } while (next_input(x, spec.alphabet_size()));

    for (const auto &[y1, x0] : out.l0)
        out.sets[deterministic_output(spec, g2, x0)].push_back(y1);
    return out;
}

AlignedImageSetReport check_alignment_bounds(const DeterministicChannelSpec &spec,
                                             std::uint64_t samples, std::uint64_t master_seed) {
    spec.validate();
    if (samples < 1)
        throw std::invalid_argument("need at least one channel sample");

    const std::vector<Rational> grid = spec.grid();
    const std::uint64_t combos = spec.channel_combos();
    const int exponent = spec.slots * spec.n0;

    AlignedImageSetReport rep;
    rep.states = spec.state_count();
    rep.g1_combos_total = combos;
    rep.g2_combos = combos;

    // First factor of both bounds: max(1, f_max m d_max)^(slots n0). With the
    // uniform grid the inner product collapses to grid_points * m / 2.
    const Rational inner = spec.f_max() * Rational(spec.m) * spec.d_max;
    const BigRational f_pow =
        rational_pow(inner > Rational(1) ? to_big(inner) : BigRational(1), exponent);

    // Exact finite-p set-size bound: f_pow * S(q)^(slots n0), with S(q) the
    // reachable-output mass sum_{|y| <= q} 1/max(1, |y| - m).
    const Rational reach = spec.d_max * Rational(spec.m) * Rational(spec.alphabet_size() - 1);
    const std::int64_t q = floor_div(reach.numerator(), reach.denominator()) + spec.m;
    BigRational mass(2 * spec.m + 1);
    for (std::int64_t k = 1; k <= q - spec.m; ++k)
        mass += BigRational(2, k);
    const BigRational size_bound = f_pow * rational_pow(mass, exponent);
    rep.size_bound_exact = size_bound.convert_to<double>();
    rep.size_bound_exact_str = size_bound.str();
    const double half_log_p = 0.5 * std::log(static_cast<double>(std::max<std::int64_t>(spec.p, 1)));
    rep.size_bound_headline = f_pow.convert_to<double>() * std::pow(half_log_p, exponent);
    rep.size_slack = rep.size_bound_exact - rep.size_bound_headline;

    // G1 combos: exhaustive when they fit the sample budget, otherwise a
    // seeded subsample. G2 is always exhausted so probabilities are exact.
    std::vector<std::uint64_t> g1_indices;
    if (combos <= samples) {
        g1_indices.resize(combos);
        for (std::uint64_t i = 0; i < combos; ++i)
            g1_indices[i] = i;
    } else {
        RngStream rng(master_seed, 0);
        g1_indices.resize(samples);
        for (std::uint64_t i = 0; i < samples; ++i)
            g1_indices[i] = rng.next_u64() % combos;
    }
    rep.g1_combos_checked = g1_indices.size();

    std::map<IntVec, std::pair<boost::multiprecision::cpp_int, std::int64_t>> per_vbar;
    double worst_margin = std::numeric_limits<double>::infinity();

    for (const std::uint64_t g1_idx : g1_indices) {
        const RatChannel g1 = channel_from_index(spec, grid, g1_idx);

        // Reachable outputs of g1 with their lex-smallest preimages.
        std::map<IntVec, IntVec> l0;
        IntVec x(static_cast<std::size_t>(spec.m) * static_cast<std::size_t>(spec.slots), 0);
        do {
            l0.emplace(deterministic_output(spec, g1, x), x);
        } while (next_input(x, spec.alphabet_size()));

        // Label every reachable output under every g2; count per (y1, vbar).
        std::map<IntVec, std::map<IntVec, std::int64_t>> label_counts;
        for (std::uint64_t g2_idx = 0; g2_idx < combos; ++g2_idx) {
            const RatChannel g2 = channel_from_index(spec, grid, g2_idx);
            std::map<IntVec, std::int64_t> set_sizes;
            for (const auto &[y1, x0] : l0) {
                const IntVec vbar = deterministic_output(spec, g2, x0);
                ++label_counts[y1][vbar];
                ++set_sizes[vbar];
            }
            for (const auto &[vbar, size] : set_sizes) {
                auto &[sum, max_size] = per_vbar[vbar];
                sum += size;
                max_size = std::max(max_size, size);
            }
        }

        for (const auto &[y1, counts] : label_counts) {
            boost::multiprecision::cpp_int denom = 1;
            for (const std::int64_t y : y1)
                denom *= std::max<std::int64_t>(1, std::llabs(y) - spec.m);
            const BigRational bound = f_pow / BigRational(denom);
            for (const auto &[vbar, count] : counts) {
                const BigRational pr(count, static_cast<std::int64_t>(combos));
                ++rep.prob_instances;
                if (pr > bound)
                    rep.prob_bound_holds = false;
                worst_margin =
                    std::min(worst_margin, (bound - pr).convert_to<double>());
            }
        }
    }

    rep.prob_worst_margin = rep.prob_instances > 0 ? worst_margin : 0.0;

    const boost::multiprecision::cpp_int pair_count =
        boost::multiprecision::cpp_int(rep.g1_combos_checked) * combos;
    for (const auto &[vbar, stat] : per_vbar) {
        VbarStat vs;
        vs.vbar = vbar;
        vs.avg_size = BigRational(stat.first, pair_count).convert_to<double>();
        vs.max_size = stat.second;
        if (BigRational(stat.first, pair_count) > size_bound)
            rep.size_bound_holds = false;
        rep.avg_size_max = std::max(rep.avg_size_max, vs.avg_size);
        rep.vbar_stats.push_back(std::move(vs));
    }
    return rep;
}

} // namespace sdofsim
