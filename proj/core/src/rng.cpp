// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/rng.hpp"

#include <cmath>

namespace sdofsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t &s) {
    s += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

} // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream)
    : master_(master_seed), stream_(stream) {
    // Expand (master, stream) through splitmix64 into a full seed sequence;
    // both seed_seq and mt19937_64 are fully specified, so the mapping is
    // identical on every platform.
    std::uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ull * (stream + 0x632be59bd9b4e019ull));
    std::uint32_t words[8];
    for (int i = 0; i < 4; ++i) {
        const std::uint64_t w = splitmix64(s);
        words[2 * i] = static_cast<std::uint32_t>(w);
        words[2 * i + 1] = static_cast<std::uint32_t>(w >> 32);
    }
    std::seed_seq seq(words, words + 8);
    eng_.seed(seq);
}

double RngStream::uniform() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

std::complex<double> RngStream::cgaussian() {
    const double u1 = 1.0 - uniform(); // (0, 1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    return {r * std::cos(kTwoPi * u2), r * std::sin(kTwoPi * u2)};
}

std::complex<double> RngStream::cgaussian_bounded(double d_max) {
    for (;;) {
        const auto z = cgaussian();
        if (std::abs(z) <= d_max)
            return z;
    }
}

} // namespace sdofsim
