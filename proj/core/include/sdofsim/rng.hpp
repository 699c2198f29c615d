// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace sdofsim {

// Counter-derived random substream. A (master seed, stream id) pair fully
// determines the sequence, so trials are reproducible bit-for-bit no matter
// how they are scheduled across workers.
//
// Gaussian variates are generated by Box-Muller on top of mt19937_64 rather
// than std::normal_distribution, whose algorithm is implementation-defined
// and would break cross-build reproducibility.
class RngStream {
  public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream);

    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() { return eng_(); }

    // Uniform on [0, 1), 53 random bits.
    double uniform();

    // Circularly symmetric complex Gaussian, zero mean, E|z|^2 = 1.
    std::complex<double> cgaussian();

    // Same law conditioned on |z| <= d_max (rejection redraw).
    std::complex<double> cgaussian_bounded(double d_max);

  private:
    std::mt19937_64 eng_;
    std::uint64_t master_ = 0;
    std::uint64_t stream_ = 0;
};

// Stream-id layout: each trial owns a contiguous range of kAttemptStride ids
// so degenerate draws can be resampled deterministically.
inline constexpr std::uint64_t kAttemptStride = 1024;

inline std::uint64_t trial_stream(std::uint64_t trial, std::uint64_t attempt = 0) {
    return trial * kAttemptStride + attempt;
}

} // namespace sdofsim
