// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "sdofsim/antenna_config.hpp"
#include "sdofsim/rng.hpp"

namespace sdofsim {

using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

// Channel draw law: i.i.d. circularly symmetric complex Gaussian entries with
// unit variance, redrawn while |g| > d_max so all densities stay bounded.
// This is the only law the library implements; emitted configs record it.
struct ChannelLaw {
    double d_max = 10.0;

    void validate() const; // throws std::invalid_argument on d_max <= 0
};

enum class NoiseMode { off, unit_variance };

enum class SignalRole {
    transmit,
    received,
    noise,
    artificial_noise,
    information,
    noise_equations,
};

// A column of samples tied to one owner and an inclusive slot range.
struct SignalBlock {
    SignalRole role = SignalRole::transmit;
    cvec values;
    int owner = 0; // receiver index for received blocks, 0 = transmitter
    int t0 = 1;
    int t1 = 1;
};

// One fading block: matrices G_j(t), each n_j x m, for every receiver
// j = 1..k+1 and slot t = 1..slots. Construction from the same
// (master seed, stream) pair is bit-exact; draw order is fixed as
// j ascending, t ascending, then row-major within each matrix.
class ChannelRealization {
  public:
    // Consumes draws from rng and records its (master, stream) identity.
    ChannelRealization(AntennaConfig cfg, int slots, ChannelLaw law, RngStream &rng);

    const AntennaConfig &config() const { return cfg_; }
    int slots() const { return slots_; }
    const ChannelLaw &law() const { return law_; }
    std::uint64_t master_seed() const { return master_; }
    std::uint64_t stream() const { return stream_; }

    // 1-based receiver and slot indices.
    const cmat &block(int j, int t) const;
    cmat &mutable_block(int j, int t); // for perturbation tests

  private:
    AntennaConfig cfg_;
    int slots_ = 0;
    ChannelLaw law_;
    std::uint64_t master_ = 0;
    std::uint64_t stream_ = 0;
    std::vector<std::vector<cmat>> g_; // g_[j-1][t-1]
};

ChannelRealization generate_channel(const AntennaConfig &cfg, int slots, const ChannelLaw &law,
                                    std::uint64_t master_seed, std::uint64_t stream);

// Block-diagonal stacking of G_j(t) over slots [t0, t1], restricted to the
// first `width` transmit antennas (width = full m when negative).
cmat stack_block_diagonal(const ChannelRealization &real, int j, int t0, int t1, int width = -1);
cmat stack_block_diagonal(const std::vector<cmat> &blocks, int width = -1);

// y_j(t) = G_j(t) x(t) (+ z(t)) for every receiver; x holds slots()
// concatenated m-vectors. Unit-variance noise draws come from noise_rng.
std::vector<SignalBlock> apply_channel(const ChannelRealization &real, const cvec &x,
                                       NoiseMode mode, RngStream *noise_rng = nullptr);

} // namespace sdofsim
