// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/channel.hpp"

#include <stdexcept>
#include <string>

namespace sdofsim {

void ChannelLaw::validate() const {
    if (!(d_max > 0.0))
        throw std::invalid_argument("channel magnitude bound d_max must be positive, got " +
                                    std::to_string(d_max));
}

ChannelRealization::ChannelRealization(AntennaConfig cfg, int slots, ChannelLaw law, RngStream &rng)
    : cfg_(std::move(cfg)), slots_(slots), law_(law), master_(rng.master_seed()),
      stream_(rng.stream()) {
    cfg_.validate();
    law_.validate();
    if (slots_ < 1)
        throw std::invalid_argument("slot count must be positive, got " + std::to_string(slots_));
    g_.resize(static_cast<std::size_t>(cfg_.receivers()));
    for (int j = 1; j <= cfg_.receivers(); ++j) {
        auto &per_slot = g_[static_cast<std::size_t>(j - 1)];
        per_slot.resize(static_cast<std::size_t>(slots_));
        const int rows = cfg_.n_of(j);
        for (int t = 1; t <= slots_; ++t) {
            cmat &g = per_slot[static_cast<std::size_t>(t - 1)];
            g.resize(rows, cfg_.m);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cfg_.m; ++c)
                    g(r, c) = rng.cgaussian_bounded(law_.d_max);
        }
    }
}

const cmat &ChannelRealization::block(int j, int t) const {
    if (j < 1 || j > cfg_.receivers())
        throw std::invalid_argument("receiver index " + std::to_string(j) + " outside [1, " +
                                    std::to_string(cfg_.receivers()) + "]");
    if (t < 1 || t > slots_)
        throw std::invalid_argument("slot index " + std::to_string(t) + " outside [1, " +
                                    std::to_string(slots_) + "]");
    return g_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(t - 1)];
}

cmat &ChannelRealization::mutable_block(int j, int t) {
    return const_cast<cmat &>(static_cast<const ChannelRealization *>(this)->block(j, t));
}

ChannelRealization generate_channel(const AntennaConfig &cfg, int slots, const ChannelLaw &law,
                                    std::uint64_t master_seed, std::uint64_t stream) {
    RngStream rng(master_seed, stream);
    return ChannelRealization(cfg, slots, law, rng);
}

cmat stack_block_diagonal(const ChannelRealization &real, int j, int t0, int t1, int width) {
    if (t0 < 1 || t1 > real.slots() || t0 > t1)
        throw std::invalid_argument("slot range [" + std::to_string(t0) + ", " +
                                    std::to_string(t1) + "] invalid for " +
                                    std::to_string(real.slots()) + " slots");
    std::vector<cmat> blocks;
    blocks.reserve(static_cast<std::size_t>(t1 - t0 + 1));
    for (int t = t0; t <= t1; ++t)
        blocks.push_back(real.block(j, t));
    return stack_block_diagonal(blocks, width);
}

cmat stack_block_diagonal(const std::vector<cmat> &blocks, int width) {
    if (blocks.empty())
        throw std::invalid_argument("cannot stack an empty block list");
    const Eigen::Index rows_each = blocks.front().rows();
    const Eigen::Index cols_full = blocks.front().cols();
    for (const cmat &b : blocks) {
        if (b.rows() != rows_each || b.cols() != cols_full)
            throw std::invalid_argument("all stacked blocks must share one shape");
    }
    const Eigen::Index w = width < 0 ? cols_full : static_cast<Eigen::Index>(width);
    if (w < 1 || w > cols_full)
        throw std::invalid_argument("stack width " + std::to_string(w) + " outside [1, " +
                                    std::to_string(cols_full) + "]");
    const auto n = static_cast<Eigen::Index>(blocks.size());
    cmat out = cmat::Zero(n * rows_each, n * w);
    for (Eigen::Index i = 0; i < n; ++i)
        out.block(i * rows_each, i * w, rows_each, w) =
            blocks[static_cast<std::size_t>(i)].leftCols(w);
    return out;
}

std::vector<SignalBlock> apply_channel(const ChannelRealization &real, const cvec &x,
                                       NoiseMode mode, RngStream *noise_rng) {
    const AntennaConfig &cfg = real.config();
    if (x.size() != static_cast<Eigen::Index>(real.slots()) * cfg.m)
        throw std::invalid_argument("transmit vector holds " + std::to_string(x.size()) +
                                    " samples, expected slots*m = " +
                                    std::to_string(real.slots() * cfg.m));
    if (mode == NoiseMode::unit_variance && noise_rng == nullptr)
        throw std::invalid_argument("unit-variance mode needs a noise stream");

    std::vector<SignalBlock> out;
    out.reserve(static_cast<std::size_t>(cfg.receivers()));
    for (int j = 1; j <= cfg.receivers(); ++j) {
        SignalBlock blk;
        blk.role = SignalRole::received;
        blk.owner = j;
        blk.t0 = 1;
        blk.t1 = real.slots();
        blk.values.resize(static_cast<Eigen::Index>(real.slots()) * cfg.n_of(j));
        for (int t = 1; t <= real.slots(); ++t) {
            const cmat &g = real.block(j, t);
            cvec y = g * x.segment(static_cast<Eigen::Index>(t - 1) * cfg.m, cfg.m);
            if (mode == NoiseMode::unit_variance) {
                for (Eigen::Index r = 0; r < y.size(); ++r)
                    y(r) += noise_rng->cgaussian();
            }
            blk.values.segment(static_cast<Eigen::Index>(t - 1) * cfg.n_of(j), cfg.n_of(j)) = y;
        }
        out.push_back(std::move(blk));
    }
    return out;
}

} // namespace sdofsim
