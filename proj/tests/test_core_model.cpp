// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "sdofsim/analysis.hpp"
#include "sdofsim/channel.hpp"
#include "sdofsim/errors.hpp"

using namespace sdofsim;

TEST_CASE("antenna config validation") {
    CHECK_NOTHROW(AntennaConfig(4, {2, 3}));
    CHECK_THROWS_AS(AntennaConfig(0, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(AntennaConfig(-1, {2, 3}), std::invalid_argument);
    CHECK_THROWS_AS(AntennaConfig(4, {2}), std::invalid_argument);     // no eavesdropper
    CHECK_THROWS_AS(AntennaConfig(4, {}), std::invalid_argument);      // no receivers
    CHECK_THROWS_AS(AntennaConfig(4, {2, 0}), std::invalid_argument);  // zero antennas
    CHECK_THROWS_AS(AntennaConfig(4, {-2, 3}), std::invalid_argument); // negative
    CHECK_THROWS_AS(AntennaConfig(1 << 20, {2, 3}), std::invalid_argument); // overflow guard
    CHECK_THROWS_AS(AntennaConfig(4, {2, 1 << 20}), std::invalid_argument);
}

TEST_CASE("antenna config derived quantities") {
    const AntennaConfig c(4, {2, 3, 1, 3});
    CHECK(c.k() == 3);
    CHECK(c.n1() == 2);
    CHECK(c.n_max() == 3);
    CHECK(c.n_max_index() == 2); // tie between receivers 2 and 4 breaks low
    CHECK(c.m_bar() == 4);       // min(4, 2+3)
    CHECK(c.n_bar() == 2);       // min(2, 3)
    CHECK(c.n_of(1) == 2);
    CHECK(c.n_of(4) == 3);
    CHECK_THROWS_AS(c.n_of(0), std::invalid_argument);
    CHECK_THROWS_AS(c.n_of(5), std::invalid_argument);

    const AntennaConfig d(6, {2, 3});
    CHECK(d.m_bar() == 5);
    CHECK(d.n_bar() == 2);

    const AntennaConfig e(3, {1, 2});
    CHECK(e.m_bar() == 3);
    CHECK(e.n_bar() == 1);
}

TEST_CASE("rng substreams are deterministic and distinct") {
    RngStream a(42, 7), b(42, 7), c(42, 8);
    for (int i = 0; i < 64; ++i) {
        const auto za = a.cgaussian();
        const auto zb = b.cgaussian();
        CHECK(za == zb); // bit-exact
        (void)c.cgaussian();
    }
    RngStream a2(42, 7), c2(42, 8);
    bool any_diff = false;
    for (int i = 0; i < 64; ++i)
        any_diff |= (a2.cgaussian() != c2.cgaussian());
    CHECK(any_diff);
}

TEST_CASE("rng uniform range and gaussian moments") {
    RngStream rng(1, 0);
    const int n = 100000;
    double sum_re = 0, sum_im = 0, sum_sq = 0;
    for (int i = 0; i < n; ++i) {
        const auto z = rng.cgaussian();
        sum_re += z.real();
        sum_im += z.imag();
        sum_sq += std::norm(z);
    }
    // Real and imaginary parts are N(0, 1/2): SE of the mean is sqrt(0.5/n).
    const double se = std::sqrt(0.5 / n);
    CHECK(std::abs(sum_re / n) < 3 * se);
    CHECK(std::abs(sum_im / n) < 3 * se);
    // |z|^2 has mean 1, variance 1: SE 1/sqrt(n).
    CHECK(std::abs(sum_sq / n - 1.0) < 3.0 / std::sqrt(double(n)));

    RngStream u(1, 1);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("channel generation is bit-exact under seed replay") {
    const AntennaConfig cfg(4, {2, 3});
    const ChannelLaw law{};
    const auto r1 = generate_channel(cfg, 3, law, 99, 5);
    const auto r2 = generate_channel(cfg, 3, law, 99, 5);
    for (int j = 1; j <= cfg.receivers(); ++j)
        for (int t = 1; t <= 3; ++t)
            CHECK(r1.block(j, t) == r2.block(j, t));
    CHECK(r1.master_seed() == 99);
    CHECK(r1.stream() == 5);

    const auto r3 = generate_channel(cfg, 3, law, 99, 6);
    CHECK(r1.block(1, 1) != r3.block(1, 1));
}

TEST_CASE("channel law bounds magnitudes and invalid parameters throw") {
    const AntennaConfig cfg(3, {2, 2});
    // d_max = 1 forces the rejection loop to actually run (P(|g|>1) ~ 0.37).
    const ChannelLaw tight{1.0};
    const auto r = generate_channel(cfg, 4, tight, 7, 0);
    for (int j = 1; j <= 2; ++j)
        for (int t = 1; t <= 4; ++t)
            CHECK(r.block(j, t).cwiseAbs().maxCoeff() <= 1.0);

    CHECK_THROWS_AS(generate_channel(cfg, 0, ChannelLaw{}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_channel(cfg, -2, ChannelLaw{}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_channel(cfg, 1, ChannelLaw{0.0}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_channel(cfg, 1, ChannelLaw{-3.0}, 1, 0), std::invalid_argument);
}

TEST_CASE("channel draws have the advertised first and second moments") {
    const AntennaConfig cfg(10, {10, 2});
    const auto r = generate_channel(cfg, 100, ChannelLaw{}, 2024, 0);
    // 10*10*100 = 1e5 legitimate-receiver coefficients.
    double sum_re = 0, sum_im = 0, sum_sq = 0;
    const int n = 10 * 10 * 100;
    for (int t = 1; t <= 100; ++t) {
        const cmat &g = r.block(1, t);
        sum_re += g.real().sum();
        sum_im += g.imag().sum();
        sum_sq += g.squaredNorm();
    }
    const double se = std::sqrt(0.5 / n);
    CHECK(std::abs(sum_re / n) < 3 * se);
    CHECK(std::abs(sum_im / n) < 3 * se);
    CHECK(std::abs(sum_sq / n - 1.0) < 3.0 / std::sqrt(double(n)));
}

TEST_CASE("generated blocks are almost surely full rank") {
    const AntennaConfig cfg(4, {2, 3, 1});
    for (int trial = 0; trial < 200; ++trial) {
        const auto r = generate_channel(cfg, 1, ChannelLaw{}, 11, trial);
        CHECK(numeric_rank(r.block(1, 1)) == 2); // min(2, 4)
        CHECK(numeric_rank(r.block(2, 1)) == 3); // min(3, 4)
        CHECK(numeric_rank(r.block(3, 1)) == 1); // min(1, 4)
    }
}

TEST_CASE("block-diagonal stacking shapes and content") {
    const AntennaConfig cfg(3, {2, 2});
    const auto r = generate_channel(cfg, 4, ChannelLaw{}, 5, 0);

    const cmat s = stack_block_diagonal(r, 1, 2, 4);
    CHECK(s.rows() == 3 * 2);
    CHECK(s.cols() == 3 * 3);
    for (int b = 0; b < 3; ++b)
        CHECK(s.block(2 * b, 3 * b, 2, 3) == r.block(1, 2 + b));
    // Everything off the diagonal blocks is exactly zero.
    double off = 0;
    for (int br = 0; br < 3; ++br)
        for (int bc = 0; bc < 3; ++bc)
            if (br != bc)
                off += s.block(2 * br, 3 * bc, 2, 3).cwiseAbs().sum();
    CHECK(off == 0.0);

    // Single slot reduces to the block itself.
    CHECK(stack_block_diagonal(r, 2, 3, 3) == r.block(2, 3));

    // Width restriction keeps leading transmit columns.
    const cmat w = stack_block_diagonal(r, 1, 1, 2, 2);
    CHECK(w.cols() == 2 * 2);
    CHECK(w.block(0, 0, 2, 2) == r.block(1, 1).leftCols(2));

    CHECK_THROWS_AS(stack_block_diagonal(r, 1, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(stack_block_diagonal(r, 1, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(stack_block_diagonal(r, 1, 1, 5), std::invalid_argument);
    CHECK_THROWS_AS(stack_block_diagonal(r, 4, 1, 2), std::invalid_argument);
}

TEST_CASE("stacking enjoys generic rank additivity") {
    const AntennaConfig cfg(4, {2, 3});
    for (int trial = 0; trial < 50; ++trial) {
        const auto r = generate_channel(cfg, 3, ChannelLaw{}, 31, trial);
        for (int j = 1; j <= 2; ++j) {
            int sum = 0;
            for (int t = 1; t <= 3; ++t)
                sum += numeric_rank(r.block(j, t));
            CHECK(numeric_rank(stack_block_diagonal(r, j, 1, 3)) == sum);
        }
    }
}

TEST_CASE("apply_channel basics") {
    const AntennaConfig cfg(2, {2, 1});
    const auto r = generate_channel(cfg, 2, ChannelLaw{}, 8, 0);

    // Zero input, no noise: all outputs exactly zero.
    const cvec x0 = cvec::Zero(2 * 2);
    auto ys = apply_channel(r, x0, NoiseMode::off);
    REQUIRE(ys.size() == 2);
    CHECK(ys[0].values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ys[1].values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ys[0].owner == 1);
    CHECK(ys[1].owner == 2);
    CHECK(ys[0].role == SignalRole::received);
    CHECK(ys[0].t0 == 1);
    CHECK(ys[0].t1 == 2);
    CHECK(ys[0].values.size() == 2 * 2);
    CHECK(ys[1].values.size() == 2 * 1);

    // Scalar sanity: m = n = 1, one slot.
    const AntennaConfig sc(1, {1, 1});
    const auto rs = generate_channel(sc, 1, ChannelLaw{}, 8, 1);
    cvec xs(1);
    xs << std::complex<double>(2.0, -1.0);
    const auto yss = apply_channel(rs, xs, NoiseMode::off);
    CHECK(yss[0].values(0) == rs.block(1, 1)(0, 0) * xs(0));

    // Doubling the input doubles the output bit-exactly (noise off).
    RngStream sym(8, 2);
    cvec x(2 * 2);
    for (int i = 0; i < x.size(); ++i)
        x(i) = sym.cgaussian();
    const auto y1 = apply_channel(r, x, NoiseMode::off);
    const auto y2 = apply_channel(r, cvec(2 * x), NoiseMode::off);
    for (int j = 0; j < 2; ++j)
        CHECK(y2[j].values == cvec(2 * y1[j].values));

    // Additivity up to rounding.
    cvec xb(2 * 2);
    for (int i = 0; i < xb.size(); ++i)
        xb(i) = sym.cgaussian();
    const auto ya = apply_channel(r, x, NoiseMode::off);
    const auto yb = apply_channel(r, xb, NoiseMode::off);
    const auto yab = apply_channel(r, cvec(x + xb), NoiseMode::off);
    for (int j = 0; j < 2; ++j)
        CHECK((yab[j].values - ya[j].values - yb[j].values).cwiseAbs().maxCoeff() < 1e-12);

    // Stacked product equals the slot-by-slot concatenation.
    const cmat s = stack_block_diagonal(r, 1, 1, 2);
    cvec manual(2 * 2);
    for (int t = 1; t <= 2; ++t)
        manual.segment(2 * (t - 1), 2) = r.block(1, t) * x.segment(2 * (t - 1), 2);
    CHECK((cvec(s * x) - manual).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((ya[0].values - manual).cwiseAbs().maxCoeff() < 1e-12);

    // Length mismatch is rejected.
    CHECK_THROWS_AS(apply_channel(r, cvec::Zero(3), NoiseMode::off), std::invalid_argument);
    // Noise mode requires a stream.
    CHECK_THROWS_AS(apply_channel(r, x0, NoiseMode::unit_variance, nullptr),
                    std::invalid_argument);
}

TEST_CASE("receive noise has unit variance") {
    const AntennaConfig cfg(1, {1, 1});
    const auto r = generate_channel(cfg, 1, ChannelLaw{}, 9, 0);
    const cvec x0 = cvec::Zero(1);
    RngStream noise(9, 1);
    double sum_sq = 0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const auto ys = apply_channel(r, x0, NoiseMode::unit_variance, &noise);
        sum_sq += std::norm(ys[0].values(0)) + std::norm(ys[1].values(0));
    }
    CHECK(std::abs(sum_sq / (2 * n) - 1.0) < 0.02);
}

TEST_CASE("channel perturbation hooks work") {
    const AntennaConfig cfg(3, {2, 2});
    auto r = generate_channel(cfg, 2, ChannelLaw{}, 123, 0);
    const cmat before = r.block(2, 1);
    r.mutable_block(2, 1)(0, 0) += std::complex<double>(1.0, 0.0);
    CHECK(r.block(2, 1) != before);
    CHECK_THROWS_AS(r.block(3, 1), std::invalid_argument);
    CHECK_THROWS_AS(r.block(1, 3), std::invalid_argument);
}
