// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sdofsim/errors.hpp"

namespace sdofsim {

namespace {

void check_power(double p) {
    if (!(p >= 0.0) || !std::isfinite(p))
        throw std::invalid_argument("transmit power must be finite and nonnegative");
}

cvec draw_symbols(RngStream &rng, int count, double sigma) {
    cvec s(count);
    for (int i = 0; i < count; ++i)
        s(i) = sigma * rng.cgaussian();
    return s;
}

} // namespace

SchemeEncoding encode_case_a(const AntennaConfig &cfg, double p, RngStream &rng) {
    cfg.validate();
    check_power(p);
    const int m = cfg.m;
    const int nmax = cfg.n_max();
    if (!(nmax < m && m <= cfg.n1()))
        throw not_applicable_error("single-slot scheme needs n_max < m <= n1, got " +
                                   cfg.describe());
    SchemeEncoding e;
    e.b = 1;
    e.width = m;
    e.m = m;
    e.noise_dims = nmax;
    e.power = p;
    e.scale = 1.0;
    e.precoder = cmat::Identity(m, m);
    const double sigma = std::sqrt(p / m);
    e.u = draw_symbols(rng, nmax, sigma);
    e.v = draw_symbols(rng, m - nmax, sigma);
    e.x.resize(m);
    e.x << e.u, e.v;
    return e;
}

TwoPhasePlan TwoPhasePlan::for_config(const AntennaConfig &cfg) {
    cfg.validate();
    if (!(cfg.m > std::max(cfg.n1(), cfg.n_max())))
        throw not_applicable_error("two-phase scheme needs m > max(n1, n_max), got " +
                                   cfg.describe());
    TwoPhasePlan plan;
    plan.m_bar = cfg.m_bar();
    plan.n_bar = cfg.n_bar();
    plan.phase2 = plan.m_bar - cfg.n_max();
    plan.b = plan.n_bar + plan.phase2;
    plan.u_len = plan.n_bar * plan.m_bar;
    plan.v_len = cfg.n1() * plan.phase2;
    return plan;
}

cmat build_noise_selector(const AntennaConfig &cfg, const std::vector<cmat> &g1_phase1) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    if (static_cast<int>(g1_phase1.size()) < plan.n_bar)
        throw std::invalid_argument("selector needs " + std::to_string(plan.n_bar) +
                                    " phase-1 blocks, got " + std::to_string(g1_phase1.size()));
    for (int i = 0; i < plan.n_bar; ++i) {
        const cmat &g = g1_phase1[static_cast<std::size_t>(i)];
        if (g.rows() != cfg.n1() || g.cols() < plan.m_bar)
            throw std::invalid_argument("phase-1 block " + std::to_string(i + 1) +
                                        " must be n1 x >=m_bar");
    }
    cmat a = cmat::Zero(static_cast<Eigen::Index>(plan.phase2) * plan.m_bar, plan.u_len);
    // Slot-t block (t = n_bar + s): row i repeats what Rx1 antenna s heard at
    // phase-1 time i, so the only nonzero entries sit in block column i.
    for (int s = 1; s <= plan.phase2; ++s) {
        for (int i = 1; i <= plan.n_bar; ++i) {
            const Eigen::Index row = static_cast<Eigen::Index>(s - 1) * plan.m_bar + (i - 1);
            a.block(row, static_cast<Eigen::Index>(i - 1) * plan.m_bar, 1, plan.m_bar) =
                g1_phase1[static_cast<std::size_t>(i - 1)].row(s - 1).leftCols(plan.m_bar);
        }
    }
    return a;
}

cmat build_noise_selector(const AntennaConfig &cfg, const ChannelRealization &real) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    if (!(real.config() == cfg))
        throw std::invalid_argument("realization was drawn for a different antenna setup");
    if (real.slots() < plan.n_bar)
        throw std::invalid_argument("realization too short for phase 1");
    std::vector<cmat> blocks;
    blocks.reserve(static_cast<std::size_t>(plan.n_bar));
    for (int t = 1; t <= plan.n_bar; ++t)
        blocks.push_back(real.block(1, t));
    return build_noise_selector(cfg, blocks);
}

cmat build_phase2_precoder(const AntennaConfig &cfg, const cmat &noise_selector) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    if (noise_selector.rows() != static_cast<Eigen::Index>(plan.phase2) * plan.m_bar ||
        noise_selector.cols() != plan.u_len)
        throw std::invalid_argument("noise selector has shape " +
                                    std::to_string(noise_selector.rows()) + "x" +
                                    std::to_string(noise_selector.cols()) + ", expected " +
                                    std::to_string(plan.phase2 * plan.m_bar) + "x" +
                                    std::to_string(plan.u_len));
    const int n1 = cfg.n1();
    cmat p = cmat::Zero(static_cast<Eigen::Index>(plan.b) * plan.m_bar,
                        static_cast<Eigen::Index>(plan.u_len) + plan.v_len);
    p.topLeftCorner(plan.u_len, plan.u_len) = cmat::Identity(plan.u_len, plan.u_len);
    p.block(plan.u_len, 0, noise_selector.rows(), noise_selector.cols()) = noise_selector;
    for (int s = 0; s < plan.phase2; ++s)
        p.block(static_cast<Eigen::Index>(plan.u_len) + static_cast<Eigen::Index>(s) * plan.m_bar,
                static_cast<Eigen::Index>(plan.u_len) + static_cast<Eigen::Index>(s) * n1, n1, n1) =
            cmat::Identity(n1, n1);
    return p;
}

SchemeEncoding encode_two_phase(const AntennaConfig &cfg, double p,
                                const ChannelRealization &real, RngStream &rng) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    check_power(p);
    if (!(real.config() == cfg))
        throw std::invalid_argument("realization was drawn for a different antenna setup");
    if (real.slots() < plan.b)
        throw std::invalid_argument("realization holds " + std::to_string(real.slots()) +
                                    " slots, block needs " + std::to_string(plan.b));

    // Symbols are consumed from rng before any channel state is read, so the
    // stream contents never depend on the realization.
    const double sigma = std::sqrt(p / plan.m_bar);
    const cvec u_raw = draw_symbols(rng, plan.u_len, sigma);
    const cvec v_raw = draw_symbols(rng, plan.v_len, sigma);

    const cmat a = build_noise_selector(cfg, real);
    const cmat precoder = build_phase2_precoder(cfg, a);
    // Conditional per-slot power of P s with s ~ CN(0, c^2 p / m_bar) is
    // c^2 (p / m_bar) ||P||_F^2 / b; choose c to make it exactly p.
    const double c =
        std::sqrt(static_cast<double>(plan.b) * plan.m_bar / precoder.squaredNorm());

    SchemeEncoding e;
    e.b = plan.b;
    e.width = plan.m_bar;
    e.m = cfg.m;
    e.noise_dims = plan.u_len;
    e.power = p;
    e.scale = c;
    e.precoder = precoder;
    e.u = c * u_raw;
    e.v = c * v_raw;

    cvec sym(plan.u_len + plan.v_len);
    sym << e.u, e.v;
    const cvec active = precoder * sym;
    e.x = cvec::Zero(static_cast<Eigen::Index>(plan.b) * cfg.m);
    for (int t = 0; t < plan.b; ++t)
        e.x.segment(static_cast<Eigen::Index>(t) * cfg.m, plan.m_bar) =
            active.segment(static_cast<Eigen::Index>(t) * plan.m_bar, plan.m_bar);
    return e;
}

} // namespace sdofsim
