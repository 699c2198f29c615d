// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/analysis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdofsim/errors.hpp"

namespace sdofsim {

namespace {

Eigen::VectorXd singular_values(const cmat &a) {
    Eigen::JacobiSVD<cmat> svd(a);
    return svd.singularValues();
}

double log1p_sum(const Eigen::VectorXd &sv2, double p) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < sv2.size(); ++i)
        acc += std::log1p(p * sv2(i));
    return acc;
}

void check_slope_powers(double p0, double p1) {
    if (!(p0 > 0.0) || !(p1 > 0.0) || !std::isfinite(p0) || !std::isfinite(p1) || p0 == p1)
        throw std::invalid_argument("slope powers must be finite, positive and distinct");
}

void check_tol(double rel_tol) {
    if (!(rel_tol > 0.0) || !std::isfinite(rel_tol))
        throw std::invalid_argument("rank tolerance must be positive and finite");
}

// Stacked receive matrix for receiver j over the encoding's block, restricted
// to the active antennas so columns line up with the precoder rows.
cmat stacked_receiver(const AntennaConfig &cfg, const SchemeEncoding &enc,
                      const ChannelRealization &real, int j) {
    if (!(real.config() == cfg))
        throw std::invalid_argument("realization was drawn for a different antenna setup");
    if (enc.m != cfg.m)
        throw std::invalid_argument("encoding was built for a different antenna setup");
    if (real.slots() < enc.b)
        throw std::invalid_argument("realization too short for the encoded block");
    return stack_block_diagonal(real, j, 1, enc.b, enc.width);
}

} // namespace

int numeric_rank(const cmat &a, double rel_tol) {
    check_tol(rel_tol);
    if (a.rows() == 0 || a.cols() == 0)
        return 0;
    if (!a.allFinite())
        throw numerical_error("matrix has non-finite entries");
    const Eigen::VectorXd sv = singular_values(a);
    const double smax = sv(0);
    if (!(smax > 0.0))
        return 0;
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > rel_tol * smax)
            ++rank;
    return rank;
}

double logdet_dof_slope(const cmat &a, double p0, double p1) {
    check_slope_powers(p0, p1);
    if (a.rows() == 0 || a.cols() == 0)
        return 0.0;
    if (!a.allFinite())
        throw numerical_error("matrix has non-finite entries");
    const Eigen::VectorXd sv2 = singular_values(a).array().square();
    const double slope =
        (log1p_sum(sv2, p1) - log1p_sum(sv2, p0)) / (std::log(p1) - std::log(p0));
    if (!std::isfinite(slope))
        throw numerical_error("slope evaluation overflowed");
    return slope;
}

double leakage_dof(const SchemeEncoding &enc, const cmat &g_stacked, double p0, double p1) {
    check_slope_powers(p0, p1);
    if (g_stacked.rows() == 0)
        return 0.0;
    if (g_stacked.cols() != enc.precoder.rows())
        throw std::invalid_argument("receive matrix has " + std::to_string(g_stacked.cols()) +
                                    " columns, precoder expects " +
                                    std::to_string(enc.precoder.rows()));
    if (!g_stacked.allFinite())
        throw numerical_error("matrix has non-finite entries");
    // Symbol variance is scale^2 p / width; fold everything but p into the
    // squared singular values so both log-dets reuse one SVD each.
    const double per_symbol = enc.scale * enc.scale / enc.width;
    const Eigen::VectorXd full =
        singular_values(g_stacked * enc.precoder).array().square() * per_symbol;
    const Eigen::VectorXd noise =
        singular_values(g_stacked * enc.noise_columns()).array().square() * per_symbol;
    const double f0 = log1p_sum(full, p0) - log1p_sum(noise, p0);
    const double f1 = log1p_sum(full, p1) - log1p_sum(noise, p1);
    const double slope = (f1 - f0) / (std::log(p1) - std::log(p0));
    if (!std::isfinite(slope))
        throw numerical_error("slope evaluation overflowed");
    return slope;
}

double leakage_dof(const AntennaConfig &cfg, const SchemeEncoding &enc,
                   const ChannelRealization &real, int j, double p0, double p1) {
    return leakage_dof(enc, stacked_receiver(cfg, enc, real, j), p0, p1);
}

SecrecyRankReport secrecy_rank_check(const AntennaConfig &cfg, const SchemeEncoding &enc,
                                     const ChannelRealization &real, int j, double rel_tol) {
    const cmat g = stacked_receiver(cfg, enc, real, j);
    SecrecyRankReport rep;
    rep.rank_noise = numeric_rank(g * enc.noise_columns(), rel_tol);
    rep.rank_full = numeric_rank(g * enc.precoder, rel_tol);
    rep.decodable_dims = rep.rank_full - rep.rank_noise;
    return rep;
}

cvec decode_legitimate(const AntennaConfig &cfg, const cvec &y1, const ChannelRealization &real,
                       double rel_tol) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    check_tol(rel_tol);
    if (!(real.config() == cfg))
        throw std::invalid_argument("realization was drawn for a different antenna setup");
    if (real.slots() < plan.b)
        throw std::invalid_argument("realization too short for the decoded block");
    const int n1 = cfg.n1();
    if (y1.size() != static_cast<Eigen::Index>(plan.b) * n1)
        throw std::invalid_argument("observation holds " + std::to_string(y1.size()) +
                                    " samples, block needs " + std::to_string(plan.b * n1));

    cvec vhat(plan.v_len);
    for (int s = 1; s <= plan.phase2; ++s) {
        const int t = plan.n_bar + s;
        // Antenna s observed the retransmitted noise equations during phase 1;
        // its own samples cancel them without any channel-state exchange.
        cvec uprime(plan.n_bar);
        for (int i = 1; i <= plan.n_bar; ++i)
            uprime(i - 1) = y1(static_cast<Eigen::Index>(i - 1) * n1 + (s - 1));
        const cvec yt = y1.segment(static_cast<Eigen::Index>(t - 1) * n1, n1);
        const cmat &g = real.block(1, t);
        const cvec r = yt - g.leftCols(plan.n_bar) * uprime;
        const cmat gs = g.leftCols(n1);
        if (numeric_rank(gs, rel_tol) < n1)
            throw degenerate_draw_error("phase-2 slot " + std::to_string(t) +
                                        " subsystem is numerically singular");
        vhat.segment(static_cast<Eigen::Index>(s - 1) * n1, n1) = gs.fullPivLu().solve(r);
    }
    return vhat;
}

cvec decode_case_a(const AntennaConfig &cfg, const cvec &y1, const ChannelRealization &real,
                   double rel_tol) {
    cfg.validate();
    check_tol(rel_tol);
    const int m = cfg.m;
    const int nmax = cfg.n_max();
    if (!(nmax < m && m <= cfg.n1()))
        throw not_applicable_error("single-slot decoder needs n_max < m <= n1, got " +
                                   cfg.describe());
    if (!(real.config() == cfg))
        throw std::invalid_argument("realization was drawn for a different antenna setup");
    if (y1.size() != cfg.n1())
        throw std::invalid_argument("observation holds " + std::to_string(y1.size()) +
                                    " samples, expected n1 = " + std::to_string(cfg.n1()));
    const cmat &g = real.block(1, 1);
    if (numeric_rank(g, rel_tol) < m)
        throw degenerate_draw_error("receive matrix lost column rank");
    const cvec xhat = g.colPivHouseholderQr().solve(y1);
    return xhat.tail(m - nmax);
}

} // namespace sdofsim
