// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/converse.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "sdofsim/analysis.hpp"
#include "sdofsim/encoder.hpp"
#include "sdofsim/errors.hpp"

namespace sdofsim {

namespace {

constexpr const char *kRankSurrogateNote =
    "linear rank surrogate of an entropy inequality; certifies signal-dimension "
    "counting, not the converse itself";

cmat draw_matrix(int rows, int cols, const ChannelLaw &law, RngStream &rng) {
    cmat g(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            g(r, c) = rng.cgaussian_bounded(law.d_max);
    return g;
}

// Stacked block-diagonal receive matrix of a receiver with `antennas` rows
// per slot, channel drawn fresh (independently of everything drawn before).
cmat fresh_receiver(int antennas, int slots, int width, const ChannelLaw &law, RngStream &rng) {
    if (antennas == 0)
        return cmat(0, static_cast<Eigen::Index>(slots) * width);
    std::vector<cmat> blocks;
    blocks.reserve(static_cast<std::size_t>(slots));
    for (int t = 0; t < slots; ++t)
        blocks.push_back(draw_matrix(antennas, width, law, rng));
    return stack_block_diagonal(blocks);
}

// Rows of a stacked per-slot signal belonging to antennas [a0, a1] (1-based,
// inclusive) of a receiver with `antennas` rows per slot.
cmat select_antenna_rows(const cmat &stacked, int slots, int antennas, int a0, int a1) {
    if (a0 < 1 || a1 > antennas || a0 > a1)
        throw std::invalid_argument("antenna row range invalid");
    const int rows_per_slot = a1 - a0 + 1;
    cmat out(static_cast<Eigen::Index>(slots) * rows_per_slot, stacked.cols());
    for (int t = 0; t < slots; ++t)
        out.middleRows(static_cast<Eigen::Index>(t) * rows_per_slot, rows_per_slot) =
            stacked.middleRows(static_cast<Eigen::Index>(t) * antennas + (a0 - 1), rows_per_slot);
    return out;
}

cmat vstack(const cmat &top, const cmat &bottom) {
    if (top.rows() == 0)
        return bottom;
    if (bottom.rows() == 0)
        return top;
    if (top.cols() != bottom.cols())
        throw std::invalid_argument("stacked signals must share symbol width");
    cmat out(top.rows() + bottom.rows(), top.cols());
    out.topRows(top.rows()) = top;
    out.bottomRows(bottom.rows()) = bottom;
    return out;
}

// Each per-trial body returns (lhs, rhs) with the claim normalized to
// lhs <= rhs + tol.
using TrialBody = std::function<std::pair<double, double>(const StrategyDraw &, RngStream &)>;

ConverseCheckReport run_check(const std::string &name, const LinearStrategy &strategy,
                              const ChannelLaw &law, int trials, std::uint64_t master_seed,
                              double tol, const TrialBody &body) {
    law.validate();
    if (trials < 1)
        throw std::invalid_argument("trial count must be positive");
    if (!(tol >= 0.0))
        throw std::invalid_argument("tolerance must be nonnegative");

    ConverseCheckReport rep;
    rep.check = name;
    rep.trials = trials;
    rep.note = kRankSurrogateNote;
    double lhs_sum = 0.0;
    double rhs_sum = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        const std::uint64_t stream = trial_stream(trial);
        RngStream rng(master_seed, stream);
        const StrategyDraw draw = strategy.draw(law, rng);
        const auto [lhs, rhs] = body(draw, rng);
        lhs_sum += lhs;
        rhs_sum += rhs;
        if (lhs <= rhs + tol) {
            ++rep.holds;
        } else {
            ++rep.violations;
            rep.failing_streams.push_back(stream);
        }
    }
    rep.lhs_mean = lhs_sum / trials;
    rep.rhs_mean = rhs_sum / trials;
    rep.passed = rep.holds >= static_cast<int>(kConversePassRatio * trials) &&
                 rep.lhs_mean <= rep.rhs_mean + tol;
    return rep;
}

// Supplier channel plays receiver A when present; its antenna count must
// match. Returns the stacked receive matrix for A.
cmat receiver_a(const StrategyDraw &draw, int nA, const ChannelLaw &law, RngStream &rng) {
    if (draw.supplier.empty())
        return fresh_receiver(nA, draw.slots, draw.width, law, rng);
    return stack_block_diagonal(draw.supplier, draw.width);
}

void require_supplier_match(const LinearStrategy &strategy, int nA, const char *who) {
    if (strategy.supplier_antennas() != 0 && strategy.supplier_antennas() != nA)
        throw std::invalid_argument(std::string(who) + " must have the supplier's antenna count (" +
                                    std::to_string(strategy.supplier_antennas()) + "), got " +
                                    std::to_string(nA));
}

} // namespace

LinearStrategy LinearStrategy::channel_independent(int width, int slots, int symbols) {
    if (width < 1 || slots < 1 || symbols < 1)
        throw std::invalid_argument("strategy dimensions must be positive");
    LinearStrategy s;
    s.kind_ = Kind::independent;
    s.width_ = width;
    s.slots_ = slots;
    s.symbols_ = symbols;
    s.name_ = "random";
    return s;
}

LinearStrategy LinearStrategy::two_phase(const AntennaConfig &cfg) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    LinearStrategy s;
    s.kind_ = Kind::two_phase;
    s.cfg_ = cfg;
    s.width_ = plan.m_bar;
    s.slots_ = plan.b;
    s.symbols_ = plan.u_len + plan.v_len;
    s.name_ = "two-phase";
    return s;
}

LinearStrategy LinearStrategy::custom(cmat x_map, int slots, int width) {
    if (slots < 1 || width < 1)
        throw std::invalid_argument("strategy dimensions must be positive");
    if (x_map.rows() != static_cast<Eigen::Index>(slots) * width || x_map.cols() < 1)
        throw std::invalid_argument("strategy matrix must be (slots*width) x symbols");
    LinearStrategy s;
    s.kind_ = Kind::custom;
    s.fixed_ = std::move(x_map);
    s.width_ = width;
    s.slots_ = slots;
    s.symbols_ = static_cast<int>(s.fixed_.cols());
    s.name_ = "custom";
    return s;
}

int LinearStrategy::supplier_antennas() const {
    return kind_ == Kind::two_phase ? cfg_.n1() : 0;
}

StrategyDraw LinearStrategy::draw(const ChannelLaw &law, RngStream &rng) const {
    StrategyDraw d;
    d.slots = slots_;
    d.width = width_;
    switch (kind_) {
    case Kind::independent:
        d.x_map = draw_matrix(slots_ * width_, symbols_, law, rng);
        break;
    case Kind::two_phase: {
        // Supplier channel first, then the precoder it induces. The supplier
        // spans all slots: checks reuse it as receiver 1's channel.
        d.supplier.reserve(static_cast<std::size_t>(slots_));
        for (int t = 0; t < slots_; ++t)
            d.supplier.push_back(draw_matrix(cfg_.n1(), width_, law, rng));
        const std::vector<cmat> phase1(d.supplier.begin(),
                                       d.supplier.begin() + TwoPhasePlan::for_config(cfg_).n_bar);
        d.x_map = build_phase2_precoder(cfg_, build_noise_selector(cfg_, phase1));
        break;
    }
    case Kind::custom:
        d.x_map = fixed_;
        break;
    }
    return d;
}

int conditional_rank(const cmat &ya, const cmat &yc, double rel_tol) {
    if (yc.rows() == 0)
        return numeric_rank(ya, rel_tol);
    return numeric_rank(vstack(ya, yc), rel_tol) - numeric_rank(yc, rel_tol);
}

ConverseCheckReport check_least_alignment(int n0, const LinearStrategy &strategy,
                                          const ChannelLaw &law, int trials,
                                          std::uint64_t master_seed, double tol) {
    if (n0 < 1)
        throw std::invalid_argument("receiver antenna count must be positive");
    require_supplier_match(strategy, n0, "receiver A");
    return run_check("least-alignment", strategy, law, trials, master_seed, tol,
                     [&](const StrategyDraw &d, RngStream &rng) {
                         const cmat ga = receiver_a(d, n0, law, rng);
                         const cmat gb = fresh_receiver(n0, d.slots, d.width, law, rng);
                         const double lhs = numeric_rank(ga * d.x_map);
                         const double rhs = numeric_rank(gb * d.x_map);
                         return std::pair{lhs, rhs};
                     });
}

ConverseCheckReport check_eri_delayed(int nA, int nB, const LinearStrategy &strategy,
                                      const ChannelLaw &law, int trials,
                                      std::uint64_t master_seed, double tol) {
    if (nA < 1 || nB < 1)
        throw std::invalid_argument("receiver antenna counts must be positive");
    require_supplier_match(strategy, nA, "receiver A");
    const int w = strategy.width();
    const double denom_b = std::min(w, nB);
    const double denom_ab = std::min(w, nA + nB);
    return run_check("rank-ratio-delayed", strategy, law, trials, master_seed, tol,
                     [&, denom_b, denom_ab](const StrategyDraw &d, RngStream &rng) {
                         const cmat ya = receiver_a(d, nA, law, rng) * d.x_map;
                         const cmat yb =
                             fresh_receiver(nB, d.slots, d.width, law, rng) * d.x_map;
                         const double lhs = numeric_rank(vstack(ya, yb)) / denom_ab;
                         const double rhs = numeric_rank(yb) / denom_b;
                         return std::pair{lhs, rhs};
                     });
}

ConverseCheckReport check_eri_nocsit(int nA, int nB, int nC, const LinearStrategy &strategy,
                                     const ChannelLaw &law, int trials,
                                     std::uint64_t master_seed, double tol) {
    if (nA < 1 || nB < 1 || nC < 0)
        throw std::invalid_argument("receiver antenna counts must be positive (nC may be 0)");
    if (nA < nB)
        throw std::invalid_argument("no-CSIT ratio check needs nA >= nB");
    // A, B and C are always drawn fresh here: X may depend on a CSIT
    // supplier, but that supplier never plays any of the three receivers.
    const int w = strategy.width();
    const double denom_a = std::min(w, nA);
    const double denom_b = std::min(w, nB);
    return run_check("rank-ratio-no-csit", strategy, law, trials, master_seed, tol,
                     [&, denom_a, denom_b](const StrategyDraw &d, RngStream &rng) {
                         const cmat ya = fresh_receiver(nA, d.slots, d.width, law, rng) * d.x_map;
                         const cmat yb = fresh_receiver(nB, d.slots, d.width, law, rng) * d.x_map;
                         const cmat yc = fresh_receiver(nC, d.slots, d.width, law, rng) * d.x_map;
                         const double lhs = conditional_rank(ya, yc) / denom_a;
                         const double rhs = conditional_rank(yb, yc) / denom_b;
                         return std::pair{lhs, rhs};
                     });
}

ConverseCheckReport check_joint_claim(int nA, int nB, int nC, const LinearStrategy &strategy,
                                      const ChannelLaw &law, int trials,
                                      std::uint64_t master_seed, double tol) {
    if (nA < 1 || nB < 1 || nC < 1)
        throw std::invalid_argument("receiver antenna counts must be positive");
    if (strategy.width() < nA + nB + nC)
        throw std::invalid_argument("joint check needs width >= nA + nB + nC");
    require_supplier_match(strategy, nA, "receiver A");
    return run_check("joint-receiver", strategy, law, trials, master_seed, tol,
                     [&](const StrategyDraw &d, RngStream &rng) {
                         const cmat ya = receiver_a(d, nA, law, rng) * d.x_map;
                         const cmat yb =
                             fresh_receiver(nB, d.slots, d.width, law, rng) * d.x_map;
                         const cmat yc =
                             fresh_receiver(nC, d.slots, d.width, law, rng) * d.x_map;
                         const cmat ybc = vstack(yb, yc);
                         const double lhs =
                             static_cast<double>(conditional_rank(ya, ybc)) / nA;
                         const double rhs =
                             static_cast<double>(conditional_rank(yb, yc)) / nB;
                         return std::pair{lhs, rhs};
                     });
}

ConverseCheckReport check_proposition1(const AntennaConfig &cfg, const LinearStrategy &strategy,
                                       const ChannelLaw &law, int trials,
                                       std::uint64_t master_seed, double tol) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg); // regime gate
    require_supplier_match(strategy, cfg.n1(), "receiver 1");
    const double ratio = static_cast<double>(cfg.n1()) / plan.n_bar;
    return run_check("proposition-1", strategy, law, trials, master_seed, tol,
                     [&, ratio](const StrategyDraw &d, RngStream &rng) {
                         const cmat y1 = receiver_a(d, cfg.n1(), law, rng) * d.x_map;
                         const cmat ymax1 =
                             fresh_receiver(plan.n_bar, d.slots, d.width, law, rng) * d.x_map;
                         const double lhs = numeric_rank(y1);
                         const double rhs = ratio * numeric_rank(ymax1);
                         return std::pair{lhs, rhs};
                     });
}

ConverseCheckReport check_proposition2(const AntennaConfig &cfg, const LinearStrategy &strategy,
                                       const ChannelLaw &law, int trials,
                                       std::uint64_t master_seed, double tol) {
    const TwoPhasePlan plan = TwoPhasePlan::for_config(cfg);
    if (!(cfg.n1() < cfg.n_max()))
        throw not_applicable_error("joint split needs n1 < n_max, got " + cfg.describe());
    require_supplier_match(strategy, cfg.n1(), "receiver 1");
    const int nA = plan.phase2;          // first m_bar - n_max antennas of Rx1
    const int nB = cfg.n_max() - plan.n_bar;
    const int nC = plan.n_bar;
    return run_check("proposition-2", strategy, law, trials, master_seed, tol,
                     [&, nA, nB, nC](const StrategyDraw &d, RngStream &rng) {
                         const cmat y1 = receiver_a(d, cfg.n1(), law, rng) * d.x_map;
                         const cmat ymax =
                             fresh_receiver(cfg.n_max(), d.slots, d.width, law, rng) * d.x_map;
                         const cmat ya = select_antenna_rows(y1, d.slots, cfg.n1(), 1, nA);
                         const cmat yb =
                             select_antenna_rows(ymax, d.slots, cfg.n_max(), nC + 1, cfg.n_max());
                         const cmat yc = select_antenna_rows(ymax, d.slots, cfg.n_max(), 1, nC);
                         const cmat ybc = vstack(yb, yc);
                         const double lhs =
                             static_cast<double>(conditional_rank(ya, ybc)) / nA;
                         const double rhs =
                             static_cast<double>(conditional_rank(yb, yc)) / nB;
                         return std::pair{lhs, rhs};
                     });
}

} // namespace sdofsim
