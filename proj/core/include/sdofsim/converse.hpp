// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdofsim/channel.hpp"

namespace sdofsim {

// One drawn linear transmission strategy: x = X s for a symbol vector s,
// over `slots` slots on `width` transmit antennas. X may depend causally on
// the channel of one designated receiver (the CSIT supplier, held in
// `supplier`); every other receiver's channel stays independent of X.
struct StrategyDraw {
    cmat x_map; // (slots * width) x symbols
    int slots = 1;
    int width = 1;
    std::vector<cmat> supplier; // per-slot supplier channel, may be empty
};

class LinearStrategy {
  public:
    // X i.i.d. CN(0,1), independent of every channel.
    static LinearStrategy channel_independent(int width, int slots, int symbols);

    // X = two-phase block precoder built from fresh supplier (Rx1) channels;
    // slots = block length of the scheme.
    static LinearStrategy two_phase(const AntennaConfig &cfg);

    // Fixed matrix, independent of every channel.
    static LinearStrategy custom(cmat x_map, int slots, int width);

    StrategyDraw draw(const ChannelLaw &law, RngStream &rng) const;

    int width() const { return width_; }
    int slots() const { return slots_; }
    int supplier_antennas() const; // 0 when no receiver supplies CSIT
    const std::string &name() const { return name_; }

  private:
    LinearStrategy() = default;

    enum class Kind { independent, two_phase, custom } kind_ = Kind::independent;
    int width_ = 1;
    int slots_ = 1;
    int symbols_ = 1;
    AntennaConfig cfg_;
    cmat fixed_;
    std::string name_;
};

// Outcome of a Monte Carlo rank-inequality check. These checks are linear
// rank surrogates of entropy inequalities: they certify the signal-dimension
// counting behind a converse argument, not the converse itself. Every report
// carries that statement in `note`.
struct ConverseCheckReport {
    std::string check;
    int trials = 0;
    int holds = 0;
    int violations = 0;
    int degenerate = 0;
    double lhs_mean = 0.0; // trial-averaged left side
    double rhs_mean = 0.0; // trial-averaged right side
    bool passed = false;   // per-draw holds ratio >= 0.99 and mean inequality
    std::vector<std::uint64_t> failing_streams;
    std::string note;
};

inline constexpr double kConverseTol = 1e-9;
inline constexpr double kConversePassRatio = 0.99;

// rank([ya; yc]) - rank(yc); yc may have zero rows.
int conditional_rank(const cmat &ya, const cmat &yc, double rel_tol = 1e-9);

// Least-alignment check: two receivers with n0 antennas each, receiver B
// channel-independent of X. Per draw: rank(G_A X) <= rank(G_B X). When the
// strategy has a CSIT supplier it plays receiver A (n0 must match).
ConverseCheckReport check_least_alignment(int n0, const LinearStrategy &strategy,
                                          const ChannelLaw &law, int trials,
                                          std::uint64_t master_seed, double tol = kConverseTol);

// Delayed-CSIT rank-ratio check: receiver B blind to X (nB antennas),
// receiver A may supply CSIT (nA antennas). Average form:
//   E rank(Y_B)/min(w, nB) >= E rank([Y_A; Y_B])/min(w, nA+nB) - tol,
// with per-draw counting against the same inequality.
ConverseCheckReport check_eri_delayed(int nA, int nB, const LinearStrategy &strategy,
                                      const ChannelLaw &law, int trials,
                                      std::uint64_t master_seed, double tol = kConverseTol);

// No-CSIT rank-ratio check, nA >= nB, X independent of both receivers (and
// of the conditioning receiver C). Per draw:
//   rank(Y_A | Y_C)/min(w, nA) <= rank(Y_B | Y_C)/min(w, nB) + tol.
// nC = 0 gives the unconditional form.
ConverseCheckReport check_eri_nocsit(int nA, int nB, int nC, const LinearStrategy &strategy,
                                     const ChannelLaw &law, int trials,
                                     std::uint64_t master_seed, double tol = kConverseTol);

// Joint-receiver check: w >= nA + nB + nC, receivers B and C blind to X.
// Per draw: rank(Y_A | Y_B, Y_C)/nA <= rank(Y_B | Y_C)/nB + tol. Receiver A
// is the CSIT supplier when the strategy has one.
ConverseCheckReport check_joint_claim(int nA, int nB, int nC, const LinearStrategy &strategy,
                                      const ChannelLaw &law, int trials,
                                      std::uint64_t master_seed, double tol = kConverseTol);

// Proposition 1 (documented in README): for m > max(n1, n_max), per draw
//   rank(Y_1) <= (n1/n_bar) rank(Y_max,1) + tol,
// where Y_max,1 keeps the first n_bar eavesdropper antennas. Receiver 1 is
// the CSIT supplier when the strategy has one.
ConverseCheckReport check_proposition1(const AntennaConfig &cfg, const LinearStrategy &strategy,
                                       const ChannelLaw &law, int trials,
                                       std::uint64_t master_seed, double tol = kConverseTol);

// Proposition 2 (documented in README): for n1 < n_max < m, the joint check
// instantiated with Y_A = first m_bar - n_max antennas of Rx1, Y_B = last
// n_max - n_bar eavesdropper antennas, Y_C = first n_bar eavesdropper
// antennas.
ConverseCheckReport check_proposition2(const AntennaConfig &cfg, const LinearStrategy &strategy,
                                       const ChannelLaw &law, int trials,
                                       std::uint64_t master_seed, double tol = kConverseTol);

} // namespace sdofsim
