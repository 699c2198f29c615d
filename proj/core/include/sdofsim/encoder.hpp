// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include "sdofsim/channel.hpp"

namespace sdofsim {

// Block encoding over b slots on `width` active transmit antennas:
//
//   x = scale * P * [u; v],  u, v i.i.d. CN(0, p/width)
//
// with the noise symbols u in the leading noise_dims columns of P and the
// information symbols v in the rest. Antennas width+1..m transmit zero.
// scale normalizes the conditional per-slot average power to exactly p; it
// depends only on channels the transmitter has already seen.
struct SchemeEncoding {
    int b = 1;     // slots per block
    int width = 0; // active transmit antennas
    int m = 0;     // physical transmit antennas
    cmat precoder; // (b*width) x (noise_dims + info_dims)
    int noise_dims = 0;
    double power = 0.0;
    double scale = 1.0;
    cvec u; // drawn noise symbols, scale applied
    cvec v; // drawn information symbols, scale applied
    cvec x; // b*m stacked transmit block

    int info_dims() const { return static_cast<int>(precoder.cols()) - noise_dims; }
    cmat noise_columns() const { return precoder.leftCols(noise_dims); }
};

// Single-slot artificial-noise scheme, valid for n_max < m <= n1: noise u on
// antennas 1..n_max, information v on antennas n_max+1..m, identity precoder,
// so K_x = (p/m) I and K_{x|v} = (p/m) blockdiag(I_{n_max}, 0).
SchemeEncoding encode_case_a(const AntennaConfig &cfg, double p, RngStream &rng);

// Shape plan for the two-phase scheme (m > max(n1, n_max)): nb slots of
// fresh noise, then mb - n_max slots that retransmit overheard noise
// equations on top of information symbols.
struct TwoPhasePlan {
    int m_bar = 0;
    int n_bar = 0;
    int b = 0;      // n_bar + phase2
    int phase2 = 0; // m_bar - n_max
    int u_len = 0;  // n_bar * m_bar
    int v_len = 0;  // n1 * (m_bar - n_max)

    // Throws not_applicable_error unless m > max(n1, n_max).
    static TwoPhasePlan for_config(const AntennaConfig &cfg);
};

// Noise-equation selector A, shape (phase2 * m_bar) x (n_bar * m_bar).
// Within the slot-t block (t = n_bar+1 .. b), row i = 1..n_bar carries the
// channel row of Rx1 antenna t-n_bar at phase-1 time i, placed in block
// column i; rows n_bar+1..m_bar are zero. Hence A u reproduces, entry for
// entry, the noiseless phase-1 observations of Rx1's first m_bar - n_max
// antennas. Uses only realization blocks (j=1, t <= n_bar).
cmat build_noise_selector(const AntennaConfig &cfg, const ChannelRealization &real);

// Same selector built from raw Rx1 phase-1 blocks: g1_phase1[t-1] is the
// n1 x m (or wider than m_bar) matrix at phase-1 time t, t = 1..n_bar.
cmat build_noise_selector(const AntennaConfig &cfg, const std::vector<cmat> &g1_phase1);

// Full block precoder
//   P = [ I            0                          ]
//       [ A            I_{phase2} (x) [I_{n1}; 0] ]
// of shape (b * m_bar) x (u_len + v_len).
cmat build_phase2_precoder(const AntennaConfig &cfg, const cmat &noise_selector);

// Two-phase delayed-CSIT scheme. Draws u then v from rng before reading the
// realization, and reads only Rx1's phase-1 blocks afterwards, so the output
// is unchanged by perturbing any other channel matrix (exact equality).
SchemeEncoding encode_two_phase(const AntennaConfig &cfg, double p,
                                const ChannelRealization &real, RngStream &rng);

} // namespace sdofsim
