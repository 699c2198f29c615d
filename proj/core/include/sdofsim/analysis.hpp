// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include "sdofsim/encoder.hpp"

namespace sdofsim {

// Pinned analysis defaults. Rank threshold is relative to the largest
// singular value; the slope pair spans two decades of transmit power.
inline constexpr double kRankRelTol = 1e-9;
inline constexpr double kSlopeP0 = 1e6;
inline constexpr double kSlopeP1 = 1e8;
inline constexpr double kSlopeTol = 0.05;

// Number of singular values above rel_tol * sigma_max. Empty matrices have
// rank 0. Throws numerical_error on non-finite input.
int numeric_rank(const cmat &a, double rel_tol = kRankRelTol);

// Finite-power DoF surrogate: slope of log det(I + p A A^H) against log p
// between p0 and p1. Converges to rank(A) as both powers grow.
double logdet_dof_slope(const cmat &a, double p0 = kSlopeP0, double p1 = kSlopeP1);

// Leakage DoF of the information symbols at receiver j over the whole block:
// slope of log det(I + G K_x G^H) - log det(I + G K_{x|v} G^H) against
// log p, where K_x = scale^2 (p/width) P P^H and K_{x|v} keeps only the
// noise columns of P.
double leakage_dof(const AntennaConfig &cfg, const SchemeEncoding &enc,
                   const ChannelRealization &real, int j, double p0 = kSlopeP0,
                   double p1 = kSlopeP1);

// Same quantity from an explicitly stacked receive matrix of shape
// (b * antennas) x (b * width). A matrix with zero rows leaks exactly 0.
double leakage_dof(const SchemeEncoding &enc, const cmat &g_stacked, double p0 = kSlopeP0,
                   double p1 = kSlopeP1);

// Noise-only vs full rank at receiver j:
//   rank_noise = rank(G_j^b P_noise), rank_full = rank(G_j^b P).
// Almost surely rank_full == rank_noise at every eavesdropper while the
// legitimate receiver gains exactly info_dims decodable dimensions.
struct SecrecyRankReport {
    int rank_noise = 0;
    int rank_full = 0;
    int decodable_dims = 0; // rank_full - rank_noise
};

SecrecyRankReport secrecy_rank_check(const AntennaConfig &cfg, const SchemeEncoding &enc,
                                     const ChannelRealization &real, int j,
                                     double rel_tol = kRankRelTol);

// Two-phase decoder at the legitimate receiver. y1 stacks its b slot
// observations. Per phase-2 slot t: rebuild the retransmitted noise
// equations from the receiver's own phase-1 samples (antenna t - n_bar
// across phase-1 slots), cancel them, and solve the leading n1 x n1
// subsystem for that slot's information symbols. Throws
// degenerate_draw_error when a subsystem is numerically singular.
cvec decode_legitimate(const AntennaConfig &cfg, const cvec &y1, const ChannelRealization &real,
                       double rel_tol = kRankRelTol);

// Single-slot decoder for the artificial-noise scheme (m <= n1):
// least-squares solve of y1 = G_1 x, information entries returned.
cvec decode_case_a(const AntennaConfig &cfg, const cvec &y1, const ChannelRealization &real,
                   double rel_tol = kRankRelTol);

} // namespace sdofsim
