// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <string>
#include <vector>

namespace sdofsim {

// Antenna counts for one transmitter, one legitimate receiver and k >= 1
// eavesdroppers. Receivers carry 1-based indices throughout the library:
// receiver 1 is legitimate, receivers 2..k+1 are eavesdroppers.
struct AntennaConfig {
    int m = 1;          // transmit antennas
    std::vector<int> n; // n[0] legitimate, n[1..] eavesdroppers

    AntennaConfig() = default;
    AntennaConfig(int m_, std::vector<int> n_) : m(m_), n(std::move(n_)) { validate(); }

    int k() const { return static_cast<int>(n.size()) - 1; }
    int receivers() const { return static_cast<int>(n.size()); }

    int n1() const { return n[0]; }

    // Antennas at receiver j, j in [1, k+1].
    int n_of(int j) const;

    // Largest eavesdropper antenna count.
    int n_max() const;

    // Receiver index attaining n_max; ties break toward the smallest index.
    int n_max_index() const;

    int m_bar() const { return std::min(m, n1() + n_max()); }
    int n_bar() const { return std::min(n1(), n_max()); }

    // Throws std::invalid_argument on non-positive counts, a missing
    // eavesdropper, or sizes past the overflow guard.
    void validate() const;

    std::string describe() const; // "m=4 n1=2 eves=[3]"

    bool operator==(const AntennaConfig &) const = default;
};

// Shape guard: keeps m * n_j * slots products far away from int overflow.
inline constexpr int kMaxAntennas = 4096;

// Single-eavesdropper grid over 1 <= m <= max_m, 1 <= n1 <= max_n1,
// 1 <= n_max <= max_nmax, in lexicographic order.
std::vector<AntennaConfig> sweep_configs(int max_m, int max_n1, int max_nmax);

} // namespace sdofsim
