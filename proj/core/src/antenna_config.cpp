// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/antenna_config.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace sdofsim {

void AntennaConfig::validate() const {
    if (m < 1 || m > kMaxAntennas)
        throw std::invalid_argument("transmit antenna count must be in [1, " +
                                    std::to_string(kMaxAntennas) + "], got " + std::to_string(m));
    if (n.size() < 2)
        throw std::invalid_argument("need the legitimate receiver plus at least one eavesdropper");
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] < 1 || n[i] > kMaxAntennas)
            throw std::invalid_argument("receiver " + std::to_string(i + 1) +
                                        " antenna count must be in [1, " +
                                        std::to_string(kMaxAntennas) + "], got " +
                                        std::to_string(n[i]));
    }
}

int AntennaConfig::n_of(int j) const {
    if (j < 1 || j > receivers())
        throw std::invalid_argument("receiver index " + std::to_string(j) + " outside [1, " +
                                    std::to_string(receivers()) + "]");
    return n[static_cast<std::size_t>(j - 1)];
}

int AntennaConfig::n_max() const {
    return n[static_cast<std::size_t>(n_max_index() - 1)];
}

int AntennaConfig::n_max_index() const {
    // 1-based index of the strongest eavesdropper; ties resolve to the
    // smallest index so downstream choices are deterministic.
    int best = 2;
    for (int j = 3; j <= receivers(); ++j) {
        if (n[static_cast<std::size_t>(j - 1)] > n[static_cast<std::size_t>(best - 1)])
            best = j;
    }
    return best;
}

std::string AntennaConfig::describe() const {
    std::ostringstream os;
    os << "m=" << m << " n1=" << n1() << " eves=[";
    for (int j = 2; j <= receivers(); ++j) {
        if (j > 2)
            os << ",";
        os << n[static_cast<std::size_t>(j - 1)];
    }
    os << "]";
    return os.str();
}

std::vector<AntennaConfig> sweep_configs(int max_m, int max_n1, int max_nmax) {
    if (max_m < 1 || max_n1 < 1 || max_nmax < 1)
        throw std::invalid_argument("sweep bounds must be positive");
    std::vector<AntennaConfig> out;
    out.reserve(static_cast<std::size_t>(max_m) * static_cast<std::size_t>(max_n1) *
                static_cast<std::size_t>(max_nmax));
    for (int m = 1; m <= max_m; ++m)
        for (int n1 = 1; n1 <= max_n1; ++n1)
            for (int ne = 1; ne <= max_nmax; ++ne)
                out.emplace_back(m, std::vector<int>{n1, ne});
    return out;
}

} // namespace sdofsim
