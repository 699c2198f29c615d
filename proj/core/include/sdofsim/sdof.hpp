// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sdofsim/antenna_config.hpp"
#include "sdofsim/rational.hpp"

namespace sdofsim {

// Secure degrees of freedom when eavesdropper channels are entirely unknown
// to the transmitter and the legitimate receiver feeds back delayed CSIT.
//
// With mb = min(m, n1 + n_max) and nb = min(n1, n_max):
//   m <= max(n1, n_max):  [m - n_max]^+
//   otherwise:            n1 (mb - n_max) / (mb - n_max + nb)
//
// The value depends on the eavesdroppers only through n_max.
Rational compute_sdof(const AntennaConfig &cfg);

// Secure DoF previously achievable in the same blind setting, for the two
// antenna regimes where a static artificial-noise scheme applies:
//   n1 <= n_max <  m <= n1 + n_max:  n1 (m - n_max) / m
//   n1 <= n_max,   m >  n1 + n_max:  n1^2 / (n1 + n_max)
// Returns nullopt outside both regimes.
std::optional<Rational> compute_prior_achievable(const AntennaConfig &cfg);

// Reference value when every eavesdropper also feeds back delayed CSIT:
//   m <= max(n1, n_max):             [m - n_max]^+
//   max(n1, n_max) < m <= n1+n_max:  n1 m (m - n_max) / (n1 n_max + m (m - n_max))
//   m > n1 + n_max:                  n1 (n1 + n_max) / (n1 + 2 n_max)
Rational compute_reference_sdof(const AntennaConfig &cfg);

struct ComparisonRow {
    AntennaConfig config;
    Rational sdof;
    std::optional<Rational> prior;
    Rational reference;
};

std::vector<ComparisonRow> comparison_table(const std::vector<AntennaConfig> &configs);

// Fixed achievability-comparison table: the two regimes where the delayed
// feedback scheme strictly improves on the static artificial-noise scheme,
// each with its canonical example configuration.
struct AchievabilityExample {
    std::string regime; // antenna-configuration class
    AntennaConfig example;
    Rational prior;
    Rational sdof;
};

std::vector<AchievabilityExample> achievability_examples();

// Per-regime closed forms for both feedback models, as ASCII formula strings
// indexed by the three antenna regimes (columns) per network row.
struct RegimeFormulaRow {
    std::string network;
    std::array<std::string, 3> formulas;
};

inline constexpr std::array<const char *, 3> kRegimeHeaders = {
    "m <= max(n1,nmax)",
    "max(n1,nmax) < m <= n1+nmax",
    "m > n1+nmax",
};

std::vector<RegimeFormulaRow> regime_formula_table();

} // namespace sdofsim
