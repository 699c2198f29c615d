// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include "sdofsim/sdof.hpp"

#include <algorithm>

namespace sdofsim {

Rational compute_sdof(const AntennaConfig &cfg) {
    cfg.validate();
    const std::int64_t m = cfg.m;
    const std::int64_t n1 = cfg.n1();
    const std::int64_t nmax = cfg.n_max();
    if (m <= std::max(n1, nmax))
        return Rational(std::max<std::int64_t>(m - nmax, 0));
    const std::int64_t mb = cfg.m_bar();
    const std::int64_t nb = cfg.n_bar();
    return Rational(n1 * (mb - nmax), mb - nmax + nb);
}

std::optional<Rational> compute_prior_achievable(const AntennaConfig &cfg) {
    cfg.validate();
    const std::int64_t m = cfg.m;
    const std::int64_t n1 = cfg.n1();
    const std::int64_t nmax = cfg.n_max();
    if (!(n1 <= nmax && nmax < m))
        return std::nullopt;
    if (m <= n1 + nmax)
        return Rational(n1 * (m - nmax), m);
    return Rational(n1 * n1, n1 + nmax);
}

Rational compute_reference_sdof(const AntennaConfig &cfg) {
    cfg.validate();
    const std::int64_t m = cfg.m;
    const std::int64_t n1 = cfg.n1();
    const std::int64_t nmax = cfg.n_max();
    if (m <= std::max(n1, nmax))
        return Rational(std::max<std::int64_t>(m - nmax, 0));
    if (m <= n1 + nmax)
        return Rational(n1 * m * (m - nmax), n1 * nmax + m * (m - nmax));
    return Rational(n1 * (n1 + nmax), n1 + 2 * nmax);
}

std::vector<ComparisonRow> comparison_table(const std::vector<AntennaConfig> &configs) {
    std::vector<ComparisonRow> rows;
    rows.reserve(configs.size());
    for (const AntennaConfig &cfg : configs)
        rows.push_back({cfg, compute_sdof(cfg), compute_prior_achievable(cfg),
                        compute_reference_sdof(cfg)});
    return rows;
}

std::vector<AchievabilityExample> achievability_examples() {
    std::vector<AchievabilityExample> out;
    {
        AchievabilityExample e;
        e.regime = "n1 <= nmax < m <= n1+nmax";
        e.example = AntennaConfig(4, {2, 3});
        e.prior = *compute_prior_achievable(e.example);
        e.sdof = compute_sdof(e.example);
        out.push_back(std::move(e));
    }
    {
        AchievabilityExample e;
        e.regime = "n1 < nmax < m <= n1+nmax";
        e.example = AntennaConfig(3, {1, 2});
        e.prior = *compute_prior_achievable(e.example);
        e.sdof = compute_sdof(e.example);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<RegimeFormulaRow> regime_formula_table() {
    std::vector<RegimeFormulaRow> rows;
    {
        RegimeFormulaRow r;
        r.network = "blind eavesdroppers, delayed legitimate CSIT";
        r.formulas = {
            "[m-nmax]+",
            "n1(mb-nmax)/(mb-nmax+nb)",
            "n1(mb-nmax)/(mb-nmax+nb)",
        };
        rows.push_back(std::move(r));
    }
    {
        RegimeFormulaRow r;
        r.network = "all receivers feed back delayed CSIT";
        r.formulas = {
            "[m-nmax]+",
            "n1*m(m-nmax)/(n1*nmax+m(m-nmax))",
            "n1(n1+nmax)/(n1+2nmax)",
        };
        rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace sdofsim
