// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The sdofsim authors

#include <doctest.h>

#include <stdexcept>

#include "sdofsim/analysis.hpp"
#include "sdofsim/converse.hpp"
#include "sdofsim/errors.hpp"

using namespace sdofsim;

namespace {

AntennaConfig cfg1(int m, int n1, int nmax) { return AntennaConfig(m, {n1, nmax}); }

cmat random_cmat(int rows, int cols, RngStream &rng) {
    cmat a(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            a(r, c) = rng.cgaussian();
    return a;
}

void check_accounting(const ConverseCheckReport &rep, int trials) {
    CHECK(rep.trials == trials);
    CHECK(rep.holds + rep.violations == trials);
    CHECK(static_cast<int>(rep.failing_streams.size()) == rep.violations);
    CHECK_FALSE(rep.note.empty());
}

} // namespace

TEST_CASE("conditional rank: additivity and empty conditioning") {
    RngStream rng(5, 0);
    const cmat ya = random_cmat(3, 6, rng);
    const cmat yc = random_cmat(2, 6, rng);
    CHECK(conditional_rank(ya, cmat(0, 6)) == numeric_rank(ya));
    // Generic position: conditioning on 2 fresh rows costs exactly their rank.
    CHECK(conditional_rank(ya, yc) == 3);
    cmat joint(5, 6);
    joint << ya, yc;
    CHECK(conditional_rank(ya, yc) + numeric_rank(yc) == numeric_rank(joint));
    // Conditioning on itself removes everything.
    CHECK(conditional_rank(ya, ya) == 0);
}

TEST_CASE("strategy construction and draw shapes") {
    const LinearStrategy rnd = LinearStrategy::channel_independent(3, 2, 4);
    CHECK(rnd.width() == 3);
    CHECK(rnd.slots() == 2);
    CHECK(rnd.supplier_antennas() == 0);
    CHECK(rnd.name() == "random");
    RngStream rng(9, 0);
    const StrategyDraw d = rnd.draw(ChannelLaw{}, rng);
    CHECK(d.x_map.rows() == 6);
    CHECK(d.x_map.cols() == 4);
    CHECK(d.supplier.empty());

    const LinearStrategy tp = LinearStrategy::two_phase(cfg1(4, 2, 3));
    CHECK(tp.width() == 4);
    CHECK(tp.slots() == 3);
    CHECK(tp.supplier_antennas() == 2);
    RngStream rng2(9, 1);
    const StrategyDraw dt = tp.draw(ChannelLaw{}, rng2);
    CHECK(dt.x_map.rows() == 12);
    CHECK(dt.x_map.cols() == 10);
    REQUIRE(dt.supplier.size() == 3);
    CHECK(dt.supplier[0].rows() == 2);
    CHECK(dt.supplier[0].cols() == 4);

    CHECK_THROWS_AS(LinearStrategy::channel_independent(0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(LinearStrategy::custom(cmat::Zero(5, 2), 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(LinearStrategy::two_phase(cfg1(2, 2, 3)), not_applicable_error);
}

TEST_CASE("least-alignment: blind strategies tie exactly, supplier never exceeds") {
    const int trials = 200;
    const LinearStrategy rnd = LinearStrategy::channel_independent(3, 2, 4);
    const ConverseCheckReport r1 = check_least_alignment(2, rnd, ChannelLaw{}, trials, 7);
    check_accounting(r1, trials);
    CHECK(r1.passed);
    CHECK(r1.violations == 0);
    // Both receivers saturate: rank = min(n0 * slots, symbols) = 4 a.s.
    CHECK(r1.lhs_mean == 4.0);
    CHECK(r1.rhs_mean == 4.0);

    const LinearStrategy tp = LinearStrategy::two_phase(cfg1(4, 2, 3));
    const ConverseCheckReport r2 = check_least_alignment(2, tp, ChannelLaw{}, trials, 7);
    check_accounting(r2, trials);
    CHECK(r2.passed);
    // Supplier-aware receiver still resolves only 6 of the 10 symbol
    // dimensions over its 6 rows, exactly like a blind one.
    CHECK(r2.lhs_mean == 6.0);
    CHECK(r2.rhs_mean == 6.0);

    CHECK_THROWS_AS(check_least_alignment(1, tp, ChannelLaw{}, 10, 7), std::invalid_argument);
    CHECK_THROWS_AS(check_least_alignment(2, rnd, ChannelLaw{}, 0, 7), std::invalid_argument);
}

TEST_CASE("delayed rank ratio: closed-form margin for the two-phase strategy") {
    const LinearStrategy tp = LinearStrategy::two_phase(cfg1(4, 2, 3));
    const int trials = 150;
    const ConverseCheckReport rep = check_eri_delayed(2, 3, tp, ChannelLaw{}, trials, 11);
    check_accounting(rep, trials);
    CHECK(rep.passed);
    CHECK(rep.violations == 0);
    // Joint receiver sees all 10 precoder dimensions (5 antennas per slot
    // make the stacked channel injective on the 4 active inputs); the blind
    // 3-antenna receiver resolves 8. Ratios: 10/4 vs 8/3.
    CHECK(rep.lhs_mean == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(rep.rhs_mean == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("delayed rank ratio: blind strategy ties") {
    const LinearStrategy rnd = LinearStrategy::channel_independent(4, 2, 8);
    const ConverseCheckReport rep = check_eri_delayed(2, 2, rnd, ChannelLaw{}, 100, 13);
    check_accounting(rep, 100);
    CHECK(rep.passed);
    // rank(Y_B) = min(4, 8) = 4, rank([Y_A; Y_B]) = min(8, 8) = 8.
    CHECK(rep.lhs_mean == 2.0);
    CHECK(rep.rhs_mean == 2.0);
}

TEST_CASE("no-CSIT rank ratio: equal antennas tie, conditioning symmetric") {
    const LinearStrategy rnd = LinearStrategy::channel_independent(4, 1, 6);
    const ConverseCheckReport rep = check_eri_nocsit(2, 2, 0, rnd, ChannelLaw{}, 100, 17);
    check_accounting(rep, 100);
    CHECK(rep.passed);
    CHECK(rep.lhs_mean == rep.rhs_mean);

    // Conditioned form on the two-phase strategy: receivers stay fresh, so
    // the ratio inequality persists even though X follows Rx1's channel.
    // The final slot only excites 2 of the 4 transmit antennas, so the
    // 9-row stack [Y_A; Y_C] resolves 8 symbol dimensions, not 9:
    // lhs = (8 - 3)/2, rhs = (6 - 3)/1.
    const LinearStrategy tp = LinearStrategy::two_phase(cfg1(4, 2, 3));
    const ConverseCheckReport r2 = check_eri_nocsit(2, 1, 1, tp, ChannelLaw{}, 100, 17);
    check_accounting(r2, 100);
    CHECK(r2.passed);
    CHECK(r2.lhs_mean == 2.5);
    CHECK(r2.rhs_mean == 3.0);

    CHECK_THROWS_AS(check_eri_nocsit(1, 2, 0, rnd, ChannelLaw{}, 10, 17),
                    std::invalid_argument);
}

TEST_CASE("joint-receiver claim: exact tie on the square independent strategy") {
    const LinearStrategy rnd = LinearStrategy::channel_independent(4, 1, 4);
    const ConverseCheckReport rep = check_joint_claim(2, 1, 1, rnd, ChannelLaw{}, 100, 19);
    check_accounting(rep, 100);
    CHECK(rep.passed);
    CHECK(rep.lhs_mean == 1.0);
    CHECK(rep.rhs_mean == 1.0);

    CHECK_THROWS_AS(check_joint_claim(2, 2, 1, rnd, ChannelLaw{}, 10, 19),
                    std::invalid_argument); // width < nA + nB + nC
}

TEST_CASE("proposition 1 holds with equality for both strategy kinds") {
    const AntennaConfig c = cfg1(4, 2, 3);
    const LinearStrategy tp = LinearStrategy::two_phase(c);
    const ConverseCheckReport r1 = check_proposition1(c, tp, ChannelLaw{}, 100, 23);
    check_accounting(r1, 100);
    CHECK(r1.passed);
    CHECK(r1.lhs_mean == 6.0);
    CHECK(r1.rhs_mean == 6.0);

    const LinearStrategy rnd = LinearStrategy::channel_independent(4, 3, 12);
    const ConverseCheckReport r2 = check_proposition1(c, rnd, ChannelLaw{}, 100, 23);
    check_accounting(r2, 100);
    CHECK(r2.passed);

    const AntennaConfig c2 = cfg1(3, 1, 2);
    const ConverseCheckReport r3 =
        check_proposition1(c2, LinearStrategy::two_phase(c2), ChannelLaw{}, 100, 23);
    CHECK(r3.passed);

    CHECK_THROWS_AS(check_proposition1(cfg1(2, 2, 3), rnd, ChannelLaw{}, 10, 23),
                    not_applicable_error);
}

TEST_CASE("proposition 2 holds with equality on the canonical configuration") {
    const AntennaConfig c = cfg1(4, 2, 3);
    const LinearStrategy tp = LinearStrategy::two_phase(c);
    const ConverseCheckReport rep = check_proposition2(c, tp, ChannelLaw{}, 100, 29);
    check_accounting(rep, 100);
    CHECK(rep.passed);
    CHECK(rep.violations == 0);
    CHECK(rep.lhs_mean == 2.0);
    CHECK(rep.rhs_mean == 2.0);

    // Hypothesis gate: the antenna split needs n1 < n_max.
    CHECK_THROWS_AS(check_proposition2(cfg1(5, 2, 2), tp, ChannelLaw{}, 10, 29),
                    not_applicable_error);
}

TEST_CASE("checks are bit-reproducible across invocations") {
    const LinearStrategy tp = LinearStrategy::two_phase(cfg1(4, 2, 3));
    const ConverseCheckReport a = check_eri_delayed(2, 3, tp, ChannelLaw{}, 50, 31);
    const ConverseCheckReport b = check_eri_delayed(2, 3, tp, ChannelLaw{}, 50, 31);
    CHECK(a.lhs_mean == b.lhs_mean);
    CHECK(a.rhs_mean == b.rhs_mean);
    CHECK(a.holds == b.holds);
    const ConverseCheckReport d = check_eri_delayed(2, 3, tp, ChannelLaw{}, 50, 32);
    CHECK(d.holds == 50); // different master seed, inequality still holds
}
