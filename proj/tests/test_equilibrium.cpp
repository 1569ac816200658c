#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rat/equilibrium.hpp"

using namespace rat;

namespace {

// Strict full-attention margin: (pi_a / N) * c_off = 0.5 > c_m = 0.1.
EconomicParams ideal_params() {
    EconomicParams p;
    p.validator_fee = 1.0;
    p.online_cost = 0.1;
    p.fraud_reward_pool = 100.0;
    p.test_penalty = 500.0;
    p.failure_penalty = 1000.0;
    p.proposer_fee = 1.0;
    p.fraud_penalty = 100.0;
    p.fraud_profit = 50.0;
    p.validator_count = 10;
    p.test_probability = 0.01;
    p.deposit = 500.0;
    return p;
}

}  // namespace

TEST_CASE("ideal security condition check") {
    SUBCASE("paper-scale deployment satisfies it") {
        EconomicParams p;
        p.online_cost = 0.139;
        p.test_probability = 0.0028;
        p.test_penalty = 498.0;
        p.deposit = 498.0;
        p.validator_count = 10;
        const ConditionCheck check = check_ideal_security(p);
        CHECK(check.lhs == 0.139);
        CHECK(check.rhs == doctest::Approx(0.139440).epsilon(1e-12));
        CHECK(check.satisfied);
        CHECK(check.margin == doctest::Approx(0.00044).epsilon(1e-9));
        CHECK(check.proposer_condition_satisfied);
    }
    SUBCASE("zero cost is always satisfied") {
        EconomicParams p = ideal_params();
        p.online_cost = 0.0;
        CHECK(check_ideal_security(p).satisfied);
    }
    SUBCASE("no tests, positive cost: not satisfied") {
        EconomicParams p = ideal_params();
        p.online_cost = 1.0;
        p.test_probability = 0.0;
        p.test_penalty = 1000.0;
        p.deposit = 1000.0;
        const ConditionCheck check = check_ideal_security(p);
        CHECK(!check.satisfied);
        CHECK(check.margin == doctest::Approx(-1.0));
    }
}

TEST_CASE("condition check is identical under both adversary models") {
    SplitMix64 rng(0xc0401);
    for (int i = 0; i < 1000; ++i) {
        const EconomicParams p = oracle::random_params(rng);
        const ConditionCheck a = check_ideal_security(p, ProposerModel::Baseline);
        const ConditionCheck b = check_ideal_security(p, ProposerModel::Evasion);
        REQUIRE(a.lhs == b.lhs);
        REQUIRE(a.rhs == b.rhs);
        REQUIRE(a.margin == b.margin);
        REQUIRE(a.satisfied == b.satisfied);
        REQUIRE(a.proposer_condition_satisfied == b.proposer_condition_satisfied);
    }
}

TEST_CASE("validator utility slope") {
    EconomicParams p = ideal_params();

    SUBCASE("honest proposer: slope is the test deterrent minus the cost") {
        const double expected =
            p.test_probability / p.validator_count * p.test_penalty -
            p.online_cost;
        for (ProposerModel model :
             {ProposerModel::Baseline, ProposerModel::Evasion}) {
            CHECK(std::abs(validator_utility_slope(p, 1.0, 0.3, model) -
                           expected) <= 1e-12);
            CHECK(std::abs(validator_utility_slope(p, 1.0, 1.0, model) -
                           expected) <= 1e-12);
        }
    }
    SUBCASE("certain fraud, nobody else online") {
        p.validator_fee = 0.0;
        const double expected =
            -p.online_cost + p.fraud_reward_pool +
            p.test_probability / p.validator_count * p.test_penalty +
            p.failure_penalty;
        CHECK(validator_utility_slope(p, 0.0, 0.0, ProposerModel::Baseline) ==
              doctest::Approx(expected).epsilon(1e-13));
    }
    SUBCASE("exact indifference") {
        p.online_cost =
            p.test_probability / p.validator_count * p.test_penalty;
        CHECK(validator_utility_slope(p, 1.0, 0.5, ProposerModel::Baseline) ==
              doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    }
}

TEST_CASE("proposer utility slope") {
    EconomicParams p = ideal_params();
    CHECK(proposer_utility_slope(p, 1.0) ==
          doctest::Approx(p.proposer_fee + p.fraud_penalty).epsilon(1e-14));
    CHECK(proposer_utility_slope(p, 0.0) ==
          doctest::Approx(-p.fraud_profit).epsilon(1e-14));

    p.fraud_penalty = 0.0;
    p.proposer_fee = 0.0;
    CHECK(proposer_utility_slope(p, 1.0) == 0.0);
}

TEST_CASE("slopes match central finite differences") {
    SplitMix64 rng(0x51093);
    const double h = 1e-6;
    for (int i = 0; i < 1000; ++i) {
        const EconomicParams p = oracle::random_params(rng);
        const double pi_p = rng.uniform();
        const double pi_bar = rng.uniform();
        const double q = h + (1.0 - 2.0 * h) * rng.uniform();
        const ProposerModel model =
            rng.next() & 1 ? ProposerModel::Evasion : ProposerModel::Baseline;

        const double slope_v = validator_utility_slope(p, pi_p, pi_bar, model);
        const double fd_v =
            (expected_validator_utility(p, q + h, pi_p, pi_bar, model) -
             expected_validator_utility(p, q - h, pi_p, pi_bar, model)) /
            (2.0 * h);
        REQUIRE(std::abs(slope_v - fd_v) <= 1e-9);

        const double pi_v = rng.uniform();
        const double pp = h + (1.0 - 2.0 * h) * rng.uniform();
        const double slope_p = proposer_utility_slope(p, pi_v);
        const double fd_p = (expected_proposer_utility(p, pp + h, pi_v) -
                             expected_proposer_utility(p, pp - h, pi_v)) /
                            (2.0 * h);
        REQUIRE(std::abs(slope_p - fd_p) <= 1e-9);
    }
}

TEST_CASE("verify equilibrium at the corners") {
    const EconomicParams p = ideal_params();

    SUBCASE("full attention accepted under a strict margin") {
        const auto point =
            verify_equilibrium(p, {1.0, 1.0}, ProposerModel::Baseline);
        REQUIRE(point.has_value());
        CHECK(point->kind == EquilibriumKind::PureIdeal);
        CHECK(point->validator_deviation_gain <= kEquilibriumTolerance);
        CHECK(point->proposer_deviation_gain <= kEquilibriumTolerance);
    }
    SUBCASE("violated condition: validator walks away") {
        EconomicParams bad = p;
        bad.online_cost = 0.6;
        const auto point =
            verify_equilibrium(bad, {1.0, 1.0}, ProposerModel::Baseline);
        CHECK(!point.has_value());
        const DeviationGains gains =
            deviation_gains(bad, {1.0, 1.0}, ProposerModel::Baseline);
        CHECK(std::abs(gains.validator - 0.1) <= 1e-12);
    }
    SUBCASE("sleeping validators invite fraud") {
        const auto point =
            verify_equilibrium(p, {1.0, 0.0}, ProposerModel::Baseline);
        CHECK(!point.has_value());
        const DeviationGains gains =
            deviation_gains(p, {1.0, 0.0}, ProposerModel::Baseline);
        CHECK(gains.proposer == doctest::Approx(p.fraud_profit));
    }
}

TEST_CASE("find symmetric equilibria") {
    SUBCASE("strict margin yields the full-attention point") {
        const EconomicParams p = ideal_params();
        for (ProposerModel model :
             {ProposerModel::Baseline, ProposerModel::Evasion}) {
            const auto points = find_symmetric_equilibria(p, model, 41);
            bool has_ideal = false;
            for (const auto& point : points) {
                if (point.kind == EquilibriumKind::PureIdeal) has_ideal = true;
                // No equilibrium keeps all validators online without an
                // honest proposer.
                if (point.profile.validator_online_prob == 1.0) {
                    REQUIRE(point.profile.proposer_honest_prob == 1.0);
                }
            }
            REQUIRE(has_ideal);
        }
    }
    SUBCASE("toothless protocol collapses to the failure point") {
        EconomicParams p;
        p.validator_fee = 0.0;
        p.online_cost = 0.2;
        p.fraud_reward_pool = 0.0;
        p.test_penalty = 0.0;
        p.failure_penalty = 0.0;
        p.proposer_fee = 1.0;
        p.fraud_penalty = 0.0;
        p.fraud_profit = 5.0;
        p.validator_count = 10;
        p.test_probability = 0.0;
        p.deposit = 100.0;
        const auto points =
            find_symmetric_equilibria(p, ProposerModel::Baseline, 41);
        bool has_failure = false;
        for (const auto& point : points) {
            if (point.profile.proposer_honest_prob == 0.0 &&
                point.profile.validator_online_prob == 0.0) {
                has_failure = true;
                CHECK(point.kind == EquilibriumKind::PureOther);
            }
            REQUIRE(point.profile.validator_online_prob == 0.0);
        }
        REQUIRE(has_failure);
    }
    SUBCASE("interior equilibrium from the two indifference conditions") {
        EconomicParams p;
        p.validator_fee = 0.0;
        p.online_cost = 0.5;
        p.fraud_reward_pool = 1.0;
        p.test_penalty = 1.0;
        p.failure_penalty = 0.2;
        p.proposer_fee = 1.0;
        p.fraud_penalty = 10.0;
        p.fraud_profit = 5.0;
        p.validator_count = 2;
        p.test_probability = 0.1;
        p.deposit = 1.0;

        const auto pi_v_star = solve_proposer_indifference(p);
        REQUIRE(pi_v_star.has_value());
        CHECK(std::abs(proposer_utility_slope(p, *pi_v_star)) <= 1e-9);
        CHECK(*pi_v_star == doctest::Approx(0.17084380241115005).epsilon(1e-9));

        const auto points =
            find_symmetric_equilibria(p, ProposerModel::Baseline, 41);
        bool has_mixed = false;
        for (const auto& point : points) {
            if (point.kind == EquilibriumKind::Mixed) {
                has_mixed = true;
                CHECK(point.profile.validator_online_prob ==
                      doctest::Approx(*pi_v_star).epsilon(1e-8));
                CHECK(point.profile.proposer_honest_prob ==
                      doctest::Approx(0.5587872501985245).epsilon(1e-6));
            }
        }
        REQUIRE(has_mixed);
    }
}

TEST_CASE("every reported equilibrium passes verification") {
    SplitMix64 rng(0x715a);
    int found = 0;
    for (int i = 0; i < 60; ++i) {
        const EconomicParams p = oracle::random_params(rng);
        const ProposerModel model =
            rng.next() & 1 ? ProposerModel::Evasion : ProposerModel::Baseline;
        for (const auto& point : find_symmetric_equilibria(p, model, 21)) {
            ++found;
            REQUIRE(verify_equilibrium(p, point.profile, model, 21).has_value());
        }
    }
    CHECK(found > 0);
}
