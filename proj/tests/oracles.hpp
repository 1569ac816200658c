// Test-side oracles, written directly from the payoff table and the model
// definitions, independent of the library code paths they cross-check.
#pragma once

#include <cmath>
#include <cstdint>

#include "rat/economics.hpp"
#include "rat/rng.hpp"

namespace oracle {

// Closed-form expectation of the realized per-epoch payoff of one
// validator that is online with probability own_q while the others are
// online with probability pi_bar, enumerated over the payoff-table rows:
//   online:  f_v - c_m, plus the expected reward share when fraud occurs;
//   offline: the fee whenever fraud does not finalize, minus the expected
//            timeout penalty (pi_a / N) * c_off whenever tests can reach
//            this epoch, minus C_fail when fraud slips past everyone.
inline double table_validator_utility(const rat::EconomicParams& p,
                                      double own_q, double pi_p,
                                      double pi_bar, rat::ProposerModel model) {
    const double n = double(p.validator_count);
    const double tau = p.test_probability / n * p.test_penalty;
    const double beta = std::pow(1.0 - pi_bar, n - 1.0);
    const double share =
        p.fraud_reward_pool / (1.0 + (n - 1.0) * pi_bar);

    const double online = p.validator_fee - p.online_cost + (1.0 - pi_p) * share;

    double offline;
    if (model == rat::ProposerModel::Evasion) {
        offline = pi_p * (p.validator_fee - tau) +
                  (1.0 - pi_p) * ((1.0 - beta) * p.validator_fee +
                                  beta * (-p.failure_penalty));
    } else {
        offline = pi_p * (p.validator_fee - tau) +
                  (1.0 - pi_p) * ((1.0 - beta) * (p.validator_fee - tau) +
                                  beta * (-p.failure_penalty - tau));
    }
    return own_q * online + (1.0 - own_q) * offline;
}

// Proposer expectation: the fee when honest; when fraudulent, slashed
// unless every one of the N validators happens to be offline.
inline double table_proposer_utility(const rat::EconomicParams& p, double pi_p,
                                     double pi_v) {
    const double all_offline = std::pow(1.0 - pi_v, double(p.validator_count));
    const double fraud = (1.0 - all_offline) * (-p.fraud_penalty) +
                         all_offline * (p.proposer_fee + p.fraud_profit);
    return pi_p * p.proposer_fee + (1.0 - pi_p) * fraud;
}

// Upper 0.001 quantile of the chi-square distribution with 9 degrees of
// freedom; a statistic below this passes at p > 0.001.
inline constexpr double kChiSquareCrit9Dof001 = 27.877164871256937;

template <typename Counts>
double chi_square_uniform(const Counts& counts, double total) {
    const double expected = total / double(counts.size());
    double stat = 0.0;
    for (auto c : counts) {
        const double d = double(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

// Random economic parameters with modest magnitudes (monetary values in
// [0,1]) so exact-arithmetic tolerances in the properties are meaningful.
inline rat::EconomicParams random_params(rat::SplitMix64& rng) {
    rat::EconomicParams p;
    p.validator_fee = rng.uniform();
    p.online_cost = rng.uniform();
    p.fraud_reward_pool = rng.uniform();
    p.deposit = rng.uniform() + 0.5;
    p.test_penalty = rng.uniform() * p.deposit;
    p.failure_penalty = rng.uniform();
    p.proposer_fee = rng.uniform();
    p.fraud_penalty = rng.uniform();
    p.fraud_profit = rng.uniform();
    p.validator_count = 1 + int(rng.next() % 20);
    p.test_probability = rng.uniform();
    return p;
}

inline rat::StrategyProfile random_profile(rat::SplitMix64& rng) {
    return {rng.uniform(), rng.uniform()};
}

}  // namespace oracle
