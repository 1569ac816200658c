#include "rat/economics.hpp"

#include <cmath>
#include <stdexcept>

namespace rat {

namespace {

bool outcome_is_consistent(const EpochOutcome& o) {
    switch (o.test_result) {
        case TestResult::NotTested:
            return true;
        case TestResult::Pass:
            return o.this_validator_online;
        case TestResult::Timeout:
            return !o.this_validator_online;
        case TestResult::StateMismatch:
            return o.this_validator_online &&
                   o.proposer_action == ProposerAction::Fraud;
    }
    return false;
}

}  // namespace

std::vector<std::string> EconomicParams::validate() const {
    std::vector<std::string> problems;
    const auto require_nonneg = [&](double v, const char* name) {
        if (!(v >= 0.0)) {
            problems.push_back(std::string(name) + " must be >= 0");
        }
    };
    require_nonneg(validator_fee, "f_v");
    require_nonneg(online_cost, "c_m");
    require_nonneg(fraud_reward_pool, "r_v");
    require_nonneg(test_penalty, "c_off");
    require_nonneg(failure_penalty, "c_fail");
    require_nonneg(proposer_fee, "f_p");
    require_nonneg(fraud_penalty, "c_fraud");
    require_nonneg(fraud_profit, "r_fraud");
    require_nonneg(deposit, "d_v");
    if (validator_count < 1) {
        problems.push_back("n must be an integer >= 1");
    }
    if (!(test_probability >= 0.0 && test_probability <= 1.0)) {
        problems.push_back("pi_a must lie in [0,1]");
    }
    if (test_penalty > deposit) {
        problems.push_back("c_off must not exceed d_v");
    }
    return problems;
}

double expected_reward_share(double pool, int validator_count,
                             double others_online_prob) {
    // Denominator is at least 1, so this is total for any valid input.
    return pool / (1.0 + double(validator_count - 1) * others_online_prob);
}

double validator_online_utility(const EconomicParams& params,
                                double proposer_honest_prob,
                                double others_online_prob) {
    const double share = expected_reward_share(
        params.fraud_reward_pool, params.validator_count, others_online_prob);
    return params.validator_fee - params.online_cost +
           (1.0 - proposer_honest_prob) * share;
}

double validator_offline_utility(const EconomicParams& params,
                                 double proposer_honest_prob,
                                 double others_online_prob,
                                 ProposerModel model) {
    const double test_loss = (params.test_probability /
                              double(params.validator_count)) *
                             params.test_penalty;
    const double undetected = std::pow(1.0 - others_online_prob,
                                       double(params.validator_count - 1));
    const double failure_loss =
        (1.0 - proposer_honest_prob) * undetected * params.failure_penalty;
    if (model == ProposerModel::Evasion) {
        // Fraudulent epochs never test, so the penalty risk scales with pi_p.
        return proposer_honest_prob * (params.validator_fee - test_loss) -
               failure_loss;
    }
    return proposer_honest_prob * params.validator_fee - test_loss -
           failure_loss;
}

double expected_validator_utility(const EconomicParams& params,
                                  double own_online_prob,
                                  double proposer_honest_prob,
                                  double others_online_prob,
                                  ProposerModel model) {
    const double on = validator_online_utility(params, proposer_honest_prob,
                                               others_online_prob);
    const double off = validator_offline_utility(params, proposer_honest_prob,
                                                 others_online_prob, model);
    if (own_online_prob == 0.0) return off;
    if (own_online_prob == 1.0) return on;
    // Extended-precision mixture keeps finite-difference slopes of this
    // affine function accurate to well below 1e-9.
    const long double q = own_online_prob;
    return double(q * (long double)on + (1.0L - q) * (long double)off);
}

double proposer_honest_utility(const EconomicParams& params) {
    return params.proposer_fee;
}

double proposer_fraud_utility(const EconomicParams& params,
                              double validator_online_prob) {
    const double all_offline = std::pow(1.0 - validator_online_prob,
                                        double(params.validator_count));
    return (1.0 - all_offline) * (-params.fraud_penalty) +
           all_offline * (params.proposer_fee + params.fraud_profit);
}

double expected_proposer_utility(const EconomicParams& params,
                                 double proposer_honest_prob,
                                 double validator_online_prob) {
    const double honest = proposer_honest_utility(params);
    const double fraud = proposer_fraud_utility(params, validator_online_prob);
    if (proposer_honest_prob == 0.0) return fraud;
    if (proposer_honest_prob == 1.0) return honest;
    const long double p = proposer_honest_prob;
    return double(p * (long double)honest + (1.0L - p) * (long double)fraud);
}

PayoffPair payoff_lookup(const EpochOutcome& outcome,
                         const EconomicParams& params, double realized_cost,
                         double realized_reward, ProposerModel model) {
    if (!outcome_is_consistent(outcome)) {
        throw std::invalid_argument("epoch outcome violates its invariants");
    }
    if (model == ProposerModel::Evasion &&
        outcome.proposer_action == ProposerAction::Fraud &&
        outcome.test_result != TestResult::NotTested) {
        throw std::invalid_argument(
            "evasion model admits no attention test in a fraud epoch");
    }

    const double timeout_slash =
        outcome.test_result == TestResult::Timeout ? params.test_penalty : 0.0;

    PayoffPair pay;
    if (outcome.proposer_action == ProposerAction::Honest) {
        pay.proposer = params.proposer_fee;
        pay.validator = params.validator_fee - realized_cost - timeout_slash;
        return pay;
    }

    const bool detected =
        outcome.this_validator_online || outcome.any_other_validator_online;
    if (detected) {
        pay.proposer = -params.fraud_penalty;
        if (outcome.this_validator_online) {
            // Pass / StateMismatch / untested all settle the same way: the
            // dispute oracle rules for the honest side and the detector is
            // paid its reward.
            pay.validator =
                params.validator_fee - realized_cost + realized_reward;
        } else {
            pay.validator =
                params.validator_fee - realized_cost - timeout_slash;
        }
    } else {
        // Nobody online: the fraud finalizes.
        pay.proposer = params.proposer_fee + params.fraud_profit;
        pay.validator = -params.failure_penalty - timeout_slash;
    }
    return pay;
}

const char* to_string(ProposerModel model) {
    return model == ProposerModel::Baseline ? "baseline" : "evasion";
}

const char* to_string(RewardSplit split) {
    return split == RewardSplit::ExpectedShare ? "expected" : "equal";
}

const char* to_string(ProposerAction action) {
    return action == ProposerAction::Honest ? "honest" : "fraud";
}

const char* to_string(TestResult result) {
    switch (result) {
        case TestResult::NotTested:
            return "none";
        case TestResult::Pass:
            return "pass";
        case TestResult::Timeout:
            return "timeout";
        case TestResult::StateMismatch:
            return "state_mismatch";
    }
    return "unknown";
}

}  // namespace rat
