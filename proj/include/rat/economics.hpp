#pragma once

#include <string>
#include <vector>

namespace rat {

/// Adversary model for the attention-test game.
///
/// Baseline: tests trigger with probability pi_a regardless of what the
/// proposer submitted. Evasion: a fraudulent proposer exploits weak
/// randomness so that no test ever triggers on a fraudulent commitment;
/// tests only run in honest epochs.
enum class ProposerModel { Baseline, Evasion };

/// How the fraud-detection reward pool is paid out to the online
/// validators that caught a fraudulent commitment.
///
/// ExpectedShare: each detector is credited the closed-form expected share
/// r_v / (1 + (N-1) * pi_bar_v), so long-run empirical utilities match the
/// analytic equations exactly. EqualRealized: the pool is split evenly
/// among the k validators actually online that epoch; this differs from
/// the expected-share mode by a Jensen gap.
enum class RewardSplit { ExpectedShare, EqualRealized };

/// Monetary and system parameters of one protocol deployment. Currency
/// units are arbitrary but must be consistent; rates are per epoch.
struct EconomicParams {
    double validator_fee = 0.0;      // f_v: validator fee per epoch
    double online_cost = 0.0;        // c_m: marginal cost of an online epoch
    double fraud_reward_pool = 0.0;  // r_v: total reward for a caught fraud
    double test_penalty = 0.0;       // c_off: slash for failing a test
    double failure_penalty = 0.0;    // C_fail: per-validator loss on undetected fraud
    double proposer_fee = 0.0;       // f_p: proposer fee per epoch
    double fraud_penalty = 0.0;      // C_fraud: proposer slash when caught
    double fraud_profit = 0.0;       // R_fraud: proposer gain when fraud finalizes
    int validator_count = 1;         // N: registered validators
    double test_probability = 0.0;   // pi_a: per-epoch system-wide test probability
    double deposit = 0.0;            // D_V: validator stake

    /// Returns a list of violated constraints, empty when the parameters
    /// are usable. Monetary values must be non-negative, N >= 1,
    /// pi_a in [0,1], and the test penalty must not exceed the deposit
    /// (a slash larger than the stake is not credible).
    std::vector<std::string> validate() const;
};

/// Symmetric mixed-strategy profile: the proposer submits an honest
/// commitment with probability pi_p, every validator is online with
/// probability pi_v.
struct StrategyProfile {
    double proposer_honest_prob = 1.0;   // pi_p
    double validator_online_prob = 1.0;  // pi_v
};

enum class ProposerAction { Honest, Fraud };

enum class TestResult { NotTested, Pass, Timeout, StateMismatch };

/// One realized epoch from a single validator's point of view.
struct EpochOutcome {
    ProposerAction proposer_action = ProposerAction::Honest;
    bool this_validator_online = false;
    bool any_other_validator_online = false;
    TestResult test_result = TestResult::NotTested;
};

struct PayoffPair {
    double validator = 0.0;
    double proposer = 0.0;
};

/// Expected individual share of the reward pool for one attentive
/// validator when every other validator is online with probability
/// others_online_prob: pool / (1 + (N-1) * others_online_prob).
double expected_reward_share(double pool, int validator_count,
                             double others_online_prob);

/// Expected per-epoch utility of a validator that is online this epoch:
/// fee - cost, plus the expected reward share when the proposer cheats.
double validator_online_utility(const EconomicParams& params,
                                double proposer_honest_prob,
                                double others_online_prob);

/// Expected per-epoch utility of a validator that stays offline. It pays
/// no operating cost, risks the test penalty (with probability pi_a / N),
/// and eats the failure penalty when a fraud slips past everyone else.
/// Under Evasion the test penalty is only risked in honest epochs.
double validator_offline_utility(const EconomicParams& params,
                                 double proposer_honest_prob,
                                 double others_online_prob,
                                 ProposerModel model);

/// Mixture of the online/offline utilities under the validator's own
/// online probability. own_online_prob is deliberately separate from
/// others_online_prob so unilateral deviations are well-defined; the
/// symmetric value uses own = others.
double expected_validator_utility(const EconomicParams& params,
                                  double own_online_prob,
                                  double proposer_honest_prob,
                                  double others_online_prob,
                                  ProposerModel model);

/// Per-epoch utility of an honest proposer: the fee, nothing else.
double proposer_honest_utility(const EconomicParams& params);

/// Per-epoch utility of a fraudulent proposer against validators online
/// with probability validator_online_prob: slashed if anyone is watching,
/// fee plus illicit profit if nobody is.
double proposer_fraud_utility(const EconomicParams& params,
                              double validator_online_prob);

/// Mixture of honest/fraud proposer utilities at honesty probability
/// proposer_honest_prob.
double expected_proposer_utility(const EconomicParams& params,
                                 double proposer_honest_prob,
                                 double validator_online_prob);

/// Realized payoff cell for one validator-epoch and the matching proposer
/// payoff. realized_cost is the operating cost actually paid this epoch
/// (c_m when online, 0 when offline); realized_reward is the detection
/// reward actually credited to this validator. Throws std::invalid_argument
/// if the outcome violates its structural invariants, or if a tested
/// fraud epoch is presented under the Evasion model (evasion means fraud
/// epochs are never tested).
PayoffPair payoff_lookup(const EpochOutcome& outcome,
                         const EconomicParams& params, double realized_cost,
                         double realized_reward, ProposerModel model);

const char* to_string(ProposerModel model);
const char* to_string(RewardSplit split);
const char* to_string(ProposerAction action);
const char* to_string(TestResult result);

}  // namespace rat
