#include "rat/protocol_engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rat {

namespace {

constexpr char kTriggerTag[] = {'T', 'R', 'I', 'G'};
constexpr char kSelectTag[] = {'S', 'E', 'L'};
constexpr char kBeaconTag[] = {'B', 'E', 'A', 'C', 'O', 'N'};

std::uint64_t read_u64_be(const std::uint8_t* bytes) {
    std::uint64_t value = 0;
    for (int i = 0; i < 8; ++i) {
        value = (value << 8) | bytes[i];
    }
    return value;
}

void append_u64_be(Sha256& h, std::uint64_t value) {
    std::uint8_t bytes[8];
    for (int i = 0; i < 8; ++i) {
        bytes[i] = std::uint8_t(value >> (56 - 8 * i));
    }
    h.update(bytes, 8);
}

}  // namespace

ContractState make_contract(const EconomicParams& params) {
    ContractState contract;
    contract.validators.resize(std::size_t(params.validator_count));
    for (std::size_t i = 0; i < contract.validators.size(); ++i) {
        contract.validators[i].id = i;
        contract.validators[i].deposit = params.deposit;
    }
    return contract;
}

Digest RandomBeacon::at(std::uint64_t epoch) const {
    Sha256 h;
    h.update(reinterpret_cast<const std::uint8_t*>(kBeaconTag),
             sizeof(kBeaconTag));
    append_u64_be(h, seed_);
    append_u64_be(h, epoch);
    return h.finish();
}

bool trigger_decision(const Digest& root, const Digest& beacon,
                      double test_probability) {
    if (test_probability <= 0.0) return false;
    if (test_probability >= 1.0) return true;
    Sha256 h;
    h.update(root.data(), root.size());
    h.update(beacon.data(), beacon.size());
    h.update(reinterpret_cast<const std::uint8_t*>(kTriggerTag),
             sizeof(kTriggerTag));
    const Digest d = h.finish();
    const std::uint64_t u = read_u64_be(d.data());
    // For pi_a < 1 the scaled threshold fits in 64 bits.
    const std::uint64_t threshold =
        std::uint64_t(std::ldexp(test_probability, 64));
    return u < threshold;
}

std::size_t select_validator(const Digest& root, const Digest& beacon,
                             std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("cannot select from an empty validator set");
    }
    if (n == 1) return 0;

    // Largest multiple of n representable in the 2^64 draw space; draws at
    // or above it are rejected so indices stay exactly uniform.
    const std::uint64_t remainder = (UINT64_MAX % n + 1) % n;
    const std::uint64_t bound = std::uint64_t(0) - remainder;  // 2^64 - remainder

    Sha256 h;
    h.update(root.data(), root.size());
    h.update(beacon.data(), beacon.size());
    h.update(reinterpret_cast<const std::uint8_t*>(kSelectTag),
             sizeof(kSelectTag));
    Digest d = h.finish();
    for (;;) {
        for (std::size_t offset = 0; offset + 8 <= d.size(); offset += 8) {
            const std::uint64_t u = read_u64_be(d.data() + offset);
            if (remainder == 0 || u < bound) {
                return std::size_t(u % n);
            }
        }
        Sha256 next;
        next.update(d.data(), d.size());
        next.update(reinterpret_cast<const std::uint8_t*>(kSelectTag),
                    sizeof(kSelectTag));
        d = next.finish();
    }
}

ContractState resolve_timeout(ContractState contract, std::size_t target,
                              double penalty) {
    if (!contract.pending_test || contract.pending_test->target != target) {
        throw std::logic_error("no pending attention test for this validator");
    }
    ValidatorAccount& account = contract.validators.at(target);
    if (penalty > account.deposit) {
        account.deposit = 0.0;
        account.deposit_clamped = true;
    } else {
        account.deposit -= penalty;
    }
    contract.pending_test.reset();
    return contract;
}

EpochResult run_epoch(const ContractState& contract,
                      const EconomicParams& params,
                      const StrategyProfile& profile, ProposerModel model,
                      RewardSplit reward_split, const RandomBeacon& beacon,
                      SplitMix64& rng) {
    const std::size_t n = contract.validators.size();
    EpochResult result;
    result.state = contract;

    const std::uint64_t epoch = contract.epoch;
    const L2State state = make_synthetic_state(rng.next(), epoch);
    const StateCommitment honest = build_commitment(state);

    const bool is_honest = rng.bernoulli(profile.proposer_honest_prob);
    result.proposer_action =
        is_honest ? ProposerAction::Honest : ProposerAction::Fraud;
    const StateCommitment recorded =
        is_honest ? honest : corrupt_commitment(state, rng.next());
    result.state.recorded = recorded;

    std::vector<bool> online(n);
    std::size_t online_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        online[i] = rng.bernoulli(profile.validator_online_prob);
        result.state.validators[i].online_this_epoch = online[i];
        online_count += online[i] ? 1 : 0;
    }
    result.online_count = online_count;

    const Digest epoch_beacon = beacon.at(epoch);
    const bool evaded = model == ProposerModel::Evasion && !is_honest;
    const bool triggered =
        !evaded &&
        trigger_decision(recorded.root, epoch_beacon, params.test_probability);

    if (triggered) {
        const std::size_t target =
            select_validator(recorded.root, epoch_beacon, n);
        result.state.pending_test = PendingTest{target};
        if (online[target]) {
            // A diligent validator reproduces the honest children.
            const AttentionSolution solution{honest.left, honest.right};
            result.test.outcome =
                verify_solution(recorded.root, solution)
                    ? TestOutcome::Pass
                    : TestOutcome::StateMismatch;  // dispute oracle: validator wins
            result.state.pending_test.reset();
        } else {
            result.state = resolve_timeout(std::move(result.state), target,
                                           params.test_penalty);
            result.test.outcome = TestOutcome::Timeout;
        }
        result.test.target = target;
    }

    result.fraud_detected = !is_honest && online_count > 0;

    // Settlement. Online detectors are credited the configured reward split.
    double detector_reward = 0.0;
    if (result.fraud_detected) {
        detector_reward =
            reward_split == RewardSplit::ExpectedShare
                ? expected_reward_share(params.fraud_reward_pool,
                                        params.validator_count,
                                        profile.validator_online_prob)
                : params.fraud_reward_pool / double(online_count);
    }

    result.outcomes.resize(n);
    result.validator_deltas.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        EpochOutcome& outcome = result.outcomes[i];
        outcome.proposer_action = result.proposer_action;
        outcome.this_validator_online = online[i];
        outcome.any_other_validator_online =
            online_count > (online[i] ? 1u : 0u);
        outcome.test_result = TestResult::NotTested;
        if (result.test.target && *result.test.target == i) {
            switch (result.test.outcome) {
                case TestOutcome::Pass:
                    outcome.test_result = TestResult::Pass;
                    break;
                case TestOutcome::Timeout:
                    outcome.test_result = TestResult::Timeout;
                    break;
                case TestOutcome::StateMismatch:
                    outcome.test_result = TestResult::StateMismatch;
                    break;
                case TestOutcome::NotTriggered:
                    break;
            }
        }

        const double realized_cost = online[i] ? params.online_cost : 0.0;
        const double realized_reward =
            online[i] && result.fraud_detected ? detector_reward : 0.0;
        const PayoffPair pay = payoff_lookup(outcome, params, realized_cost,
                                             realized_reward, model);
        result.validator_deltas[i] = pay.validator;
        result.state.validators[i].balance += pay.validator;
        if (i == 0) {
            result.proposer_delta = pay.proposer;
        }
    }
    result.state.proposer_balance += result.proposer_delta;

    // Close the epoch: the commitment leaves the per-epoch window.
    result.state.recorded.reset();
    result.state.epoch = epoch + 1;
    return result;
}

std::string event_log_line(std::uint64_t epoch, const EpochResult& result) {
    std::string line = std::to_string(epoch);
    line += '\t';
    line += to_string(result.proposer_action);
    line += '\t';
    line += result.test.outcome != TestOutcome::NotTriggered ? '1' : '0';
    line += '\t';
    line += result.test.target ? std::to_string(*result.test.target)
                               : std::string("-");
    line += '\t';
    line += to_string(result.test.outcome);
    line += '\t';
    line += std::to_string(result.online_count);
    line += '\t';
    line += result.fraud_detected ? '1' : '0';
    return line;
}

const char* to_string(TestOutcome outcome) {
    switch (outcome) {
        case TestOutcome::NotTriggered:
            return "none";
        case TestOutcome::Pass:
            return "pass";
        case TestOutcome::Timeout:
            return "timeout";
        case TestOutcome::StateMismatch:
            return "state_mismatch";
    }
    return "unknown";
}

}  // namespace rat
