#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rat/economics.hpp"
#include "rat/rng.hpp"
#include "rat/state_commitment.hpp"

namespace rat {

struct ValidatorAccount {
    std::size_t id = 0;
    double deposit = 0.0;          // remaining stake, never below zero
    double balance = 0.0;          // cumulative realized payoff
    bool online_this_epoch = false;
    bool deposit_clamped = false;  // a slash exceeded the remaining stake
};

struct PendingTest {
    std::size_t target = 0;
};

/// The L1 contract's view of one epoch: the recorded commitment, any
/// outstanding attention test, and the account book. pending_test only
/// exists while a commitment is recorded for the same epoch.
struct ContractState {
    std::uint64_t epoch = 0;
    std::optional<StateCommitment> recorded;
    std::optional<PendingTest> pending_test;
    std::vector<ValidatorAccount> validators;
    double proposer_balance = 0.0;
};

/// Fresh contract with validator_count accounts staked at the configured
/// deposit.
ContractState make_contract(const EconomicParams& params);

/// Stand-in for the L1 block hash: a deterministic per-epoch digest
/// derived from (run seed, epoch).
class RandomBeacon {
public:
    explicit RandomBeacon(std::uint64_t seed) : seed_(seed) {}
    Digest at(std::uint64_t epoch) const;

private:
    std::uint64_t seed_;
};

enum class TestOutcome { NotTriggered, Pass, Timeout, StateMismatch };

struct TestOutcomeRecord {
    TestOutcome outcome = TestOutcome::NotTriggered;
    std::optional<std::size_t> target;  // present iff outcome != NotTriggered
};

/// Whether this epoch runs an attention test. The decision is a PRF of
/// the recorded root and the beacon: u = first 8 bytes (big-endian) of
/// SHA-256(root || beacon || "TRIG"), test iff u / 2^64 < pi_a. The
/// comparison is done in integer space so pi_a = 0 never triggers and
/// pi_a = 1 always does.
bool trigger_decision(const Digest& root, const Digest& beacon,
                      double test_probability);

/// Uniform target in [0, n): successive 8-byte big-endian windows of
/// SHA-256(root || beacon || "SEL"), re-hashed with the same tag when
/// exhausted, rejection-sampled below the largest multiple of n to kill
/// modulo bias.
std::size_t select_validator(const Digest& root, const Digest& beacon,
                             std::size_t n);

/// Settles a timed-out test: the target's deposit is reduced by the
/// penalty, clamped at zero (with the account flagged), and the pending
/// test is cleared. Throws std::logic_error when no matching test is
/// pending.
ContractState resolve_timeout(ContractState contract, std::size_t target,
                              double penalty);

struct EpochResult {
    ContractState state;
    std::vector<EpochOutcome> outcomes;   // one per validator
    TestOutcomeRecord test;
    std::vector<double> validator_deltas; // balance change per validator
    double proposer_delta = 0.0;
    ProposerAction proposer_action = ProposerAction::Honest;
    bool fraud_detected = false;
    std::size_t online_count = 0;
};

/// Runs one epoch of the protocol:
///   1. the proposer draws honest/fraud and submits a commitment over the
///      epoch's synthetic state (corrupted when fraudulent);
///   2. every validator independently draws its online status;
///   3. the contract decides whether to test (never, under Evasion, when
///      the commitment is fraudulent) and picks a target;
///   4. an online target answers with the honest children — Pass against
///      an honest root, StateMismatch against a fraudulent one (the
///      dispute oracle rules for the validator); an offline target times
///      out and is slashed;
///   5. fraud is detected whenever any validator is online;
///   6. balances settle from the payoff table, online detectors earning
///      the configured reward split.
/// Per-draw order from the generator: 1 state seed, 1 honesty draw,
/// 1 corruption seed (fraud epochs only), then N online draws in id order.
EpochResult run_epoch(const ContractState& contract,
                      const EconomicParams& params,
                      const StrategyProfile& profile, ProposerModel model,
                      RewardSplit reward_split, const RandomBeacon& beacon,
                      SplitMix64& rng);

/// Tab-separated event line:
/// epoch, proposer action, triggered flag, target (or "-"), outcome,
/// online count, detection flag.
std::string event_log_line(std::uint64_t epoch, const EpochResult& result);

const char* to_string(TestOutcome outcome);

}  // namespace rat
