#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "rat/economics.hpp"

namespace rat {

struct SimConfig {
    EconomicParams params;
    StrategyProfile profile;
    std::uint64_t epochs = 200000;
    std::uint64_t seed = 42;
    ProposerModel model = ProposerModel::Baseline;
    RewardSplit reward_split = RewardSplit::ExpectedShare;
};

/// Aggregate of a simulation run. Empirical utilities are per-epoch means
/// (the validator figure additionally averages over the N validators);
/// standard errors come from the per-epoch sample variance. Analytic
/// values evaluate the closed-form expected utilities at the symmetric
/// profile, and the z-scores standardize the empirical-minus-analytic
/// gaps. detection_rate conditions on fraud epochs (0 when there were
/// none).
struct SimReport {
    double empirical_validator_utility = 0.0;
    double validator_std_err = 0.0;
    double empirical_proposer_utility = 0.0;
    double proposer_std_err = 0.0;
    double trigger_rate = 0.0;
    double timeout_rate = 0.0;
    double fraud_rate = 0.0;
    double detection_rate = 0.0;
    double analytic_validator_utility = 0.0;
    double analytic_proposer_utility = 0.0;
    double validator_z = 0.0;
    double proposer_z = 0.0;
};

/// Runs config.epochs epochs of the protocol under the profile and
/// aggregates. Bit-for-bit reproducible for a fixed config. When
/// event_log is non-null, one tab-separated line per epoch is streamed
/// to it.
SimReport simulate(const SimConfig& config, std::ostream* event_log = nullptr);

/// Iterated best response starting from `start`: each round the validator
/// side moves to the endpoint favored by its utility slope (staying put
/// when exactly indifferent), then the proposer side does the same.
/// Returns the trajectory including the starting profile (rounds + 1
/// entries).
std::vector<StrategyProfile> best_response_dynamics(
    const EconomicParams& params, const StrategyProfile& start,
    ProposerModel model, int rounds);

}  // namespace rat
