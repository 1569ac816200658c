#include "rat/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "rat/equilibrium.hpp"
#include "rat/protocol_engine.hpp"

namespace rat {

namespace {

// Per-epoch sample mean / standard error of the mean.
struct RunningMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t count = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++count;
    }
    double mean() const { return count ? sum / double(count) : 0.0; }
    double std_err() const {
        if (count < 2) return 0.0;
        const double m = mean();
        double var = (sum_sq - double(count) * m * m) / double(count - 1);
        if (var < 0.0) var = 0.0;  // rounding can push a constant sample below 0
        return std::sqrt(var / double(count));
    }
};

double z_score(double gap, double std_err) {
    if (std_err > 0.0) return gap / std_err;
    return std::abs(gap) <= 1e-12 ? 0.0
                                  : std::numeric_limits<double>::infinity();
}

}  // namespace

SimReport simulate(const SimConfig& config, std::ostream* event_log) {
    if (config.epochs < 1) {
        throw std::invalid_argument("simulation needs at least one epoch");
    }

    ContractState contract = make_contract(config.params);
    const RandomBeacon beacon(config.seed);
    SplitMix64 rng(config.seed);

    RunningMoments validator_moments;
    RunningMoments proposer_moments;
    std::uint64_t triggered = 0;
    std::uint64_t timeouts = 0;
    std::uint64_t fraud_epochs = 0;
    std::uint64_t detected_frauds = 0;

    const double n = double(config.params.validator_count);
    for (std::uint64_t e = 0; e < config.epochs; ++e) {
        EpochResult result =
            run_epoch(contract, config.params, config.profile, config.model,
                      config.reward_split, beacon, rng);

        double delta_sum = 0.0;
        for (double d : result.validator_deltas) {
            delta_sum += d;
        }
        validator_moments.add(delta_sum / n);
        proposer_moments.add(result.proposer_delta);

        if (result.test.outcome != TestOutcome::NotTriggered) ++triggered;
        if (result.test.outcome == TestOutcome::Timeout) ++timeouts;
        if (result.proposer_action == ProposerAction::Fraud) {
            ++fraud_epochs;
            if (result.fraud_detected) ++detected_frauds;
        }

        if (event_log) {
            *event_log << event_log_line(e, result) << '\n';
        }

        contract = std::move(result.state);
    }

    SimReport report;
    report.empirical_validator_utility = validator_moments.mean();
    report.validator_std_err = validator_moments.std_err();
    report.empirical_proposer_utility = proposer_moments.mean();
    report.proposer_std_err = proposer_moments.std_err();
    report.trigger_rate = double(triggered) / double(config.epochs);
    report.timeout_rate = double(timeouts) / double(config.epochs);
    report.fraud_rate = double(fraud_epochs) / double(config.epochs);
    report.detection_rate =
        fraud_epochs ? double(detected_frauds) / double(fraud_epochs) : 0.0;
    report.analytic_validator_utility = expected_validator_utility(
        config.params, config.profile.validator_online_prob,
        config.profile.proposer_honest_prob,
        config.profile.validator_online_prob, config.model);
    report.analytic_proposer_utility = expected_proposer_utility(
        config.params, config.profile.proposer_honest_prob,
        config.profile.validator_online_prob);
    report.validator_z = z_score(
        report.empirical_validator_utility - report.analytic_validator_utility,
        report.validator_std_err);
    report.proposer_z = z_score(
        report.empirical_proposer_utility - report.analytic_proposer_utility,
        report.proposer_std_err);
    return report;
}

std::vector<StrategyProfile> best_response_dynamics(
    const EconomicParams& params, const StrategyProfile& start,
    ProposerModel model, int rounds) {
    if (rounds < 1) {
        throw std::invalid_argument("need at least one round");
    }
    std::vector<StrategyProfile> trajectory;
    trajectory.reserve(std::size_t(rounds) + 1);
    trajectory.push_back(start);

    StrategyProfile current = start;
    for (int r = 0; r < rounds; ++r) {
        const double slope_v = validator_utility_slope(
            params, current.proposer_honest_prob, current.validator_online_prob,
            model);
        if (slope_v > 0.0) {
            current.validator_online_prob = 1.0;
        } else if (slope_v < 0.0) {
            current.validator_online_prob = 0.0;
        }  // exactly indifferent: stay put

        const double slope_p =
            proposer_utility_slope(params, current.validator_online_prob);
        if (slope_p > 0.0) {
            current.proposer_honest_prob = 1.0;
        } else if (slope_p < 0.0) {
            current.proposer_honest_prob = 0.0;
        }

        trajectory.push_back(current);
    }
    return trajectory;
}

}  // namespace rat
