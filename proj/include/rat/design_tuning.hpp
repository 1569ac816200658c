#pragma once

#include <vector>

namespace rat {

/// Converts a validator's monthly operating bill into a per-epoch cost.
struct CostModel {
    double monthly_cost = 600.0;
    int days_per_month = 30;
    double epoch_minutes = 10.0;

    bool valid() const {
        return monthly_cost > 0.0 && days_per_month > 0 && epoch_minutes > 0.0;
    }
};

/// days * 24 * 60 / epoch_minutes (4320 for the 30-day, 10-minute default).
double epochs_per_month(const CostModel& cost);

/// monthly_cost / epochs_per_month.
double per_epoch_cost(const CostModel& cost);

struct MinTestProbability {
    double value = 0.0;    // c_m * N / D_V
    bool feasible = true;  // value <= 1
};

/// Smallest per-epoch test probability that keeps full attention an
/// equilibrium when the offline penalty is set to the whole deposit:
/// pi_a >= c_m * N / D_V. Values above 1 are reported and flagged
/// infeasible rather than clamped. Throws std::invalid_argument on a
/// non-positive deposit.
MinTestProbability min_attention_probability(double online_cost,
                                             int validator_count,
                                             double deposit);

/// Expected system-wide tests per day: pi_a * (minutes per day / epoch_minutes).
double tests_per_day(double test_probability, double epoch_minutes);

struct ChallengePeriod {
    double epochs = 0.0;
    double days = 0.0;
};

/// How often one specific validator expects a direct challenge at the
/// minimal test probability: every c_off / c_m epochs. Throws
/// std::invalid_argument when the per-epoch cost is zero ("never challenged").
ChallengePeriod individual_challenge_period(double test_penalty,
                                            double online_cost,
                                            double epoch_minutes);

/// Sweep of the minimum test probability over a penalty grid and a set of
/// validator counts. The penalty doubles as the deposit (slashing the full
/// stake is the cheapest way to keep the required pi_a low).
struct SweepSpec {
    double penalty_min = 10.0;
    double penalty_max = 10000.0;
    int points = 64;
    bool log_scale = true;
    std::vector<int> validator_counts = {5, 10, 50, 100};
    double online_cost = 600.0 / 4320.0;

    bool valid() const {
        return penalty_min > 0.0 && penalty_min <= penalty_max && points >= 2 &&
               !validator_counts.empty() && online_cost >= 0.0;
    }
};

struct SweepRow {
    int validator_count = 0;
    double penalty = 0.0;
    double min_test_probability = 0.0;
    bool feasible = true;
};

/// Rows ordered by validator count, then ascending penalty. Penalty
/// samples are linear or log-uniform between the bounds and are rounded
/// to cents so emitted tables are exact currency amounts.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

}  // namespace rat
