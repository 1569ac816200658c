#include "rat/design_tuning.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rat {

namespace {

// Round to cents through the decimal text form, so the stored sample is
// bit-identical to what a CSV reader will parse back.
double snap_to_cents(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    const double snapped = std::strtod(buf, nullptr);
    return snapped > 0.0 ? snapped : value;
}

}  // namespace

double epochs_per_month(const CostModel& cost) {
    if (!cost.valid()) {
        throw std::invalid_argument("cost model fields must be positive");
    }
    return double(cost.days_per_month) * 24.0 * 60.0 / cost.epoch_minutes;
}

double per_epoch_cost(const CostModel& cost) {
    return cost.monthly_cost / epochs_per_month(cost);
}

MinTestProbability min_attention_probability(double online_cost,
                                             int validator_count,
                                             double deposit) {
    if (deposit == 0.0) {
        throw std::invalid_argument("zero deposit");
    }
    if (deposit < 0.0) {
        throw std::invalid_argument("negative deposit");
    }
    if (validator_count < 1) {
        throw std::invalid_argument("validator count must be >= 1");
    }
    MinTestProbability result;
    result.value = online_cost * double(validator_count) / deposit;
    result.feasible = result.value <= 1.0;
    return result;
}

double tests_per_day(double test_probability, double epoch_minutes) {
    return test_probability * (24.0 * 60.0 / epoch_minutes);
}

ChallengePeriod individual_challenge_period(double test_penalty,
                                            double online_cost,
                                            double epoch_minutes) {
    if (online_cost == 0.0) {
        throw std::invalid_argument("never challenged");
    }
    ChallengePeriod period;
    period.epochs = test_penalty / online_cost;
    period.days = period.epochs * epoch_minutes / (24.0 * 60.0);
    return period;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (!spec.valid()) {
        throw std::invalid_argument("invalid sweep specification");
    }

    std::vector<double> penalties;
    penalties.reserve(std::size_t(spec.points));
    const double lo = spec.log_scale ? std::log(spec.penalty_min) : spec.penalty_min;
    const double hi = spec.log_scale ? std::log(spec.penalty_max) : spec.penalty_max;
    for (int i = 0; i < spec.points; ++i) {
        const double t = double(i) / double(spec.points - 1);
        const double raw = lo + t * (hi - lo);
        penalties.push_back(snap_to_cents(spec.log_scale ? std::exp(raw) : raw));
    }

    std::vector<SweepRow> rows;
    rows.reserve(penalties.size() * spec.validator_counts.size());
    for (int n : spec.validator_counts) {
        for (double penalty : penalties) {
            const MinTestProbability min_pi =
                min_attention_probability(spec.online_cost, n, penalty);
            rows.push_back({n, penalty, min_pi.value, min_pi.feasible});
        }
    }
    return rows;
}

}  // namespace rat
