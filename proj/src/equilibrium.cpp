#include "rat/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rat {

namespace {

constexpr double kConditionTolerance = 1e-12;
constexpr double kDedupTolerance = 1e-6;
constexpr double kKindTolerance = 1e-9;

EquilibriumKind classify(const StrategyProfile& profile) {
    const auto near = [](double x, double target) {
        return std::abs(x - target) <= kKindTolerance;
    };
    if (near(profile.proposer_honest_prob, 1.0) &&
        near(profile.validator_online_prob, 1.0)) {
        return EquilibriumKind::PureIdeal;
    }
    const auto pure = [&](double x) { return near(x, 0.0) || near(x, 1.0); };
    if (pure(profile.proposer_honest_prob) &&
        pure(profile.validator_online_prob)) {
        return EquilibriumKind::PureOther;
    }
    return EquilibriumKind::Mixed;
}

// Bisects f over [0,1]; requires a sign change between the endpoints.
template <typename F>
double bisect_unit(F&& f, double f_lo, double f_hi) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (f_lo < 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
            f_hi = fm;
        }
    }
    (void)f_hi;
    return 0.5 * (lo + hi);
}

}  // namespace

ConditionCheck check_ideal_security(const EconomicParams& params,
                                    ProposerModel model) {
    ConditionCheck check;
    check.lhs = params.online_cost;
    check.rhs = (params.test_probability / double(params.validator_count)) *
                params.test_penalty;
    check.margin = validator_utility_slope(params, 1.0, 1.0, model);
    check.satisfied = check.margin >= -kConditionTolerance;
    check.proposer_condition_satisfied =
        params.proposer_fee >= -params.fraud_penalty;
    return check;
}

double validator_utility_slope(const EconomicParams& params,
                               double proposer_honest_prob,
                               double others_online_prob,
                               ProposerModel model) {
    return validator_online_utility(params, proposer_honest_prob,
                                    others_online_prob) -
           validator_offline_utility(params, proposer_honest_prob,
                                     others_online_prob, model);
}

double proposer_utility_slope(const EconomicParams& params,
                              double validator_online_prob) {
    return proposer_honest_utility(params) -
           proposer_fraud_utility(params, validator_online_prob);
}

DeviationGains deviation_gains(const EconomicParams& params,
                               const StrategyProfile& profile,
                               ProposerModel model, int grid) {
    if (grid < 2) {
        throw std::invalid_argument("deviation grid must have >= 2 points");
    }

    DeviationGains gains;

    // Validator side: E[U_v] is affine in own q, so scan q = i/(grid-1)
    // without re-evaluating the conditional utilities.
    const double on = validator_online_utility(
        params, profile.proposer_honest_prob, profile.validator_online_prob);
    const double off = validator_offline_utility(
        params, profile.proposer_honest_prob, profile.validator_online_prob,
        model);
    const auto mix_v = [&](double q) { return off + q * (on - off); };
    const double own_v = expected_validator_utility(
        params, profile.validator_online_prob, profile.proposer_honest_prob,
        profile.validator_online_prob, model);
    double best_v = std::max({own_v, off, on});
    for (int i = 1; i + 1 < grid; ++i) {
        best_v = std::max(best_v, mix_v(double(i) / double(grid - 1)));
    }
    gains.validator = best_v - own_v;

    // Proposer side, same structure over pi_p.
    const double honest = proposer_honest_utility(params);
    const double fraud =
        proposer_fraud_utility(params, profile.validator_online_prob);
    const auto mix_p = [&](double p) { return fraud + p * (honest - fraud); };
    const double own_p = expected_proposer_utility(
        params, profile.proposer_honest_prob, profile.validator_online_prob);
    double best_p = std::max({own_p, fraud, honest});
    for (int i = 1; i + 1 < grid; ++i) {
        best_p = std::max(best_p, mix_p(double(i) / double(grid - 1)));
    }
    gains.proposer = best_p - own_p;

    return gains;
}

std::optional<EquilibriumPoint> verify_equilibrium(
    const EconomicParams& params, const StrategyProfile& profile,
    ProposerModel model, int grid) {
    const DeviationGains gains = deviation_gains(params, profile, model, grid);
    if (gains.validator > kEquilibriumTolerance ||
        gains.proposer > kEquilibriumTolerance) {
        return std::nullopt;
    }
    EquilibriumPoint point;
    point.profile = profile;
    point.kind = classify(profile);
    point.validator_deviation_gain = gains.validator;
    point.proposer_deviation_gain = gains.proposer;
    return point;
}

std::optional<double> solve_proposer_indifference(const EconomicParams& params) {
    const auto f = [&](double pi_v) { return proposer_utility_slope(params, pi_v); };
    const double f0 = f(0.0);
    const double f1 = f(1.0);
    if (f0 == 0.0) return 0.0;
    if (f1 == 0.0) return 1.0;
    if ((f0 < 0.0) == (f1 < 0.0)) return std::nullopt;
    return bisect_unit(f, f0, f1);
}

std::vector<EquilibriumPoint> find_symmetric_equilibria(
    const EconomicParams& params, ProposerModel model, int resolution) {
    if (resolution < 10) {
        throw std::invalid_argument("resolution must be >= 10");
    }

    std::vector<StrategyProfile> candidates;
    candidates.reserve(std::size_t(resolution) * resolution + 8);
    for (int i = 0; i < resolution; ++i) {
        const double pi_p = double(i) / double(resolution - 1);
        for (int j = 0; j < resolution; ++j) {
            const double pi_v = double(j) / double(resolution - 1);
            candidates.push_back({pi_p, pi_v});
        }
    }

    // Interior refinement: proposer indifference pins pi_v; the validator
    // indifference (affine in pi_p for fixed others) pins pi_p.
    const auto validator_indifference_pi_p =
        [&](double pi_v) -> std::optional<double> {
        const auto g = [&](double pi_p) {
            return validator_utility_slope(params, pi_p, pi_v, model);
        };
        const double g0 = g(0.0);
        const double g1 = g(1.0);
        if (g0 == 0.0) return 0.0;
        if (g1 == 0.0) return 1.0;
        if ((g0 < 0.0) == (g1 < 0.0)) return std::nullopt;
        return bisect_unit(g, g0, g1);
    };

    if (const auto pi_v_star = solve_proposer_indifference(params)) {
        candidates.push_back({0.0, *pi_v_star});
        candidates.push_back({1.0, *pi_v_star});
        if (const auto pi_p_star = validator_indifference_pi_p(*pi_v_star)) {
            candidates.push_back({*pi_p_star, *pi_v_star});
        }
    }
    for (double pi_p_edge : {0.0, 1.0}) {
        const auto h = [&](double pi_v) {
            return validator_utility_slope(params, pi_p_edge, pi_v, model);
        };
        const double h0 = h(0.0);
        const double h1 = h(1.0);
        if ((h0 < 0.0) != (h1 < 0.0) && h0 != 0.0 && h1 != 0.0) {
            candidates.push_back({pi_p_edge, bisect_unit(h, h0, h1)});
        }
    }

    std::vector<EquilibriumPoint> found;
    for (const StrategyProfile& profile : candidates) {
        if (auto point = verify_equilibrium(params, profile, model, resolution)) {
            found.push_back(*point);
        }
    }

    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
        if (a.profile.proposer_honest_prob != b.profile.proposer_honest_prob) {
            return a.profile.proposer_honest_prob < b.profile.proposer_honest_prob;
        }
        return a.profile.validator_online_prob < b.profile.validator_online_prob;
    });

    std::vector<EquilibriumPoint> unique;
    for (const auto& point : found) {
        const bool duplicate =
            std::any_of(unique.begin(), unique.end(), [&](const auto& kept) {
                return std::abs(kept.profile.proposer_honest_prob -
                                point.profile.proposer_honest_prob) <
                           kDedupTolerance &&
                       std::abs(kept.profile.validator_online_prob -
                                point.profile.validator_online_prob) <
                           kDedupTolerance;
            });
        if (!duplicate) {
            unique.push_back(point);
        }
    }
    return unique;
}

const char* to_string(EquilibriumKind kind) {
    switch (kind) {
        case EquilibriumKind::PureIdeal:
            return "pure_ideal";
        case EquilibriumKind::PureOther:
            return "pure_other";
        case EquilibriumKind::Mixed:
            return "mixed";
    }
    return "unknown";
}

}  // namespace rat
