#pragma once

#include <optional>
#include <vector>

#include "rat/economics.hpp"

namespace rat {

/// Result of the full-attention condition check. The profile (pi_p = 1,
/// pi_v = 1) is an equilibrium iff c_m <= (pi_a / N) * c_off and
/// f_p >= -C_fraud; the latter always holds for non-negative fees and
/// penalties. The condition is the same under Baseline and Evasion: an
/// evading proposer only changes fraud epochs, and against an honest
/// proposer there are none.
struct ConditionCheck {
    double lhs = 0.0;     // c_m
    double rhs = 0.0;     // (pi_a / N) * c_off
    bool satisfied = false;
    double margin = 0.0;  // rhs - lhs
    bool proposer_condition_satisfied = false;  // f_p >= -C_fraud
};

enum class EquilibriumKind { PureIdeal, PureOther, Mixed };

struct EquilibriumPoint {
    StrategyProfile profile;
    EquilibriumKind kind = EquilibriumKind::Mixed;
    double validator_deviation_gain = 0.0;
    double proposer_deviation_gain = 0.0;
};

struct DeviationGains {
    double validator = 0.0;
    double proposer = 0.0;
};

/// Acceptance tolerance for deviation gains, in currency units.
inline constexpr double kEquilibriumTolerance = 1e-9;

/// Checks the full-attention equilibrium conditions. The margin is
/// evaluated through the model's own utility functions at the candidate
/// point (it reduces to rhs - lhs in both models).
ConditionCheck check_ideal_security(const EconomicParams& params,
                                    ProposerModel model = ProposerModel::Baseline);

/// d E[U_v] / d(own online probability): online utility minus offline
/// utility. Positive means being online more often pays. At pi_p = 1 this
/// is (pi_a / N) * c_off - c_m for both models.
double validator_utility_slope(const EconomicParams& params,
                               double proposer_honest_prob,
                               double others_online_prob, ProposerModel model);

/// d E[U_p] / d(pi_p): honest utility minus fraud utility. At pi_v = 1 this
/// is f_p + C_fraud; at pi_v = 0 it is -R_fraud.
double proposer_utility_slope(const EconomicParams& params,
                              double validator_online_prob);

/// Maximum unilateral gains at a profile: for the validator over own
/// online probabilities, for the proposer over honesty probabilities.
/// Both utilities are affine in the player's own mixing so the endpoints
/// are decisive; the uniform grid (grid points per axis, endpoints
/// included) is scanned as corroboration. Gains are never negative (the
/// current strategy is always a candidate).
DeviationGains deviation_gains(const EconomicParams& params,
                               const StrategyProfile& profile,
                               ProposerModel model, int grid = 101);

/// Accepts the profile as a symmetric equilibrium iff both deviation
/// gains are within kEquilibriumTolerance; returns the classified point,
/// or nullopt when some player can profitably deviate.
std::optional<EquilibriumPoint> verify_equilibrium(
    const EconomicParams& params, const StrategyProfile& profile,
    ProposerModel model, int grid = 101);

/// The pi_v at which the proposer is exactly indifferent between honesty
/// and fraud, located by bisection; nullopt when no interior root exists.
std::optional<double> solve_proposer_indifference(const EconomicParams& params);

/// Scans a resolution x resolution grid of symmetric profiles (endpoints
/// included) plus bisection-refined indifference candidates, keeps the
/// profiles that pass verify_equilibrium, deduplicates within 1e-6 and
/// returns them ordered by (pi_p, pi_v).
std::vector<EquilibriumPoint> find_symmetric_equilibria(
    const EconomicParams& params, ProposerModel model, int resolution = 101);

const char* to_string(EquilibriumKind kind);

}  // namespace rat
