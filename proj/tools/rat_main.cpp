// Command-line front end for the attention-test toolkit: condition checks,
// equilibrium search, design sweeps, cost conversion and simulation.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rat/config.hpp"
#include "rat/design_tuning.hpp"
#include "rat/economics.hpp"
#include "rat/equilibrium.hpp"
#include "rat/montecarlo.hpp"
#include "rat/sha256.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitConditionUnmet = 2;

std::string fmt(const char* spec, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, value);
    return buf;
}

rat::ProposerModel parse_model_flag(const std::string& name) {
    if (name == "baseline") return rat::ProposerModel::Baseline;
    if (name == "evasion") return rat::ProposerModel::Evasion;
    throw rat::ConfigError("--model", 0, "must be 'baseline' or 'evasion'");
}

rat::RewardSplit parse_split_flag(const std::string& name) {
    if (name == "expected") return rat::RewardSplit::ExpectedShare;
    if (name == "equal") return rat::RewardSplit::EqualRealized;
    throw rat::ConfigError("--reward-split", 0, "must be 'expected' or 'equal'");
}

int cmd_check(const std::string& config_path, const std::string& model_name) {
    const rat::Config config = rat::load_config(config_path);
    const rat::ProposerModel model =
        model_name.empty() ? config.model : parse_model_flag(model_name);
    const rat::ConditionCheck check =
        rat::check_ideal_security(config.params, model);

    std::cout << "lhs = " << fmt("%.12g", check.lhs) << '\n'
              << "rhs = " << fmt("%.12g", check.rhs) << '\n'
              << "margin = " << fmt("%.12g", check.margin) << '\n'
              << "satisfied = " << (check.satisfied ? "true" : "false") << '\n'
              << "proposer_condition_satisfied = "
              << (check.proposer_condition_satisfied ? "true" : "false")
              << '\n';
    return check.satisfied && check.proposer_condition_satisfied
               ? kExitOk
               : kExitConditionUnmet;
}

int cmd_sweep(const rat::SweepSpec& spec, const std::string& out_path) {
    const std::vector<rat::SweepRow> rows = rat::run_sweep(spec);

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return kExitInputError;
        }
        out = &file;
    }

    *out << "n,c_off,min_pi_a_percent,feasible\n";
    for (const rat::SweepRow& row : rows) {
        *out << row.validator_count << ',' << fmt("%.2f", row.penalty) << ','
             << fmt("%.6g", row.min_test_probability * 100.0) << ','
             << (row.feasible ? 1 : 0) << '\n';
    }
    return kExitOk;
}

int cmd_cost(double monthly, int days, double epoch_minutes) {
    const rat::CostModel cost{monthly, days, epoch_minutes};
    if (!cost.valid()) {
        std::cerr << "error: cost inputs must be positive\n";
        return kExitInputError;
    }
    std::cout << "epochs_per_month = " << fmt("%.12g", rat::epochs_per_month(cost))
              << '\n'
              << "c_m_per_epoch = " << fmt("%.6f", rat::per_epoch_cost(cost))
              << '\n';
    return kExitOk;
}

void print_report(const rat::SimConfig& config, const rat::SimReport& report) {
    std::cout << "hash = " << rat::kHashAlgorithm << '\n'
              << "model = " << rat::to_string(config.model) << '\n'
              << "reward_split = " << rat::to_string(config.reward_split) << '\n'
              << "epochs = " << config.epochs << '\n'
              << "seed = " << config.seed << '\n'
              << "pi_p = " << fmt("%.12g", config.profile.proposer_honest_prob)
              << '\n'
              << "pi_v = " << fmt("%.12g", config.profile.validator_online_prob)
              << '\n'
              << "empirical_u_v = " << fmt("%.12g", report.empirical_validator_utility)
              << '\n'
              << "u_v_std_err = " << fmt("%.12g", report.validator_std_err) << '\n'
              << "empirical_u_p = " << fmt("%.12g", report.empirical_proposer_utility)
              << '\n'
              << "u_p_std_err = " << fmt("%.12g", report.proposer_std_err) << '\n'
              << "trigger_rate = " << fmt("%.12g", report.trigger_rate) << '\n'
              << "timeout_rate = " << fmt("%.12g", report.timeout_rate) << '\n'
              << "fraud_rate = " << fmt("%.12g", report.fraud_rate) << '\n'
              << "detection_rate = " << fmt("%.12g", report.detection_rate) << '\n'
              << "analytic_u_v = " << fmt("%.12g", report.analytic_validator_utility)
              << '\n'
              << "analytic_u_p = " << fmt("%.12g", report.analytic_proposer_utility)
              << '\n'
              << "z_u_v = " << fmt("%.12g", report.validator_z) << '\n'
              << "z_u_p = " << fmt("%.12g", report.proposer_z) << '\n';
}

int write_report_csv(const rat::SimConfig& config, const rat::SimReport& report,
                     const std::string& path) {
    std::ofstream file(path);
    if (!file) {
        std::cerr << "error: cannot write " << path << '\n';
        return kExitInputError;
    }
    file << "pi_p,pi_v,model,reward_split,epochs,seed,"
            "empirical_u_v,u_v_std_err,empirical_u_p,u_p_std_err,"
            "trigger_rate,timeout_rate,fraud_rate,detection_rate,"
            "analytic_u_v,analytic_u_p,z_u_v,z_u_p\n";
    file << fmt("%.12g", config.profile.proposer_honest_prob) << ','
         << fmt("%.12g", config.profile.validator_online_prob) << ','
         << rat::to_string(config.model) << ','
         << rat::to_string(config.reward_split) << ',' << config.epochs << ','
         << config.seed << ',' << fmt("%.12g", report.empirical_validator_utility)
         << ',' << fmt("%.12g", report.validator_std_err) << ','
         << fmt("%.12g", report.empirical_proposer_utility) << ','
         << fmt("%.12g", report.proposer_std_err) << ','
         << fmt("%.12g", report.trigger_rate) << ','
         << fmt("%.12g", report.timeout_rate) << ','
         << fmt("%.12g", report.fraud_rate) << ','
         << fmt("%.12g", report.detection_rate) << ','
         << fmt("%.12g", report.analytic_validator_utility) << ','
         << fmt("%.12g", report.analytic_proposer_utility) << ','
         << fmt("%.12g", report.validator_z) << ','
         << fmt("%.12g", report.proposer_z) << '\n';
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, std::uint64_t epochs_flag,
                 bool epochs_set, std::uint64_t seed_flag, bool seed_set,
                 const std::string& model_name, const std::string& split_name,
                 const std::string& out_path, const std::string& report_csv) {
    const rat::Config file_config = rat::load_config(config_path);

    rat::SimConfig config;
    config.params = file_config.params;
    config.profile = file_config.profile;
    config.epochs = epochs_set ? epochs_flag : file_config.epochs;
    config.seed = seed_set ? seed_flag : file_config.seed;
    config.model =
        model_name.empty() ? file_config.model : parse_model_flag(model_name);
    config.reward_split = split_name.empty() ? file_config.reward_split
                                             : parse_split_flag(split_name);

    std::ofstream log_file;
    std::ostream* log = nullptr;
    if (!out_path.empty()) {
        log_file.open(out_path);
        if (!log_file) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return kExitInputError;
        }
        log = &log_file;
    }

    const rat::SimReport report = rat::simulate(config, log);
    print_report(config, report);
    if (!report_csv.empty()) {
        return write_report_csv(config, report, report_csv);
    }
    return kExitOk;
}

int cmd_equilibrium(const std::string& config_path, int resolution,
                    const std::string& model_name) {
    const rat::Config config = rat::load_config(config_path);
    const rat::ProposerModel model =
        model_name.empty() ? config.model : parse_model_flag(model_name);

    const std::vector<rat::EquilibriumPoint> points =
        rat::find_symmetric_equilibria(config.params, model, resolution);

    std::cout << "model = " << rat::to_string(model) << '\n'
              << "resolution = " << resolution << '\n'
              << "equilibria = " << points.size() << '\n';
    for (const rat::EquilibriumPoint& point : points) {
        std::cout << rat::to_string(point.kind)
                  << " pi_p=" << fmt("%.9f", point.profile.proposer_honest_prob)
                  << " pi_v=" << fmt("%.9f", point.profile.validator_online_prob)
                  << " validator_gain=" << fmt("%.3e", point.validator_deviation_gain)
                  << " proposer_gain=" << fmt("%.3e", point.proposer_deviation_gain)
                  << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Attention-test protocol simulator and design toolkit"};
    app.require_subcommand(1);

    // check
    auto* check = app.add_subcommand(
        "check", "Evaluate the full-attention equilibrium condition");
    std::string check_config;
    std::string check_model;
    check->add_option("--config", check_config, "Config file")->required();
    check->add_option("--model", check_model, "baseline|evasion");

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep", "Minimum test probability over a penalty grid");
    rat::SweepSpec sweep_spec;
    std::string sweep_out;
    sweep->add_option("--c-off-min", sweep_spec.penalty_min, "Smallest penalty");
    sweep->add_option("--c-off-max", sweep_spec.penalty_max, "Largest penalty");
    sweep->add_option("--points", sweep_spec.points, "Samples per validator count");
    sweep->add_option("--log", sweep_spec.log_scale,
                      "Log-spaced penalty grid (true/false)");
    sweep->add_option("--n", sweep_spec.validator_counts,
                      "Validator counts (repeatable)");
    sweep->add_option("--c-m", sweep_spec.online_cost, "Per-epoch online cost");
    sweep->add_option("--out", sweep_out, "CSV output path (default stdout)");

    // cost
    auto* cost = app.add_subcommand(
        "cost", "Convert a monthly operating cost to a per-epoch cost");
    double cost_monthly = 600.0;
    int cost_days = 30;
    double cost_epoch_minutes = 10.0;
    cost->add_option("--monthly", cost_monthly, "Monthly cost")->required();
    cost->add_option("--days", cost_days, "Days per month");
    cost->add_option("--epoch-minutes", cost_epoch_minutes, "Epoch length");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo protocol run");
    std::string sim_config;
    std::uint64_t sim_epochs = 0;
    std::uint64_t sim_seed = 0;
    std::string sim_model;
    std::string sim_split;
    std::string sim_out;
    std::string sim_report_csv;
    simulate->add_option("--config", sim_config, "Config file")->required();
    auto* epochs_opt = simulate->add_option("--epochs", sim_epochs, "Epoch count");
    auto* seed_opt = simulate->add_option("--seed", sim_seed, "Run seed");
    simulate->add_option("--model", sim_model, "baseline|evasion");
    simulate->add_option("--reward-split", sim_split, "expected|equal");
    simulate->add_option("--out", sim_out, "Per-epoch event log path");
    simulate->add_option("--report-csv", sim_report_csv, "Report CSV path");

    // equilibrium
    auto* equilibrium =
        app.add_subcommand("equilibrium", "Search symmetric equilibria");
    std::string eq_config;
    int eq_resolution = 101;
    std::string eq_model;
    equilibrium->add_option("--config", eq_config, "Config file")->required();
    equilibrium->add_option("--resolution", eq_resolution, "Grid points per axis");
    equilibrium->add_option("--model", eq_model, "baseline|evasion");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return kExitInputError;
    }

    try {
        if (check->parsed()) {
            return cmd_check(check_config, check_model);
        }
        if (sweep->parsed()) {
            if (!sweep_spec.valid()) {
                std::cerr << "error: invalid sweep settings\n";
                return kExitInputError;
            }
            return cmd_sweep(sweep_spec, sweep_out);
        }
        if (cost->parsed()) {
            return cmd_cost(cost_monthly, cost_days, cost_epoch_minutes);
        }
        if (simulate->parsed()) {
            return cmd_simulate(sim_config, sim_epochs, epochs_opt->count() > 0,
                                sim_seed, seed_opt->count() > 0, sim_model,
                                sim_split, sim_out, sim_report_csv);
        }
        if (equilibrium->parsed()) {
            if (eq_resolution < 10) {
                std::cerr << "error: resolution must be >= 10\n";
                return kExitInputError;
            }
            return cmd_equilibrium(eq_config, eq_resolution, eq_model);
        }
    } catch (const rat::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}
