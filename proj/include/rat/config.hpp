#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "rat/design_tuning.hpp"
#include "rat/economics.hpp"

namespace rat {

/// Parse failure with the 1-based line it happened on (0 for file-level
/// problems such as a missing key).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, int line, const std::string& message)
        : std::runtime_error(line > 0 ? path + ":" + std::to_string(line) +
                                            ": " + message
                                      : path + ": " + message),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// Full tool configuration: the economic parameters, the strategy
/// profile, simulation settings and sweep settings.
struct Config {
    EconomicParams params;
    StrategyProfile profile;
    ProposerModel model = ProposerModel::Baseline;
    RewardSplit reward_split = RewardSplit::ExpectedShare;
    std::uint64_t epochs = 200000;
    std::uint64_t seed = 42;
    SweepSpec sweep;
};

/// Grammar: one `key = value` per line, `#` starts a comment, blank lines
/// ignored. Keys are lowercase and case-sensitive. The economic keys
/// (f_v, c_m, r_v, c_off, c_fail, f_p, c_fraud, r_fraud, n, pi_a, d_v)
/// and the profile keys (pi_p, pi_v) are required; the rest default.
/// Unknown keys, duplicate keys, malformed values and violated parameter
/// invariants are rejected with the offending line number.
Config parse_config(const std::string& text, const std::string& path = "<config>");

/// Reads and parses a config file; throws ConfigError (also on I/O failure).
Config load_config(const std::string& path);

/// Canonical text form; parse(serialize(c)) == c, and a serialize/parse
/// cycle is idempotent once values have been normalized to 12 significant
/// digits.
std::string serialize_config(const Config& config);

}  // namespace rat
