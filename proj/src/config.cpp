#include "rat/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace rat {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

struct RawEntry {
    std::string value;
    int line = 0;
};

class Reader {
public:
    Reader(std::map<std::string, RawEntry> entries, std::string path)
        : entries_(std::move(entries)), path_(std::move(path)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    double require_double(const std::string& key) {
        return parse_double(key, take_required(key));
    }
    double optional_double(const std::string& key, double fallback) {
        const auto entry = take_optional(key);
        return entry ? parse_double(key, *entry) : fallback;
    }
    std::int64_t require_int(const std::string& key) {
        return parse_int(key, take_required(key));
    }
    std::int64_t optional_int(const std::string& key, std::int64_t fallback) {
        const auto entry = take_optional(key);
        return entry ? parse_int(key, *entry) : fallback;
    }
    std::uint64_t optional_u64(const std::string& key, std::uint64_t fallback) {
        const auto entry = take_optional(key);
        if (!entry) return fallback;
        try {
            if (!entry->value.empty() && entry->value[0] == '-') {
                throw std::invalid_argument("");
            }
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(entry->value, &pos);
            if (pos != entry->value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(entry->line, "value of '" + key + "' is not an unsigned integer");
        }
    }
    bool optional_bool(const std::string& key, bool fallback) {
        const auto entry = take_optional(key);
        if (!entry) return fallback;
        if (entry->value == "true" || entry->value == "1") return true;
        if (entry->value == "false" || entry->value == "0") return false;
        fail(entry->line, "value of '" + key + "' must be true or false");
    }
    std::string optional_string(const std::string& key, std::string fallback) {
        const auto entry = take_optional(key);
        return entry ? entry->value : std::move(fallback);
    }
    int line_of(const std::string& key) const {
        const auto it = consumed_.find(key);
        return it == consumed_.end() ? 0 : it->second;
    }

    std::vector<int> optional_int_list(const std::string& key,
                                       std::vector<int> fallback) {
        const auto entry = take_optional(key);
        if (!entry) return fallback;
        std::vector<int> values;
        std::stringstream ss(entry->value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            item = trim(item);
            try {
                std::size_t pos = 0;
                values.push_back(std::stoi(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                fail(entry->line,
                     "value of '" + key + "' must be a comma-separated integer list");
            }
        }
        if (values.empty()) {
            fail(entry->line, "value of '" + key + "' must be non-empty");
        }
        return values;
    }

    void finish() const {
        if (!entries_.empty()) {
            const auto& first = *entries_.begin();
            fail(first.second.line, "unknown key '" + first.first + "'");
        }
    }

    [[noreturn]] void fail(int line, const std::string& message) const {
        throw ConfigError(path_, line, message);
    }

private:
    RawEntry take_required(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) {
            fail(0, "missing required key '" + key + "'");
        }
        RawEntry entry = it->second;
        consumed_[key] = entry.line;
        entries_.erase(it);
        return entry;
    }
    std::optional<RawEntry> take_optional(const std::string& key) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        RawEntry entry = it->second;
        consumed_[key] = entry.line;
        entries_.erase(it);
        return entry;
    }
    double parse_double(const std::string& key, const RawEntry& entry) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(entry.value, &pos);
            if (pos != entry.value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(entry.line, "value of '" + key + "' is not a number");
        }
    }
    std::int64_t parse_int(const std::string& key, const RawEntry& entry) {
        try {
            std::size_t pos = 0;
            const std::int64_t v = std::stoll(entry.value, &pos);
            if (pos != entry.value.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            fail(entry.line, "value of '" + key + "' is not an integer");
        }
    }

    std::map<std::string, RawEntry> entries_;
    std::map<std::string, int> consumed_;
    std::string path_;
};

}  // namespace

Config parse_config(const std::string& text, const std::string& path) {
    std::map<std::string, RawEntry> entries;
    std::stringstream stream(text);
    std::string raw_line;
    int line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const std::size_t hash = raw_line.find('#');
        std::string line =
            trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path, line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(path, line_no, "expected 'key = value'");
        }
        if (entries.count(key)) {
            throw ConfigError(path, line_no, "duplicate key '" + key + "'");
        }
        entries[key] = RawEntry{value, line_no};
    }

    Reader reader(std::move(entries), path);
    Config config;

    config.params.validator_fee = reader.require_double("f_v");
    config.params.online_cost = reader.require_double("c_m");
    config.params.fraud_reward_pool = reader.require_double("r_v");
    config.params.test_penalty = reader.require_double("c_off");
    config.params.failure_penalty = reader.require_double("c_fail");
    config.params.proposer_fee = reader.require_double("f_p");
    config.params.fraud_penalty = reader.require_double("c_fraud");
    config.params.fraud_profit = reader.require_double("r_fraud");
    const std::int64_t n = reader.require_int("n");
    if (n < 1 || n > 100000000) {
        reader.fail(reader.line_of("n"), "n out of range");
    }
    config.params.validator_count = int(n);
    config.params.test_probability = reader.require_double("pi_a");
    config.params.deposit = reader.require_double("d_v");

    config.profile.proposer_honest_prob = reader.require_double("pi_p");
    config.profile.validator_online_prob = reader.require_double("pi_v");

    const std::int64_t epochs = reader.optional_int("epochs", 200000);
    if (epochs < 1) {
        reader.fail(reader.line_of("epochs"), "epochs must be >= 1");
    }
    config.epochs = std::uint64_t(epochs);
    config.seed = reader.optional_u64("seed", 42);

    const std::string model = reader.optional_string("model", "baseline");
    if (model == "baseline") {
        config.model = ProposerModel::Baseline;
    } else if (model == "evasion") {
        config.model = ProposerModel::Evasion;
    } else {
        reader.fail(reader.line_of("model"),
                    "model must be 'baseline' or 'evasion'");
    }

    const std::string split = reader.optional_string("reward_split", "expected");
    if (split == "expected") {
        config.reward_split = RewardSplit::ExpectedShare;
    } else if (split == "equal") {
        config.reward_split = RewardSplit::EqualRealized;
    } else {
        reader.fail(reader.line_of("reward_split"),
                    "reward_split must be 'expected' or 'equal'");
    }

    config.sweep.penalty_min = reader.optional_double("c_off_min", 10.0);
    config.sweep.penalty_max = reader.optional_double("c_off_max", 10000.0);
    const std::int64_t points = reader.optional_int("points", 64);
    if (points < 2 || points > 100000000) {
        reader.fail(reader.line_of("points"), "points out of range");
    }
    config.sweep.points = int(points);
    config.sweep.log_scale = reader.optional_bool("log_scale", true);
    config.sweep.validator_counts =
        reader.optional_int_list("n_values", {5, 10, 50, 100});
    config.sweep.online_cost = config.params.online_cost;

    reader.finish();

    for (const std::string& problem : config.params.validate()) {
        reader.fail(0, problem);
    }
    if (!(config.profile.proposer_honest_prob >= 0.0 &&
          config.profile.proposer_honest_prob <= 1.0)) {
        reader.fail(reader.line_of("pi_p"), "pi_p must lie in [0,1]");
    }
    if (!(config.profile.validator_online_prob >= 0.0 &&
          config.profile.validator_online_prob <= 1.0)) {
        reader.fail(reader.line_of("pi_v"), "pi_v must lie in [0,1]");
    }
    if (!config.sweep.valid()) {
        reader.fail(0, "invalid sweep settings");
    }
    return config;
}

Config load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) {
        throw ConfigError(path, 0, "cannot open file");
    }
    std::stringstream buffer;
    buffer << file.rdbuf();
    return parse_config(buffer.str(), path);
}

std::string serialize_config(const Config& config) {
    std::ostringstream out;
    const auto put = [&](const char* key, const std::string& value) {
        out << key << " = " << value << '\n';
    };
    put("f_v", format_double(config.params.validator_fee));
    put("c_m", format_double(config.params.online_cost));
    put("r_v", format_double(config.params.fraud_reward_pool));
    put("c_off", format_double(config.params.test_penalty));
    put("c_fail", format_double(config.params.failure_penalty));
    put("f_p", format_double(config.params.proposer_fee));
    put("c_fraud", format_double(config.params.fraud_penalty));
    put("r_fraud", format_double(config.params.fraud_profit));
    put("n", std::to_string(config.params.validator_count));
    put("pi_a", format_double(config.params.test_probability));
    put("d_v", format_double(config.params.deposit));
    put("pi_p", format_double(config.profile.proposer_honest_prob));
    put("pi_v", format_double(config.profile.validator_online_prob));
    put("epochs", std::to_string(config.epochs));
    put("seed", std::to_string(config.seed));
    put("model", to_string(config.model));
    put("reward_split", to_string(config.reward_split));
    put("c_off_min", format_double(config.sweep.penalty_min));
    put("c_off_max", format_double(config.sweep.penalty_max));
    put("points", std::to_string(config.sweep.points));
    put("log_scale", config.sweep.log_scale ? "true" : "false");
    std::string n_values;
    for (std::size_t i = 0; i < config.sweep.validator_counts.size(); ++i) {
        if (i) n_values += ",";
        n_values += std::to_string(config.sweep.validator_counts[i]);
    }
    put("n_values", n_values);
    return out.str();
}

}  // namespace rat
