#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kljnlab/errstat.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/noise.hpp"
#include "kljnlab/power.hpp"
#include "kljnlab/thermod.hpp"

namespace kljnlab::harness {

/// One scenario: which system, its physical parameters, run sizes, power
/// budget and the master seed every random quantity derives from.
struct ScenarioConfig {
    SystemKind system = SystemKind::Kljn;
    ResistorPair pair;
    NoiseSpec noise;
    AmplifierModel amp;
    ChannelModel channel;
    std::size_t n_bits = 256;
    std::size_t trials = 100;
    std::size_t pa_iterations = 4;
    bool discard_non_secure = false;
    std::vector<std::size_t> ber_samples{10, 30, 100, 300, 1000};
    PowerBudget power = default_budget();
    std::optional<Seed> master_seed;

    Seed seed() const;
};

struct ConfigIssue {
    std::string field;  // dotted path, e.g. "noise.bandwidth"
    std::string message;
};

/// Thrown for any invalid configuration; carries every problem found.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(std::vector<ConfigIssue> issues);
    ConfigError(std::string field, std::string message);
    const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

private:
    std::vector<ConfigIssue> issues_;
};

/// Parses the nested JSON document. Unknown keys and wrongly typed values
/// are errors. Missing keys keep their defaults.
ScenarioConfig parse_config(const nlohmann::json& doc);

ScenarioConfig load_config(const std::filesystem::path& path);

/// Every invariant violation in the config, including a missing seed.
std::vector<ConfigIssue> validate(const ScenarioConfig& config);

/// Throws ConfigError when validate() is non-empty.
void require_valid(const ScenarioConfig& config);

nlohmann::ordered_json to_json(const ScenarioConfig& config);

std::string to_string(SystemKind system);
SystemKind parse_system(const std::string& name);

}  // namespace kljnlab::harness
