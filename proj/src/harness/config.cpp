#include "kljnlab/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace kljnlab::harness {

using nlohmann::json;

namespace {

std::string join_issues(const std::vector<ConfigIssue>& issues) {
    std::ostringstream os;
    os << "invalid configuration:";
    for (const auto& issue : issues) {
        os << "\n  " << issue.field << ": " << issue.message;
    }
    return os.str();
}

// Reads one JSON object, recording every problem instead of stopping at the
// first one. Keys never read are reported as unknown by finish().
class Section {
public:
    Section(const json& node, std::string path, std::vector<ConfigIssue>& issues)
        : node_(node), path_(std::move(path)), issues_(issues) {
        if (!node_.is_object()) {
            issues_.push_back({path_.empty() ? "<root>" : path_, "must be an object"});
            ok_ = false;
        }
    }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key) {
        known_.insert(key);
        if (!ok_) return nullptr;
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void number(const std::string& key, double& out) {
        if (const auto* v = find(key)) {
            if (v->is_number()) {
                out = v->get<double>();
            } else {
                issues_.push_back({field(key), "must be a number"});
            }
        }
    }

    void count(const std::string& key, std::size_t& out) {
        if (const auto* v = find(key)) {
            if (v->is_number_unsigned() || (v->is_number_integer() && v->get<long long>() >= 0)) {
                out = v->get<std::size_t>();
            } else {
                issues_.push_back({field(key), "must be a non-negative integer"});
            }
        }
    }

    void flag(const std::string& key, bool& out) {
        if (const auto* v = find(key)) {
            if (v->is_boolean()) {
                out = v->get<bool>();
            } else {
                issues_.push_back({field(key), "must be true or false"});
            }
        }
    }

    void finish() {
        if (!ok_) return;
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            if (!known_.count(it.key())) {
                issues_.push_back({field(it.key()), "unknown key"});
            }
        }
    }

private:
    const json& node_;
    std::string path_;
    std::vector<ConfigIssue>& issues_;
    std::set<std::string> known_;
    bool ok_ = true;
};

template <class Check>
void collect(std::vector<ConfigIssue>& issues, const std::string& field, Check&& check) {
    try {
        check();
    } catch (const std::exception& e) {
        std::string msg = e.what();
        // Component validators prefix their messages with the field path.
        const auto colon = msg.find(" must ");
        const auto space = msg.find(' ');
        if (colon != std::string::npos && space == colon) {
            issues.push_back({msg.substr(0, colon), msg.substr(colon + 1)});
        } else {
            issues.push_back({field, msg});
        }
    }
}

}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : std::invalid_argument(join_issues(issues)), issues_(std::move(issues)) {}

ConfigError::ConfigError(std::string field, std::string message)
    : ConfigError(std::vector<ConfigIssue>{{std::move(field), std::move(message)}}) {}

Seed ScenarioConfig::seed() const {
    if (!master_seed) {
        throw ConfigError("master_seed", "is required (set it in the config or pass --seed)");
    }
    return *master_seed;
}

std::string to_string(SystemKind system) { return system == SystemKind::Kljn ? "kljn" : "thermod"; }

SystemKind parse_system(const std::string& name) {
    if (name == "kljn") return SystemKind::Kljn;
    if (name == "thermod") return SystemKind::Thermod;
    throw ConfigError("system", "must be \"kljn\" or \"thermod\", got \"" + name + "\"");
}

ScenarioConfig parse_config(const json& doc) {
    ScenarioConfig cfg;
    std::vector<ConfigIssue> issues;
    Section root(doc, "", issues);

    if (const auto* v = root.find("system")) {
        if (v->is_string() && (*v == "kljn" || *v == "thermod")) {
            cfg.system = parse_system(v->get<std::string>());
        } else {
            issues.push_back({"system", "must be \"kljn\" or \"thermod\""});
        }
    }
    if (const auto* v = root.find("master_seed")) {
        if (v->is_number_unsigned() || (v->is_number_integer() && v->get<long long>() >= 0)) {
            cfg.master_seed = v->get<std::uint64_t>();
        } else {
            issues.push_back({"master_seed", "must be an unsigned 64-bit integer"});
        }
    }
    root.count("n_bits", cfg.n_bits);
    root.count("trials", cfg.trials);
    root.count("pa_iterations", cfg.pa_iterations);
    root.flag("discard_non_secure", cfg.discard_non_secure);

    if (const auto* v = root.find("resistors")) {
        Section s(*v, "resistors", issues);
        s.number("r_low", cfg.pair.r_low);
        s.number("r_high", cfg.pair.r_high);
        s.finish();
    }
    if (const auto* v = root.find("noise")) {
        Section s(*v, "noise", issues);
        s.number("temperature", cfg.noise.temperature);
        s.number("bandwidth", cfg.noise.bandwidth);
        s.number("sampling_rate", cfg.noise.sampling_rate);
        s.count("samples_per_bit", cfg.noise.samples_per_bit);
        s.flag("normalized", cfg.noise.normalized);
        s.finish();
    }
    bool amp_power_given = false;
    if (const auto* v = root.find("amplifier")) {
        Section s(*v, "amplifier", issues);
        s.number("gain", cfg.amp.gain);
        s.number("added_noise_variance", cfg.amp.added_noise_variance);
        s.number("artifact_gain_ripple", cfg.amp.artifact_gain_ripple);
        amp_power_given = s.find("power_draw") != nullptr;
        s.number("power_draw", cfg.amp.power_draw);
        s.finish();
    }
    if (const auto* v = root.find("channel")) {
        Section s(*v, "channel", issues);
        s.number("gain_to_receiver", cfg.channel.gain_to_receiver);
        s.number("gain_to_eavesdropper", cfg.channel.gain_to_eavesdropper);
        s.number("environment_noise_variance", cfg.channel.environment_noise_variance);
        if (const auto* taps = s.find("delay_taps")) {
            if (!taps->is_array()) {
                issues.push_back({"channel.delay_taps", "must be an array"});
            } else {
                for (std::size_t i = 0; i < taps->size(); ++i) {
                    DelayTap tap;
                    Section t((*taps)[i], "channel.delay_taps[" + std::to_string(i) + "]", issues);
                    t.count("delay", tap.delay);
                    t.number("amplitude", tap.amplitude);
                    t.finish();
                    cfg.channel.delay_taps.push_back(tap);
                }
            }
        }
        s.finish();
    }
    if (const auto* v = root.find("ber_curve")) {
        Section s(*v, "ber_curve", issues);
        if (const auto* list = s.find("samples_per_bit")) {
            cfg.ber_samples.clear();
            if (!list->is_array()) {
                issues.push_back({"ber_curve.samples_per_bit", "must be an array of positive integers"});
            } else {
                for (const auto& n : *list) {
                    if (n.is_number_integer() && n.get<long long>() > 0) {
                        cfg.ber_samples.push_back(n.get<std::size_t>());
                    } else {
                        issues.push_back({"ber_curve.samples_per_bit", "must be an array of positive integers"});
                        break;
                    }
                }
            }
        }
        s.finish();
    }
    bool budget_amp_given = false;
    if (const auto* v = root.find("power")) {
        Section s(*v, "power", issues);
        if (const auto* comps = s.find("kljn_components")) {
            cfg.power.kljn_components.clear();
            if (!comps->is_array()) {
                issues.push_back({"power.kljn_components", "must be an array"});
            } else {
                for (std::size_t i = 0; i < comps->size(); ++i) {
                    ComponentPower c;
                    Section cs((*comps)[i], "power.kljn_components[" + std::to_string(i) + "]", issues);
                    if (const auto* name = cs.find("name")) {
                        if (name->is_string()) {
                            c.name = name->get<std::string>();
                        } else {
                            issues.push_back({cs.field("name"), "must be a string"});
                        }
                    }
                    cs.number("watts", c.watts);
                    cs.finish();
                    cfg.power.kljn_components.push_back(std::move(c));
                }
            }
        }
        budget_amp_given = s.find("amp_watts") != nullptr;
        s.number("amp_watts", cfg.power.amp_watts);
        s.number("proc_watts", cfg.power.proc_watts);
        s.number("antenna_watts", cfg.power.antenna_watts);
        s.number("bit_period", cfg.power.bit_period);
        s.finish();
    }
    root.finish();

    // The amplifier's draw and the budget's amplifier line are one quantity.
    if (amp_power_given && budget_amp_given && cfg.amp.power_draw != cfg.power.amp_watts) {
        issues.push_back({"amplifier.power_draw", "disagrees with power.amp_watts"});
    } else if (amp_power_given) {
        cfg.power.amp_watts = cfg.amp.power_draw;
    } else {
        cfg.amp.power_draw = cfg.power.amp_watts;
    }

    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
    return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("--config", "cannot open " + path.string());
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw ConfigError("--config", std::string("not valid JSON: ") + e.what());
    }
    return parse_config(doc);
}

std::vector<ConfigIssue> validate(const ScenarioConfig& config) {
    std::vector<ConfigIssue> issues;
    collect(issues, "resistors", [&] { config.pair.validate(); });
    collect(issues, "noise", [&] { config.noise.validate(); });
    collect(issues, "amplifier", [&] { config.amp.validate(); });
    collect(issues, "channel", [&] { config.channel.validate(); });
    collect(issues, "power", [&] { config.power.validate(); });
    if (config.n_bits == 0) {
        issues.push_back({"n_bits", "must be >= 1"});
    }
    if (config.trials == 0) {
        issues.push_back({"trials", "must be >= 1"});
    }
    if (config.pa_iterations >= 63) {
        issues.push_back({"pa_iterations", "must be < 63"});
    }
    if (config.ber_samples.empty()) {
        issues.push_back({"ber_curve.samples_per_bit", "must not be empty"});
    }
    if (!config.master_seed) {
        issues.push_back({"master_seed", "is required (set it in the config or pass --seed)"});
    }
    return issues;
}

void require_valid(const ScenarioConfig& config) {
    auto issues = validate(config);
    if (!issues.empty()) {
        throw ConfigError(std::move(issues));
    }
}

nlohmann::ordered_json to_json(const ScenarioConfig& c) {
    nlohmann::ordered_json j;
    j["system"] = to_string(c.system);
    if (c.master_seed) {
        j["master_seed"] = *c.master_seed;
    }
    j["n_bits"] = c.n_bits;
    j["trials"] = c.trials;
    j["pa_iterations"] = c.pa_iterations;
    j["discard_non_secure"] = c.discard_non_secure;
    j["resistors"] = {{"r_low", c.pair.r_low}, {"r_high", c.pair.r_high}};
    j["noise"] = {{"temperature", c.noise.temperature},
                  {"bandwidth", c.noise.bandwidth},
                  {"sampling_rate", c.noise.sampling_rate},
                  {"samples_per_bit", c.noise.samples_per_bit},
                  {"normalized", c.noise.normalized}};
    j["amplifier"] = {{"gain", c.amp.gain},
                      {"added_noise_variance", c.amp.added_noise_variance},
                      {"artifact_gain_ripple", c.amp.artifact_gain_ripple}};
    // The amplifier's draw is written once, as power.amp_watts.
    auto taps = nlohmann::ordered_json::array();
    for (const auto& t : c.channel.delay_taps) {
        taps.push_back({{"delay", t.delay}, {"amplitude", t.amplitude}});
    }
    j["channel"] = {{"gain_to_receiver", c.channel.gain_to_receiver},
                    {"gain_to_eavesdropper", c.channel.gain_to_eavesdropper},
                    {"environment_noise_variance", c.channel.environment_noise_variance},
                    {"delay_taps", taps}};
    j["ber_curve"] = {{"samples_per_bit", c.ber_samples}};
    auto comps = nlohmann::ordered_json::array();
    for (const auto& comp : c.power.kljn_components) {
        comps.push_back({{"name", comp.name}, {"watts", comp.watts}});
    }
    j["power"] = {{"kljn_components", comps},
                  {"amp_watts", c.power.amp_watts},
                  {"proc_watts", c.power.proc_watts},
                  {"antenna_watts", c.power.antenna_watts},
                  {"bit_period", c.power.bit_period}};
    return j;
}

}  // namespace kljnlab::harness
