// kljnlab command-line front end.
//
//   kljnlab <subcommand> [--config PATH] [--seed U64] [--out DIR]
//           [--trials N] [--format csv|json] [--append] [--threads N]
//
// Exit status: 0 on success, 2 on an invalid configuration, and for
// claims-check the number of failed claims (capped at 125).

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kljnlab/exec.hpp"
#include "kljnlab/harness/claims.hpp"
#include "kljnlab/harness/config.hpp"
#include "kljnlab/harness/output.hpp"
#include "kljnlab/harness/scenario.hpp"

namespace fs = std::filesystem;
using namespace kljnlab;
using namespace kljnlab::harness;

namespace {

struct CommonOptions {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::optional<std::size_t> trials;
    std::string format = "csv";
    std::optional<std::string> system;
    bool append = false;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_system) {
    cmd->add_option("--config", o.config_path, "Scenario config (JSON)")->check(CLI::ExistingFile);
    cmd->add_option("--seed", o.seed, "Master seed (overrides the config)");
    cmd->add_option("--out", o.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--trials", o.trials, "Trials / key runs (overrides the config)")->check(CLI::PositiveNumber);
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd->add_flag("--append", o.append, "Append rows to existing output files");
    cmd->add_option("--threads", o.threads, "Worker threads (0 = runtime default, 1 = serial)")
        ->check(CLI::NonNegativeNumber);
    if (with_system) {
        cmd->add_option("--system", o.system, "Override the configured system")
            ->check(CLI::IsMember({"kljn", "thermod"}));
    }
}

Execution execution(const CommonOptions& o) {
    return o.threads == 1 ? Execution::serial() : Execution::omp(o.threads);
}

ScenarioConfig resolve(const CommonOptions& o) {
    ScenarioConfig cfg = o.config_path.empty() ? ScenarioConfig{} : load_config(o.config_path);
    if (o.seed) cfg.master_seed = *o.seed;
    if (o.trials) cfg.trials = *o.trials;
    if (o.system) cfg.system = parse_system(*o.system);
    require_valid(cfg);
    return cfg;
}

void write_all(const std::vector<Table>& tables, const CommonOptions& o) {
    const auto format = parse_format(o.format);
    for (const auto& t : tables) {
        const auto path = write_table(t, o.out_dir, format, o.append);
        std::cout << "wrote " << path.string() << " (" << t.rows.size() << " rows)\n";
    }
}

int run_claims(const CommonOptions& o, const std::vector<std::string>& only, std::optional<double> tolerance) {
    ClaimsOptions opts;
    if (o.seed) opts.seed = *o.seed;
    opts.exec = execution(o);
    opts.only = only;
    opts.tolerance_override = tolerance;

    const auto reports = claims_check(opts);
    for (const auto& rep : reports) {
        for (const auto& r : rep.results) {
            std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << std::left << std::setw(48) << r.claim_id
                      << " measured=" << format_double(r.measured) << " expected=" << format_double(r.expected)
                      << " " << to_string(r.comparison) << " tol=" << format_double(r.tolerance) << "\n";
        }
        std::cout << (rep.within_budget ? "[PASS] " : "[FAIL] ") << std::left << std::setw(48)
                  << (rep.group.id + ".runtime") << " " << std::fixed << std::setprecision(2) << rep.seconds
                  << " s (limit " << rep.group.budget.count() << " s)\n"
                  << std::defaultfloat;
    }
    write_all({claims_table(reports)}, o);
    const auto failed = failed_count(reports);
    std::cout << (failed == 0 ? "all claims pass" : std::to_string(failed) + " claim(s) failed") << "\n";
    return static_cast<int>(std::min<std::size_t>(failed, 125));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KLJN / TherMod key-exchange simulation laboratory"};
    app.require_subcommand(1);

    CommonOptions opts;
    auto* sim_kljn = app.add_subcommand("simulate-kljn", "Per-bit KLJN exchanges with decoding and Eve's view");
    auto* sim_thermod = app.add_subcommand("simulate-thermod", "Per-bit TherMod transmissions, receiver and Eve");
    auto* attack_cmd = app.add_subcommand("attack", "Repeated key attacks on the configured system");
    auto* amplify_cmd = app.add_subcommand("amplify", "XOR privacy amplification of a simulated raw key");
    auto* ber_cmd = app.add_subcommand("ber-curve", "Analytic and Monte Carlo BER against samples per bit");
    auto* power_cmd = app.add_subcommand("power-report", "Power and energy per final key bit");
    auto* claims_cmd = app.add_subcommand("claims-check", "Evaluate every reproducible claim");

    add_common(sim_kljn, opts, false);
    add_common(sim_thermod, opts, false);
    add_common(attack_cmd, opts, true);
    add_common(amplify_cmd, opts, true);
    add_common(ber_cmd, opts, true);
    add_common(power_cmd, opts, false);
    add_common(claims_cmd, opts, false);

    std::vector<std::string> only;
    std::optional<double> tolerance;
    bool list = false;
    claims_cmd->add_option("--claim", only, "Run only these claim groups or claim ids");
    claims_cmd->add_option("--tolerance", tolerance, "Replace every tolerance with this value");
    claims_cmd->add_flag("--list", list, "List claim groups and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (claims_cmd->parsed()) {
            if (list) {
                for (const auto& g : claim_groups()) {
                    std::cout << g.id << "  " << g.description << " (limit " << g.budget.count() << " s)\n";
                }
                return 0;
            }
            return run_claims(opts, only, tolerance);
        }
        if (sim_kljn->parsed()) {
            opts.system = "kljn";
            write_all(simulate_kljn(resolve(opts), execution(opts)), opts);
        } else if (sim_thermod->parsed()) {
            opts.system = "thermod";
            write_all(simulate_thermod(resolve(opts), execution(opts)), opts);
        } else if (attack_cmd->parsed()) {
            write_all({attack(resolve(opts), execution(opts))}, opts);
        } else if (amplify_cmd->parsed()) {
            write_all({amplify(resolve(opts), execution(opts))}, opts);
        } else if (ber_cmd->parsed()) {
            write_all({ber_curve(resolve(opts), execution(opts))}, opts);
        } else if (power_cmd->parsed()) {
            write_all({power_report(resolve(opts))}, opts);
        }
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
