#pragma once

#include <vector>

#include "kljnlab/exec.hpp"
#include "kljnlab/harness/config.hpp"
#include "kljnlab/harness/output.hpp"

namespace kljnlab::harness {

// Seed layout under master_seed:
//   simulate-*   derive_seed(master, ScenarioBlock, 0)
//   amplify      derive_seed(master, ScenarioBlock, 1)
//   attack run r derive_seed(master, KeyRun, r)
//   ber-curve j  derive_seed(master, BerTrial, j) for the j-th sample count
// Within a block, bit i uses the per-bit counter scheme of the kernels.

/// Tables "kljn_exchanges" (one row per bit) and "kljn_summary".
std::vector<Table> simulate_kljn(const ScenarioConfig& config, const Execution& exec = {});

/// Tables "thermod_transmissions" (one row per bit) and "thermod_summary".
std::vector<Table> simulate_thermod(const ScenarioConfig& config, const Execution& exec = {});

/// Table "attack_runs": `trials` independent key attacks of n_bits each on
/// the configured system.
Table attack(const ScenarioConfig& config, const Execution& exec = {});

/// Table "amplify_rounds": raw key from n_bits exchanges (optionally with
/// non-secure bits discarded) and Eve's guesses, amplified pa_iterations
/// times, one row per round including round 0.
Table amplify(const ScenarioConfig& config, const Execution& exec = {});

/// Table "ber_curve" with columns samples_per_bit, ber_analytic,
/// ber_monte_carlo, trials, variance_ratio.
Table ber_curve(const ScenarioConfig& config, const Execution& exec = {});

/// Table "power_report": both systems, k in {0, pa_iterations}, secure
/// fraction in {1, 0.5}.
Table power_report(const ScenarioConfig& config);

/// Everything for the configured system except the BER curve: records,
/// summaries, attack runs, amplification rounds and the power report.
std::vector<Table> run_scenario(const ScenarioConfig& config, const Execution& exec = {});

}  // namespace kljnlab::harness
