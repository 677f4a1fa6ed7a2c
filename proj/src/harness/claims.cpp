#include "kljnlab/harness/claims.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "kljnlab/adversary.hpp"
#include "kljnlab/distill.hpp"
#include "kljnlab/errstat.hpp"
#include "kljnlab/harness/config.hpp"
#include "kljnlab/harness/scenario.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/power.hpp"
#include "kljnlab/stats.hpp"
#include "kljnlab/thermod.hpp"

namespace kljnlab::harness {

void ClaimResult::evaluate() {
    switch (comparison) {
        case Comparison::Within: pass = std::abs(measured - expected) <= tolerance; break;
        case Comparison::AtMost: pass = measured <= expected + tolerance; break;
        case Comparison::AtLeast: pass = measured >= expected - tolerance; break;
    }
    if (std::isnan(measured)) {
        pass = false;
    }
}

std::string to_string(Comparison c) {
    switch (c) {
        case Comparison::Within: return "within";
        case Comparison::AtMost: return "at_most";
        case Comparison::AtLeast: return "at_least";
    }
    return "?";
}

bool GroupReport::pass() const noexcept {
    return within_budget && std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
}

const std::vector<ClaimGroup>& claim_groups() {
    using std::chrono::seconds;
    static const std::vector<ClaimGroup> groups{
        {"mixed_indistinguishable", "HL and LH exchanges give indistinguishable wire statistics", seconds(30)},
        {"attack75", "passive KLJN eavesdropper is right on 75% of bits, certain on half", seconds(60)},
        {"leakage256", "a 256-bit raw key leaks about 192 correctly guessed bits", seconds(60)},
        {"pa_convergence", "four XOR rounds take p = 0.75 to ~0.5 with a 16x length ratio", seconds(1)},
        {"pa_monte_carlo", "simulated XOR amplification of a 75%-correct Eve lands at chance", seconds(10)},
        {"power_formula", "TherMod power adds amplifier and processing on top of KLJN", seconds(1)},
        {"ber_behavior", "legitimate BER decays exponentially with samples per bit", seconds(300)},
        {"thermod_insecurity", "a TherMod eavesdropper decodes as well as the receiver", seconds(60)},
        {"determinism", "same seed gives byte-identical output regardless of threads", seconds(30)},
    };
    return groups;
}

namespace {

using Emit = std::function<void(std::string, std::string, double, double, double, Comparison)>;

ResistorPair default_pair() { return {1.0e3, 1.0e4}; }

NoiseSpec default_spec(std::size_t samples = 10'000) {
    NoiseSpec s;
    s.samples_per_bit = samples;
    return s;
}

void mixed_indistinguishable(const ClaimsOptions& o, const Emit& emit) {
    const auto pair = default_pair();
    const auto spec = default_spec();
    constexpr std::size_t n = 1000;
    std::vector<double> hl_u(n), hl_i(n), lh_u(n), lh_i(n);
    const Seed hl_seed = derive_seed(o.seed, Stream::ScenarioBlock, 101);
    const Seed lh_seed = derive_seed(o.seed, Stream::ScenarioBlock, 102);
    parallel_for(n, o.exec, [&](std::size_t i) {
        const auto hl = run_bit_exchange(pair, spec, {Resistor::High, Resistor::Low}, exchange_seed(hl_seed, i));
        const auto lh = run_bit_exchange(pair, spec, {Resistor::Low, Resistor::High}, exchange_seed(lh_seed, i));
        hl_u[i] = hl.u_w_mean_square;
        hl_i[i] = hl.i_w_mean_square;
        lh_u[i] = lh.u_w_mean_square;
        lh_i[i] = lh.i_w_mean_square;
    });
    // Five-sigma two-sided level.
    const double alpha = stats::two_sided_tail(5.0);
    const double ks_crit = stats::ks_critical(n, n, alpha);
    emit("u_w_welch_z", "mean of U_w mean-square equal for HL and LH (|z| <= 5)", stats::welch_z(hl_u, lh_u), 0.0,
         5.0, Comparison::Within);
    emit("i_w_welch_z", "mean of I_w mean-square equal for HL and LH (|z| <= 5)", stats::welch_z(hl_i, lh_i), 0.0,
         5.0, Comparison::Within);
    emit("u_w_ks", "U_w mean-square distributions equal for HL and LH (KS at 5 sigma)",
         stats::ks_statistic(hl_u, lh_u), 0.0, ks_crit, Comparison::Within);
    emit("i_w_ks", "I_w mean-square distributions equal for HL and LH (KS at 5 sigma)",
         stats::ks_statistic(hl_i, lh_i), 0.0, ks_crit, Comparison::Within);
}

void attack75(const ClaimsOptions& o, const Emit& emit) {
    const auto s = run_kljn_key_attack(10'000, default_pair(), default_spec(), derive_seed(o.seed, Stream::KeyRun, 0),
                                       o.exec);
    emit("accuracy", "Eve accuracy over 10^4 bits in [0.73, 0.77]", s.accuracy, 0.75, 0.02, Comparison::Within);
    emit("certain_fraction", "fraction of LL/HH bits in [0.475, 0.525]", s.certain_fraction, 0.5, 0.025,
         Comparison::Within);
}

void leakage256(const ClaimsOptions& o, const Emit& emit) {
    constexpr std::size_t runs = 100;
    double total = 0.0;
    for (std::size_t r = 0; r < runs; ++r) {
        const auto s = run_kljn_key_attack(256, default_pair(), default_spec(),
                                           derive_seed(o.seed, Stream::KeyRun, 1000 + r), o.exec);
        total += static_cast<double>(s.bits_correct);
    }
    emit("mean_correct_bits", "mean correctly guessed bits of a 256-bit key over 100 keys is 192 +/- 12",
         total / runs, 192.0, 12.0, Comparison::Within);
}

void pa_convergence(const ClaimsOptions&, const Emit& emit) {
    double p = 0.75;
    ExactProbability exact(3, 4);
    for (int i = 0; i < 4; ++i) {
        p = eve_prob_after_iteration(p);
        exact = eve_prob_after_iteration(exact);
    }
    const double exact_value = exact.convert_to<double>();
    emit("eve_prob_k4", "p = 0.75 after 4 rounds equals 65537/131072 = 0.5000076294", p, exact_value, 1e-12,
         Comparison::Within);
    emit("exact_rational_k4", "exact recursion gives 65537/131072",
         exact == ExactProbability(65537, 131072) ? 1.0 : 0.0, 1.0, 0.0, Comparison::Within);
    emit("leakage_k4", "leakage after 4 rounds is at most 1e-8 bits", leakage_bits(p), 0.0, 1e-8,
         Comparison::Within);
    KeyMaterial raw;
    raw.bits.assign(4096, 0);
    raw.eve_correct_prob = 0.75;
    const auto final_key = amplify(raw, 4);
    emit("length_ratio_k4", "raw-to-final length ratio after 4 rounds is 16",
         static_cast<double>(raw.size()) / static_cast<double>(final_key.size()), 16.0, 0.0, Comparison::Within);
}

void pa_monte_carlo(const ClaimsOptions& o, const Emit& emit) {
    constexpr std::size_t n = std::size_t{1} << 16;
    const auto fractions = simulate_eve_agreement(n, 0.75, 4, derive_seed(o.seed, Stream::ScenarioBlock, 201));
    const double sigma = std::sqrt(0.25 / 4096.0);
    emit("agreement_k4", "Eve agreement after 4 rounds of 2^16 bits is within 3 sigma of 0.5", fractions.back(), 0.5,
         3.0 * sigma, Comparison::Within);
}

void power_formula(const ClaimsOptions&, const Emit& emit) {
    const auto b = default_budget();
    const double residual = p_thermod(b) - (p_kljn(b) + b.amp_watts + b.proc_watts + b.antenna_watts);
    emit("formula_residual", "p_thermod - (p_kljn + amp + proc + antenna) is exactly 0", residual, 0.0, 0.0,
         Comparison::Within);

    // Sweep positive amplifier/processing powers (one of them may be zero).
    std::size_t violations = 0;
    for (const double amp : {0.0, 1e-9, 0.01, 1.0, 50.0}) {
        for (const double proc : {0.0, 1e-9, 0.2, 3.0}) {
            if (amp == 0.0 && proc == 0.0) continue;
            PowerBudget v = b;
            v.amp_watts = amp;
            v.proc_watts = proc;
            violations += p_thermod(v) > p_kljn(v) ? 0 : 1;
        }
    }
    emit("strictly_greater", "p_thermod > p_kljn whenever amp or proc is positive (violations)",
         static_cast<double>(violations), 0.0, 0.0, Comparison::Within);
    emit("cycle_multiplier_k4", "cycle multiplier at k = 4, all bits secure, is 16",
         energy_per_final_bit(b, 4, 1.0, SystemKind::Kljn).cycle_multiplier, 16.0, 0.0, Comparison::Within);
    emit("cycle_multiplier_k4_half", "cycle multiplier at k = 4, half the bits secure, is 32",
         energy_per_final_bit(b, 4, 0.5, SystemKind::Kljn).cycle_multiplier, 32.0, 0.0, Comparison::Within);
}

void ber_behavior(const ClaimsOptions& o, const Emit& emit) {
    constexpr double ratio = 10.0;
    std::size_t violations = 0;
    double prev = analytic_ber(ratio, 1);
    for (std::size_t n = 2; n <= 1000; ++n) {
        const double cur = analytic_ber(ratio, n);
        violations += cur < prev ? 0 : 1;
        prev = cur;
    }
    emit("monotone_n", "analytic BER strictly decreasing for N = 1..1000 at ratio 10 (violations)",
         static_cast<double>(violations), 0.0, 0.0, Comparison::Within);

    std::vector<double> xs{50, 100, 200, 400};
    std::vector<double> ys;
    for (const double n : xs) {
        ys.push_back(std::log(analytic_ber(ratio, static_cast<std::size_t>(n))));
    }
    const auto fit = fit_line(xs, ys);
    emit("log_affine_r2", "log BER vs N over {50,100,200,400} fits a line with R^2 > 0.99", fit.r_squared, 0.99, 0.0,
         Comparison::AtLeast);

    const std::size_t n_mc = required_samples(ratio, 1e-3);
    BerParams params;
    params.system = SystemKind::Thermod;
    params.pair = default_pair();
    params.spec = default_spec();
    constexpr std::size_t trials = 1'000'000;
    const auto point = monte_carlo_ber(params, n_mc, trials, derive_seed(o.seed, Stream::BerTrial, 0), o.exec);
    const double sigma = stats::proportion_sigma(point.ber_analytic, trials);
    emit("mc_agreement", "Monte Carlo BER at ~1e-3 (10^6 trials) within 3 sigma of analytic", *point.ber_monte_carlo,
         point.ber_analytic, 3.0 * sigma, Comparison::Within);

    const std::size_t n6 = required_samples(ratio, 1e-6);
    const bool consistent = analytic_ber(ratio, n6) <= 1e-6 && (n6 == 1 || analytic_ber(ratio, n6 - 1) > 1e-6);
    emit("required_samples_1e-6", "required_samples(10, 1e-6) is the smallest N reaching 1e-6",
         consistent ? 1.0 : 0.0, 1.0, 0.0, Comparison::Within);
}

void thermod_insecurity(const ClaimsOptions& o, const Emit& emit) {
    constexpr std::size_t bits = 10'000;
    const AmplifierModel amp;
    const ChannelModel identity;
    auto run = [&](double alpha, std::size_t samples, std::uint64_t tag) {
        return run_thermod_intercept(bits, {1.0e3, alpha * 1.0e3}, default_spec(samples), amp, identity,
                                     derive_seed(o.seed, Stream::KeyRun, 2000 + tag), o.exec);
    };
    const auto base = run(10.0, 100, 0);
    emit("eve_accuracy", "Eve accuracy > 0.99 on an identical path (alpha 10, N 100)", base.eve.accuracy, 0.99, 0.0,
         Comparison::AtLeast);
    const double sd = std::hypot(stats::proportion_sigma(base.eve.accuracy, bits),
                                 stats::proportion_sigma(base.receiver.accuracy, bits));
    emit("eve_receiver_parity", "|Eve accuracy - receiver accuracy| within 3 sigma",
         std::abs(base.eve.accuracy - base.receiver.accuracy), 0.0, 3.0 * sd, Comparison::Within);

    auto non_decreasing = [&](const std::string& id, const std::string& what, const InterceptReport& a,
                              const InterceptReport& b) {
        const double slack = 2.0 * std::hypot(stats::proportion_sigma(a.eve.accuracy, bits),
                                              stats::proportion_sigma(b.eve.accuracy, bits));
        emit(id, what, a.eve.accuracy - b.eve.accuracy, 0.0, slack, Comparison::AtMost);
    };
    const auto a15 = run(1.5, 100, 1);
    const auto a3 = run(3.0, 100, 2);
    non_decreasing("alpha_1.5_to_3", "Eve accuracy does not drop from alpha 1.5 to 3 (2 sigma slack)", a15, a3);
    non_decreasing("alpha_3_to_10", "Eve accuracy does not drop from alpha 3 to 10 (2 sigma slack)", a3, base);
    const auto n10 = run(10.0, 10, 3);
    non_decreasing("samples_10_to_100", "Eve accuracy does not drop from N 10 to 100 (2 sigma slack)", n10, base);
}

std::vector<std::string> render_all(const std::vector<Table>& tables) {
    std::vector<std::string> out;
    for (const auto& t : tables) {
        out.push_back(to_csv(t));
        out.push_back(to_json(t).dump(2));
    }
    return out;
}

void determinism(const ClaimsOptions& o, const Emit& emit) {
    ScenarioConfig kljn;
    kljn.system = SystemKind::Kljn;
    kljn.master_seed = o.seed;
    kljn.n_bits = 200;
    kljn.trials = 3;
    kljn.noise.samples_per_bit = 2000;
    kljn.ber_samples = {100, 400};

    ScenarioConfig thermod = kljn;
    thermod.system = SystemKind::Thermod;
    thermod.noise.samples_per_bit = 100;
    thermod.amp.artifact_gain_ripple = 0.1;
    thermod.amp.added_noise_variance = 1e-15;
    thermod.channel.environment_noise_variance = 1e-14;
    thermod.channel.gain_to_eavesdropper = 0.5;
    thermod.channel.delay_taps = {{3, 0.4}, {7, 0.2}};

    std::size_t mismatches = 0;
    std::size_t compared = 0;
    for (const auto& cfg : {kljn, thermod}) {
        auto render = [&](const Execution& exec) {
            auto tables = run_scenario(cfg, exec);
            tables.push_back(ber_curve(cfg, exec));
            return render_all(tables);
        };
        const auto serial = render(Execution::serial());
        const auto again = render(Execution::serial());
        const auto threaded = render(Execution::omp(4));
        for (std::size_t i = 0; i < serial.size(); ++i) {
            mismatches += serial[i] == again[i] ? 0 : 1;
            mismatches += serial[i] == threaded[i] ? 0 : 1;
            compared += 2;
        }
    }
    emit("byte_identical", "re-runs with 1 and 4 threads produce byte-identical outputs (mismatching files)",
         static_cast<double>(mismatches), 0.0, 0.0, Comparison::Within);
    emit("outputs_compared", "rendered outputs compared (at least one per table)", static_cast<double>(compared),
         1.0, 0.0, Comparison::AtLeast);
}

using Runner = void (*)(const ClaimsOptions&, const Emit&);

Runner runner_for(const std::string& id) {
    if (id == "mixed_indistinguishable") return mixed_indistinguishable;
    if (id == "attack75") return attack75;
    if (id == "leakage256") return leakage256;
    if (id == "pa_convergence") return pa_convergence;
    if (id == "pa_monte_carlo") return pa_monte_carlo;
    if (id == "power_formula") return power_formula;
    if (id == "ber_behavior") return ber_behavior;
    if (id == "thermod_insecurity") return thermod_insecurity;
    if (id == "determinism") return determinism;
    throw std::logic_error("no runner for claim group " + id);
}

}  // namespace

std::vector<GroupReport> claims_check(const ClaimsOptions& options) {
    std::vector<GroupReport> reports;
    bool matched_any = options.only.empty();
    for (const auto& group : claim_groups()) {
        // Selection by group id, or by full claim id "<group>.<check>".
        std::vector<std::string> wanted_claims;
        bool run_group = options.only.empty();
        for (const auto& sel : options.only) {
            if (sel == group.id) {
                run_group = true;
            } else if (sel.rfind(group.id + ".", 0) == 0) {
                run_group = true;
                wanted_claims.push_back(sel);
            }
        }
        if (!run_group) continue;

        GroupReport report;
        report.group = group;
        const bool whole_group =
            options.only.empty() || std::find(options.only.begin(), options.only.end(), group.id) != options.only.end();
        Emit emit = [&](std::string id, std::string anchor, double measured, double expected, double tolerance,
                        Comparison cmp) {
            ClaimResult r{group.id + "." + id, std::move(anchor), measured, expected,
                          options.tolerance_override.value_or(tolerance), cmp, false};
            if (!whole_group && std::find(wanted_claims.begin(), wanted_claims.end(), r.claim_id) ==
                                    wanted_claims.end()) {
                return;
            }
            r.evaluate();
            report.results.push_back(std::move(r));
        };
        const auto start = std::chrono::steady_clock::now();
        runner_for(group.id)(options, emit);
        report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.within_budget = report.seconds <= static_cast<double>(group.budget.count());
        if (!report.results.empty()) {
            matched_any = true;
            reports.push_back(std::move(report));
        }
    }
    if (!matched_any) {
        throw std::invalid_argument("no claim group or claim id matches the selection");
    }
    return reports;
}

Table claims_table(const std::vector<GroupReport>& reports) {
    Table t{"claims", {"claim_id", "anchor", "measured", "expected", "tolerance", "comparison", "pass"}, {}};
    for (const auto& rep : reports) {
        for (const auto& r : rep.results) {
            t.add({r.claim_id, r.anchor, r.measured, r.expected, r.tolerance, to_string(r.comparison), r.pass});
        }
    }
    return t;
}

std::size_t failed_count(const std::vector<GroupReport>& reports) {
    std::size_t failed = 0;
    for (const auto& rep : reports) {
        for (const auto& r : rep.results) {
            failed += r.pass ? 0 : 1;
        }
        failed += rep.within_budget ? 0 : 1;
    }
    return failed;
}

}  // namespace kljnlab::harness
