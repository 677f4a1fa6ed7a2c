#include "kljnlab/harness/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "kljnlab/adversary.hpp"
#include "kljnlab/distill.hpp"
#include "kljnlab/errstat.hpp"
#include "kljnlab/power.hpp"

namespace kljnlab::harness {

namespace {

using u64 = std::uint64_t;

std::string resistor_label(Resistor r) { return r == Resistor::High ? "H" : "L"; }

std::string optional_label(const std::optional<Resistor>& r) { return r ? resistor_label(*r) : "-"; }

struct KljnRun {
    std::vector<ExchangeRecord> records;
    std::vector<KljnEveObservation> eve;
    std::size_t decode_ok = 0;
};

bool decoded_correctly(const ExchangeRecord& rec, LoopLevel level) {
    const auto a = try_party_decode(rec.state.alice, level);
    const auto b = try_party_decode(rec.state.bob, level);
    return a && b && *a == rec.state.bob && *b == rec.state.alice;
}

KljnRun run_kljn(const ScenarioConfig& c, Seed seed, const Execution& exec) {
    KljnRun run;
    run.records = simulate_exchanges(c.n_bits, c.pair, c.noise, seed, exec);
    run.eve = eve_observe(run.records, c.pair, c.noise, seed);
    for (std::size_t i = 0; i < run.records.size(); ++i) {
        run.decode_ok += decoded_correctly(run.records[i], run.eve[i].level) ? 1 : 0;
    }
    return run;
}

}  // namespace

std::vector<Table> simulate_kljn(const ScenarioConfig& c, const Execution& exec) {
    require_valid(c);
    const auto run = run_kljn(c, derive_seed(c.seed(), Stream::ScenarioBlock, 0), exec);

    Table bits{"kljn_exchanges",
               {"bit_index", "alice", "bob", "state", "u_w_mean_square", "i_w_mean_square", "level",
                "alice_decoded_bob", "bob_decoded_alice", "decode_ok", "eve_alice", "eve_bob", "eve_certain",
                "eve_correct"},
               {}};
    std::size_t secure = 0;
    for (std::size_t i = 0; i < run.records.size(); ++i) {
        const auto& r = run.records[i];
        const auto& e = run.eve[i];
        const auto label = r.state.label();
        secure += r.state.classify() == StateClass::SecureMixed ? 1 : 0;
        bits.add({u64{i}, resistor_label(r.state.alice), resistor_label(r.state.bob), std::string(label.data()),
                  r.u_w_mean_square, r.i_w_mean_square, std::string(to_string(e.level)),
                  optional_label(try_party_decode(r.state.alice, e.level)),
                  optional_label(try_party_decode(r.state.bob, e.level)), decoded_correctly(r, e.level),
                  std::int64_t{e.guess.guessed_alice}, std::int64_t{e.guess.guessed_bob}, e.guess.certain,
                  e.correct});
    }

    const auto eve = summarize(run.eve);
    const auto n = static_cast<double>(run.records.size());
    Table summary{"kljn_summary",
                  {"n_bits", "samples_per_bit", "alpha", "decode_error_rate", "secure_fraction", "eve_accuracy",
                   "eve_certain_fraction"},
                  {}};
    summary.add({u64{c.n_bits}, u64{c.noise.samples_per_bit}, c.pair.alpha(),
                 static_cast<double>(run.records.size() - run.decode_ok) / n, static_cast<double>(secure) / n,
                 eve.accuracy, eve.certain_fraction});
    return {bits, summary};
}

std::vector<Table> simulate_thermod(const ScenarioConfig& c, const Execution& exec) {
    require_valid(c);
    const auto records = simulate_transmissions(c.n_bits, c.pair, c.noise, c.amp, c.channel,
                                                derive_seed(c.seed(), Stream::ScenarioBlock, 0), exec);
    Table bits{"thermod_transmissions",
               {"bit_index", "bit", "rx_mean_square", "rx_bit", "rx_margin", "eve_mean_square", "eve_bit",
                "eve_margin"},
               {}};
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        bits.add({u64{i}, std::int64_t{r.bit}, r.rx_mean_square, std::int64_t{r.rx.bit}, r.rx.log_likelihood_margin,
                  r.eve_mean_square, std::int64_t{r.eve.bit}, r.eve.log_likelihood_margin});
    }
    const auto report = summarize(records);
    const auto rx_cal = calibrate(c.pair, c.noise, c.amp, c.channel, Path::Receiver);
    const auto eve_cal = calibrate(c.pair, c.noise, c.amp, c.channel, Path::Eavesdropper);
    Table summary{"thermod_summary",
                  {"n_bits", "samples_per_bit", "alpha", "rx_variance_low", "rx_variance_high", "eve_variance_low",
                   "eve_variance_high", "receiver_accuracy", "eve_accuracy"},
                  {}};
    summary.add({u64{c.n_bits}, u64{c.noise.samples_per_bit}, c.pair.alpha(), rx_cal.expected_rx_variance_low,
                 rx_cal.expected_rx_variance_high, eve_cal.expected_rx_variance_low,
                 eve_cal.expected_rx_variance_high, report.receiver.accuracy, report.eve.accuracy});
    return {bits, summary};
}

Table attack(const ScenarioConfig& c, const Execution& exec) {
    require_valid(c);
    Table t{"attack_runs",
            {"run", "system", "bits_attacked", "bits_correct", "accuracy", "certain_fraction", "legit_accuracy"},
            {}};
    for (std::size_t r = 0; r < c.trials; ++r) {
        const Seed seed = derive_seed(c.seed(), Stream::KeyRun, r);
        if (c.system == SystemKind::Kljn) {
            const auto run = run_kljn(c, seed, exec);
            const auto s = summarize(run.eve);
            t.add({u64{r}, to_string(c.system), u64{s.bits_attacked}, u64{s.bits_correct}, s.accuracy,
                   s.certain_fraction, static_cast<double>(run.decode_ok) / static_cast<double>(c.n_bits)});
        } else {
            const auto rep = run_thermod_intercept(c.n_bits, c.pair, c.noise, c.amp, c.channel, seed, exec);
            t.add({u64{r}, to_string(c.system), u64{rep.eve.bits_attacked}, u64{rep.eve.bits_correct},
                   rep.eve.accuracy, rep.eve.certain_fraction, rep.receiver.accuracy});
        }
    }
    return t;
}

Table amplify(const ScenarioConfig& c, const Execution& exec) {
    require_valid(c);
    const Seed seed = derive_seed(c.seed(), Stream::ScenarioBlock, 1);

    KeyMaterial key;
    KeyMaterial eve_key;
    double retained = 1.0;
    if (c.system == SystemKind::Kljn) {
        const auto run = run_kljn(c, seed, exec);
        std::vector<StateClass> classes;
        std::vector<std::uint8_t> alice_bits;
        std::vector<std::uint8_t> eve_bits;
        for (std::size_t i = 0; i < run.records.size(); ++i) {
            classes.push_back(run.records[i].state.classify());
            alice_bits.push_back(static_cast<std::uint8_t>(bit_of(run.records[i].state.alice)));
            eve_bits.push_back(static_cast<std::uint8_t>(run.eve[i].guess.guessed_alice));
        }
        if (c.discard_non_secure) {
            auto kept = discard_non_secure(classes, alice_bits);
            key = std::move(kept.key);
            eve_key = discard_non_secure(classes, eve_bits).key;
            retained = kept.retained_fraction;
        } else {
            key.bits = std::move(alice_bits);
            eve_key.bits = std::move(eve_bits);
            // Certain on the half of exchanges that are LL/HH, a coin on the rest.
            key.eve_correct_prob = 0.75;
        }
    } else {
        const auto records = simulate_transmissions(c.n_bits, c.pair, c.noise, c.amp, c.channel, seed, exec);
        for (const auto& r : records) {
            key.bits.push_back(static_cast<std::uint8_t>(r.bit));
            eve_key.bits.push_back(static_cast<std::uint8_t>(r.eve.bit));
        }
        const auto eve_cal = calibrate(c.pair, c.noise, c.amp, c.channel, Path::Eavesdropper);
        const double ratio = eve_cal.expected_rx_variance_low > 0.0
                                 ? eve_cal.expected_rx_variance_high / eve_cal.expected_rx_variance_low
                                 : 1.0;
        key.eve_correct_prob = std::max(0.5, 1.0 - analytic_ber(ratio, c.noise.samples_per_bit));
    }

    Table t{"amplify_rounds",
            {"round", "key_length", "eve_correct_prob", "eve_agreement_empirical", "leakage_bits",
             "raw_exchanges_per_final_bit"},
            {}};
    auto emit = [&](std::size_t round) {
        std::size_t same = 0;
        for (std::size_t i = 0; i < key.size(); ++i) {
            same += key.bits[i] == eve_key.bits[i] ? 1 : 0;
        }
        const double agreement = key.size() ? static_cast<double>(same) / static_cast<double>(key.size()) : 0.0;
        const double cost = retained > 0.0 ? std::ldexp(1.0, static_cast<int>(round)) / retained : HUGE_VAL;
        t.add({u64{round}, u64{key.size()}, key.eve_correct_prob, agreement, leakage_bits(key.eve_correct_prob),
               cost});
    };
    emit(0);
    for (std::size_t round = 1; round <= c.pa_iterations && key.size() >= 2; ++round) {
        key = xor_halve(key);
        eve_key = xor_halve(eve_key);
        emit(round);
    }
    return t;
}

Table ber_curve(const ScenarioConfig& c, const Execution& exec) {
    require_valid(c);
    BerParams params{c.system, c.pair, c.noise, c.amp, c.channel};
    auto samples = c.ber_samples;
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    Table t{"ber_curve", {"samples_per_bit", "ber_analytic", "ber_monte_carlo", "trials", "variance_ratio"}, {}};
    for (std::size_t j = 0; j < samples.size(); ++j) {
        const auto p = monte_carlo_ber(params, samples[j], c.trials, derive_seed(c.seed(), Stream::BerTrial, j), exec);
        t.add({u64{p.samples_per_bit}, p.ber_analytic, *p.ber_monte_carlo, u64{p.trials}, p.variance_ratio});
    }
    return t;
}

Table power_report(const ScenarioConfig& c) {
    c.power.validate();
    Table t{"power_report",
            {"system", "power_watts", "pa_iterations", "secure_fraction", "cycle_multiplier",
             "energy_per_final_bit_joules"},
            {}};
    std::vector<std::size_t> ks{0};
    if (c.pa_iterations != 0) ks.push_back(c.pa_iterations);
    for (const auto system : {SystemKind::Kljn, SystemKind::Thermod}) {
        for (const auto k : ks) {
            for (const double fraction : {1.0, 0.5}) {
                const auto e = energy_per_final_bit(c.power, k, fraction, system);
                t.add({to_string(system), system_power(c.power, system), u64{k}, fraction, e.cycle_multiplier,
                       e.joules});
            }
        }
    }
    return t;
}

std::vector<Table> run_scenario(const ScenarioConfig& c, const Execution& exec) {
    auto tables = c.system == SystemKind::Kljn ? simulate_kljn(c, exec) : simulate_thermod(c, exec);
    tables.push_back(attack(c, exec));
    tables.push_back(amplify(c, exec));
    tables.push_back(power_report(c));
    return tables;
}

}  // namespace kljnlab::harness
