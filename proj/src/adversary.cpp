#include "kljnlab/adversary.hpp"

#include <stdexcept>

namespace kljnlab {

AttackSummary AttackSummary::from_counts(std::size_t attacked, std::size_t correct, std::size_t certain) {
    AttackSummary s;
    s.bits_attacked = attacked;
    s.bits_correct = correct;
    if (attacked > 0) {
        s.accuracy = static_cast<double>(correct) / static_cast<double>(attacked);
        s.certain_fraction = static_cast<double>(certain) / static_cast<double>(attacked);
    }
    return s;
}

EveKljnGuess kljn_eve_guess(LoopLevel level, Seed seed) {
    switch (level) {
        case LoopLevel::LL: return {0, 0, true};
        case LoopLevel::HH: return {1, 1, true};
        case LoopLevel::Mixed: break;
    }
    auto engine = make_engine(seed);
    return (engine() & 1U) ? EveKljnGuess{1, 0, false} : EveKljnGuess{0, 1, false};
}

std::vector<KljnEveObservation> eve_observe(std::span<const ExchangeRecord> records, const ResistorPair& pair,
                                            const NoiseSpec& spec, Seed seed) {
    std::vector<KljnEveObservation> out(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        auto& obs = out[i];
        obs.level = classify_loop_level(rec, pair, spec);
        obs.guess = kljn_eve_guess(obs.level, derive_seed(exchange_seed(seed, i), Stream::EveCoin));
        obs.correct = obs.guess.guessed_alice == bit_of(rec.state.alice) &&
                      obs.guess.guessed_bob == bit_of(rec.state.bob);
    }
    return out;
}

AttackSummary summarize(std::span<const KljnEveObservation> observations) {
    std::size_t correct = 0;
    std::size_t certain = 0;
    for (const auto& o : observations) {
        correct += o.correct ? 1 : 0;
        certain += o.guess.certain ? 1 : 0;
    }
    return AttackSummary::from_counts(observations.size(), correct, certain);
}

AttackSummary run_kljn_key_attack(std::size_t n_bits, const ResistorPair& pair, const NoiseSpec& spec, Seed seed,
                                  const Execution& exec) {
    if (n_bits == 0) {
        throw std::invalid_argument("n_bits must be >= 1");
    }
    const auto records = simulate_exchanges(n_bits, pair, spec, seed, exec);
    const auto observations = eve_observe(records, pair, spec, seed);
    return summarize(observations);
}

InterceptReport summarize(std::span<const ThermodBitRecord> records) {
    std::size_t eve_ok = 0;
    std::size_t rx_ok = 0;
    for (const auto& r : records) {
        eve_ok += r.eve.bit == r.bit ? 1 : 0;
        rx_ok += r.rx.bit == r.bit ? 1 : 0;
    }
    const auto n = records.size();
    return {AttackSummary::from_counts(n, eve_ok, n), AttackSummary::from_counts(n, rx_ok, n)};
}

InterceptReport run_thermod_intercept(std::size_t n_bits, const ResistorPair& pair, const NoiseSpec& spec,
                                      const AmplifierModel& amp, const ChannelModel& ch, Seed seed,
                                      const Execution& exec) {
    if (n_bits == 0) {
        throw std::invalid_argument("n_bits must be >= 1");
    }
    const auto records = simulate_transmissions(n_bits, pair, spec, amp, ch, seed, exec);
    return summarize(records);
}

}  // namespace kljnlab
