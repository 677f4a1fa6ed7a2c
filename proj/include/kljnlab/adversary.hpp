#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kljnlab/exec.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/thermod.hpp"

namespace kljnlab {

/// Eve's per-bit knowledge of a KLJN exchange.
struct EveKljnGuess {
    int guessed_alice = 0;
    int guessed_bob = 0;
    bool certain = false;
};

struct AttackSummary {
    std::size_t bits_attacked = 0;
    std::size_t bits_correct = 0;
    double accuracy = 0.0;
    double certain_fraction = 0.0;

    static AttackSummary from_counts(std::size_t attacked, std::size_t correct, std::size_t certain);
};

/// LL and HH are read off directly; Mixed is a fair coin between 10 and 01.
EveKljnGuess kljn_eve_guess(LoopLevel level, Seed seed);

/// What Eve saw and concluded for one exchange. `correct` requires both
/// halves of the guess to match the true state.
struct KljnEveObservation {
    LoopLevel level = LoopLevel::Mixed;
    EveKljnGuess guess;
    bool correct = false;
};

/// Eve classifies every record exactly like the parties do. The coin for
/// record i comes from derive_seed(exchange_seed(seed, i), EveCoin).
std::vector<KljnEveObservation> eve_observe(std::span<const ExchangeRecord> records, const ResistorPair& pair,
                                            const NoiseSpec& spec, Seed seed);

AttackSummary summarize(std::span<const KljnEveObservation> observations);

/// Full passive attack on n_bits random KLJN exchanges.
/// Throws std::invalid_argument when n_bits == 0.
AttackSummary run_kljn_key_attack(std::size_t n_bits, const ResistorPair& pair, const NoiseSpec& spec, Seed seed,
                                  const Execution& exec = {});

/// Eve's accuracy together with the legitimate receiver's on the same
/// transmissions.
struct InterceptReport {
    AttackSummary eve;
    AttackSummary receiver;
};

/// Eve calibrates her own path and thresholds her intercepted traces.
/// certain_fraction is 1: TherMod has no ambiguous state class.
InterceptReport run_thermod_intercept(std::size_t n_bits, const ResistorPair& pair, const NoiseSpec& spec,
                                      const AmplifierModel& amp, const ChannelModel& ch, Seed seed,
                                      const Execution& exec = {});

InterceptReport summarize(std::span<const ThermodBitRecord> records);

}  // namespace kljnlab
