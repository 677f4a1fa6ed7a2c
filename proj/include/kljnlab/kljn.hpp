#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "kljnlab/exec.hpp"
#include "kljnlab/noise.hpp"
#include "kljnlab/seed.hpp"

namespace kljnlab {

/// Resistor choice of one party. Maps to key bits L -> 0, H -> 1.
enum class Resistor : unsigned char { Low = 0, High = 1 };

constexpr int bit_of(Resistor r) noexcept { return static_cast<int>(r); }
constexpr Resistor resistor_of(int bit) noexcept { return bit ? Resistor::High : Resistor::Low; }
constexpr Resistor opposite(Resistor r) noexcept {
    return r == Resistor::Low ? Resistor::High : Resistor::Low;
}

struct ResistorPair {
    double r_low = 1.0e3;
    double r_high = 1.0e4;

    /// Requires r_high > r_low > 0.
    void validate() const;
    double alpha() const noexcept { return r_high / r_low; }
    double resistance(Resistor r) const noexcept { return r == Resistor::High ? r_high : r_low; }
};

enum class StateClass { NonSecureLL, NonSecureHH, SecureMixed };

/// Both parties' choices for one bit period. Reads as "ab" with a = Alice's
/// bit and b = Bob's bit: LL = "00", LH = "01", HL = "10", HH = "11".
struct BitState {
    Resistor alice = Resistor::Low;
    Resistor bob = Resistor::Low;

    StateClass classify() const noexcept;
    std::array<char, 3> label() const noexcept;

    friend bool operator==(const BitState&, const BitState&) = default;
};

/// Mean-square wire statistics of one bit period.
struct ExchangeRecord {
    BitState state;
    double u_w_mean_square = 0.0;  // V^2
    double i_w_mean_square = 0.0;  // A^2
    std::size_t samples_used = 0;
};

/// The three distinguishable loop noise levels.
enum class LoopLevel { LL, Mixed, HH };

std::string_view to_string(LoopLevel level) noexcept;

struct LoopSignals {
    NoiseTrace u_w;
    NoiseTrace i_w;
};

/// Kirchhoff loop of two series (source, resistor) branches:
///   i_w = (u_a - u_b) / (r_a + r_b)
///   u_w = (u_a * r_b + u_b * r_a) / (r_a + r_b)
/// Throws StructuralError on length mismatch, std::domain_error if
/// r_a + r_b <= 0.
LoopSignals loop_signals(const NoiseTrace& u_a, const NoiseTrace& u_b, double r_a, double r_b);

/// Simulates one bit period. Alice's source uses derive_seed(seed,
/// AliceSource), Bob's derive_seed(seed, BobSource); statistics are
/// accumulated on the fly without materializing traces.
ExchangeRecord run_bit_exchange(const ResistorPair& pair, const NoiseSpec& spec, BitState state, Seed seed);

/// Trace-materializing reference for run_bit_exchange. Same seeds, same
/// summation order, so results are bit-identical; kept for tests and
/// benchmarks.
ExchangeRecord run_bit_exchange_reference(const ResistorPair& pair, const NoiseSpec& spec, BitState state,
                                          Seed seed);

/// Effective parallel resistance seen by the wire at each level.
double level_resistance(LoopLevel level, const ResistorPair& pair) noexcept;

/// Theoretical Var(U_w) at the level: variance_per_ohm * level_resistance.
double level_voltage_variance(LoopLevel level, const ResistorPair& pair, const NoiseSpec& spec) noexcept;

/// Level produced by a resistor configuration.
LoopLevel level_of(BitState state) noexcept;

/// Nearest theoretical U_w level in log-variance distance. Exact ties go to
/// LoopLevel::Mixed; a zero statistic maps to LL.
LoopLevel classify_loop_level(const ExchangeRecord& record, const ResistorPair& pair, const NoiseSpec& spec);

/// Infers the peer's resistor from the own choice and the observed level.
/// Throws DecodeError when the level is impossible for `own_choice`.
Resistor party_decode(Resistor own_choice, LoopLevel level);

/// Non-throwing variant: empty on an inconsistent (own, level) pair.
std::optional<Resistor> try_party_decode(Resistor own_choice, LoopLevel level) noexcept;

/// Independent uniform choices for both parties.
BitState random_bit_state(Seed seed);

/// n exchanges with random states. Bit i uses
/// derive_seed(seed, ExchangeBit, i) for its exchange and
/// derive_seed(<bit seed>, PartyChoices) for the state draw.
std::vector<ExchangeRecord> simulate_exchanges(std::size_t n, const ResistorPair& pair, const NoiseSpec& spec,
                                               Seed seed, const Execution& exec = {});

/// Serial, trace-materializing reference for simulate_exchanges.
std::vector<ExchangeRecord> simulate_exchanges_reference(std::size_t n, const ResistorPair& pair,
                                                         const NoiseSpec& spec, Seed seed);

/// Seed of bit i within simulate_exchanges.
inline Seed exchange_seed(Seed seed, std::size_t i) noexcept { return derive_seed(seed, Stream::ExchangeBit, i); }

}  // namespace kljnlab
