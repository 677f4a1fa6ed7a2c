#include "kljnlab/kljn.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "kljnlab/errors.hpp"

namespace kljnlab {

void ResistorPair::validate() const {
    if (!(r_low > 0.0) || !std::isfinite(r_low)) {
        throw std::invalid_argument("resistors.r_low must be > 0");
    }
    if (!(r_high > r_low) || !std::isfinite(r_high)) {
        throw std::invalid_argument("resistors.r_high must be > r_low");
    }
}

StateClass BitState::classify() const noexcept {
    if (alice != bob) {
        return StateClass::SecureMixed;
    }
    return alice == Resistor::Low ? StateClass::NonSecureLL : StateClass::NonSecureHH;
}

std::array<char, 3> BitState::label() const noexcept {
    return {static_cast<char>('0' + bit_of(alice)), static_cast<char>('0' + bit_of(bob)), '\0'};
}

std::string_view to_string(LoopLevel level) noexcept {
    switch (level) {
        case LoopLevel::LL: return "LL";
        case LoopLevel::Mixed: return "Mixed";
        case LoopLevel::HH: return "HH";
    }
    return "?";
}

LoopSignals loop_signals(const NoiseTrace& u_a, const NoiseTrace& u_b, double r_a, double r_b) {
    if (u_a.size() != u_b.size()) {
        throw StructuralError("loop_signals: trace lengths differ (" + std::to_string(u_a.size()) + " vs " +
                              std::to_string(u_b.size()) + ")");
    }
    const double r_sum = r_a + r_b;
    if (!(r_sum > 0.0)) {
        throw std::domain_error("loop_signals: r_a + r_b must be > 0");
    }
    const std::size_t n = u_a.size();
    LoopSignals out{{std::vector<double>(n), u_a.dt}, {std::vector<double>(n), u_a.dt}};
    for (std::size_t t = 0; t < n; ++t) {
        const double a = u_a.samples[t];
        const double b = u_b.samples[t];
        out.i_w.samples[t] = (a - b) / r_sum;
        out.u_w.samples[t] = (a * r_b + b * r_a) / r_sum;
    }
    return out;
}

ExchangeRecord run_bit_exchange(const ResistorPair& pair, const NoiseSpec& spec, BitState state, Seed seed) {
    const double r_a = pair.resistance(state.alice);
    const double r_b = pair.resistance(state.bob);
    const double sigma_a = std::sqrt(johnson_variance(r_a, spec));
    const double sigma_b = std::sqrt(johnson_variance(r_b, spec));
    const double r_sum = r_a + r_b;
    const std::size_t n = spec.samples_per_bit;

    auto alice = make_engine(derive_seed(seed, Stream::AliceSource));
    auto bob = make_engine(derive_seed(seed, Stream::BobSource));
    std::normal_distribution<double> gauss_a(0.0, 1.0);
    std::normal_distribution<double> gauss_b(0.0, 1.0);

    double u_acc = 0.0;
    double i_acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const double a = sigma_a * gauss_a(alice);
        const double b = sigma_b * gauss_b(bob);
        const double i = (a - b) / r_sum;
        const double u = (a * r_b + b * r_a) / r_sum;
        u_acc += u * u;
        i_acc += i * i;
    }
    const auto nd = static_cast<double>(n);
    return {state, u_acc / nd, i_acc / nd, n};
}

ExchangeRecord run_bit_exchange_reference(const ResistorPair& pair, const NoiseSpec& spec, BitState state,
                                          Seed seed) {
    const double r_a = pair.resistance(state.alice);
    const double r_b = pair.resistance(state.bob);
    const auto u_a = generate_trace(r_a, spec, derive_seed(seed, Stream::AliceSource));
    const auto u_b = generate_trace(r_b, spec, derive_seed(seed, Stream::BobSource));
    const auto loop = loop_signals(u_a, u_b, r_a, r_b);
    return {state, mean_square(loop.u_w.view()), mean_square(loop.i_w.view()), u_a.size()};
}

double level_resistance(LoopLevel level, const ResistorPair& pair) noexcept {
    switch (level) {
        case LoopLevel::LL: return pair.r_low / 2.0;
        case LoopLevel::Mixed: return pair.r_low * pair.r_high / (pair.r_low + pair.r_high);
        case LoopLevel::HH: return pair.r_high / 2.0;
    }
    return 0.0;
}

double level_voltage_variance(LoopLevel level, const ResistorPair& pair, const NoiseSpec& spec) noexcept {
    return spec.variance_per_ohm() * level_resistance(level, pair);
}

LoopLevel level_of(BitState state) noexcept {
    switch (state.classify()) {
        case StateClass::NonSecureLL: return LoopLevel::LL;
        case StateClass::NonSecureHH: return LoopLevel::HH;
        case StateClass::SecureMixed: return LoopLevel::Mixed;
    }
    return LoopLevel::Mixed;
}

LoopLevel classify_loop_level(const ExchangeRecord& record, const ResistorPair& pair, const NoiseSpec& spec) {
    if (!(record.u_w_mean_square > 0.0)) {
        return LoopLevel::LL;
    }
    const double x = std::log(record.u_w_mean_square);
    const double d_ll = std::abs(x - std::log(level_voltage_variance(LoopLevel::LL, pair, spec)));
    const double d_mx = std::abs(x - std::log(level_voltage_variance(LoopLevel::Mixed, pair, spec)));
    const double d_hh = std::abs(x - std::log(level_voltage_variance(LoopLevel::HH, pair, spec)));
    if (d_mx <= d_ll && d_mx <= d_hh) {
        return LoopLevel::Mixed;
    }
    return d_ll < d_hh ? LoopLevel::LL : LoopLevel::HH;
}

std::optional<Resistor> try_party_decode(Resistor own_choice, LoopLevel level) noexcept {
    switch (level) {
        case LoopLevel::Mixed: return opposite(own_choice);
        case LoopLevel::LL:
            if (own_choice == Resistor::Low) return Resistor::Low;
            return std::nullopt;
        case LoopLevel::HH:
            if (own_choice == Resistor::High) return Resistor::High;
            return std::nullopt;
    }
    return std::nullopt;
}

Resistor party_decode(Resistor own_choice, LoopLevel level) {
    if (auto peer = try_party_decode(own_choice, level)) {
        return *peer;
    }
    throw DecodeError(std::string("level ") + std::string(to_string(level)) + " is impossible with own resistor " +
                      (own_choice == Resistor::High ? "H" : "L"));
}

BitState random_bit_state(Seed seed) {
    auto engine = make_engine(seed);
    const auto word = engine();
    return {resistor_of(static_cast<int>(word & 1U)), resistor_of(static_cast<int>((word >> 1) & 1U))};
}

std::vector<ExchangeRecord> simulate_exchanges(std::size_t n, const ResistorPair& pair, const NoiseSpec& spec,
                                               Seed seed, const Execution& exec) {
    pair.validate();
    spec.validate_source();
    if (spec.samples_per_bit == 0) {
        throw std::invalid_argument("samples_per_bit must be >= 1");
    }
    std::vector<ExchangeRecord> records(n);
    parallel_for(n, exec, [&](std::size_t i) {
        const Seed bit_seed = exchange_seed(seed, i);
        const auto state = random_bit_state(derive_seed(bit_seed, Stream::PartyChoices));
        records[i] = run_bit_exchange(pair, spec, state, bit_seed);
    });
    return records;
}

std::vector<ExchangeRecord> simulate_exchanges_reference(std::size_t n, const ResistorPair& pair,
                                                         const NoiseSpec& spec, Seed seed) {
    pair.validate();
    spec.validate_source();
    if (spec.samples_per_bit == 0) {
        throw std::invalid_argument("samples_per_bit must be >= 1");
    }
    std::vector<ExchangeRecord> records;
    records.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Seed bit_seed = exchange_seed(seed, i);
        const auto state = random_bit_state(derive_seed(bit_seed, Stream::PartyChoices));
        records.push_back(run_bit_exchange_reference(pair, spec, state, bit_seed));
    }
    return records;
}

}  // namespace kljnlab
