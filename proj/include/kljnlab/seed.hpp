#pragma once

#include <cstdint>
#include <random>

namespace kljnlab {

using Seed = std::uint64_t;
using Engine = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Named sub-streams. Values are part of the on-disk determinism contract;
/// never renumber an existing entry.
enum class Stream : std::uint64_t {
    AliceSource = 1,
    BobSource = 2,
    PartyChoices = 3,
    EveCoin = 4,
    ExchangeBit = 5,
    TransmitSource = 6,
    AmplifierRipple = 7,
    AmplifierNoise = 8,
    ReceiverNoise = 9,
    EavesdropperNoise = 10,
    TransmitBit = 11,
    KeyRun = 12,
    EveGuessBits = 13,
    TrueKeyBits = 14,
    BerTrial = 15,
    ScenarioBlock = 16,
};

/// Counter-based seed derivation: seed of element `index` in stream `stream`
/// under `parent`. Depends only on its arguments, so results never depend on
/// the order in which elements are evaluated.
constexpr Seed derive_seed(Seed parent, Stream stream, std::uint64_t index = 0) noexcept {
    const auto tag = static_cast<std::uint64_t>(stream);
    return splitmix64(splitmix64(parent ^ splitmix64(tag)) + index);
}

/// Seeds are already mixed by derive_seed, so the engine's own
/// single-word initializer is sufficient.
inline Engine make_engine(Seed seed) { return Engine(seed); }

}  // namespace kljnlab
