#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kljnlab/adversary.hpp"
#include "kljnlab/stats.hpp"

using namespace kljnlab;

namespace {

const ResistorPair kPair{1.0e3, 1.0e4};

NoiseSpec short_bits(std::size_t n) {
    NoiseSpec s;
    s.samples_per_bit = n;
    return s;
}

}  // namespace

TEST_CASE("Eve's guesses on the certain levels") {
    const auto ll = kljn_eve_guess(LoopLevel::LL, 1);
    CHECK(ll.guessed_alice == 0);
    CHECK(ll.guessed_bob == 0);
    CHECK(ll.certain);
    const auto hh = kljn_eve_guess(LoopLevel::HH, 1);
    CHECK(hh.guessed_alice == 1);
    CHECK(hh.guessed_bob == 1);
    CHECK(hh.certain);
}

TEST_CASE("Mixed level guess is a fair coin between 10 and 01") {
    std::size_t alice_one = 0;
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        const auto g = kljn_eve_guess(LoopLevel::Mixed, splitmix64(i));
        REQUIRE_FALSE(g.certain);
        REQUIRE(g.guessed_alice + g.guessed_bob == 1);
        alice_one += g.guessed_alice;
    }
    CHECK(std::abs(double(alice_one) - 5000.0) <= 250.0);
}

TEST_CASE("AttackSummary::from_counts") {
    const auto s = AttackSummary::from_counts(200, 150, 100);
    CHECK(s.accuracy == 0.75);
    CHECK(s.certain_fraction == 0.5);
    const auto empty = AttackSummary::from_counts(0, 0, 0);
    CHECK(empty.accuracy == 0.0);
}

TEST_CASE("passive KLJN attack: accuracy decomposes into certain bits plus a coin") {
    const auto spec = short_bits(2000);
    const auto records = simulate_exchanges(20'000, kPair, spec, 11);
    const auto obs = eve_observe(records, kPair, spec, 11);
    std::size_t certain = 0, certain_right = 0, coin = 0, coin_right = 0;
    for (std::size_t i = 0; i < obs.size(); ++i) {
        const auto& o = obs[i];
        if (o.guess.certain) {
            ++certain;
            certain_right += o.correct ? 1 : 0;
        } else {
            ++coin;
            coin_right += o.correct ? 1 : 0;
        }
    }
    // Certain guesses are never wrong at this separation.
    CHECK(certain_right == certain);
    const double n = double(obs.size());
    CHECK(std::abs(double(certain) / n - 0.5) < 5.0 * stats::proportion_sigma(0.5, obs.size()));
    CHECK(std::abs(double(coin_right) / double(coin) - 0.5) < 5.0 * stats::proportion_sigma(0.5, coin));
    const auto s = summarize(obs);
    CHECK(std::abs(s.accuracy - 0.75) < 5.0 * stats::proportion_sigma(0.75, obs.size()));
}

TEST_CASE("run_kljn_key_attack") {
    const auto s = run_kljn_key_attack(4096, kPair, short_bits(2000), 5);
    CHECK(s.bits_attacked == 4096);
    CHECK(std::abs(s.accuracy - 0.75) < 5.0 * stats::proportion_sigma(0.75, 4096));
    CHECK_THROWS_AS(run_kljn_key_attack(0, kPair, short_bits(10), 5), std::invalid_argument);
}

TEST_CASE("nearly indistinguishable resistors never help Eve beyond certainty") {
    const ResistorPair close{1.0e3, 1.001e3};
    const auto s = run_kljn_key_attack(2000, close, short_bits(100), 9);
    CHECK(s.accuracy <= 1.0);
    CHECK(s.accuracy >= 0.0);
    // With levels this close she is at best a little better than chance on both halves.
    CHECK(s.accuracy < 0.75);
}

TEST_CASE("property: attack outcome is invariant to a common resistance scale") {
    // Classification is in log-distance, so scaling both resistors shifts every
    // level equally; the noise draws are identical.
    NoiseSpec spec = short_bits(500);
    spec.normalized = true;
    for (const double scale : {1e-2, 10.0, 1e3}) {
        const ResistorPair scaled{kPair.r_low * scale, kPair.r_high * scale};
        const auto a = run_kljn_key_attack(512, kPair, spec, 31);
        const auto b = run_kljn_key_attack(512, scaled, spec, 31);
        CHECK(a.bits_correct == b.bits_correct);
    }
}

TEST_CASE("TherMod intercept on a shared broadcast") {
    NoiseSpec spec;
    spec.normalized = true;
    spec.samples_per_bit = 200;
    const auto rep = run_thermod_intercept(5000, kPair, spec, {}, {}, 4);
    CHECK(rep.eve.accuracy > 0.99);
    CHECK(rep.receiver.accuracy > 0.99);
    CHECK(rep.eve.certain_fraction == 1.0);
    CHECK(rep.eve.bits_attacked == 5000);

    ChannelModel dark;
    dark.gain_to_eavesdropper = 0.0;
    const auto blind = run_thermod_intercept(5000, kPair, spec, {}, dark, 4);
    CHECK(std::abs(blind.eve.accuracy - 0.5) < 5.0 * stats::proportion_sigma(0.5, 5000));

    CHECK_THROWS_AS(run_thermod_intercept(0, kPair, spec, {}, {}, 4), std::invalid_argument);
}

TEST_CASE("TherMod intercept parity with matched noisy paths") {
    NoiseSpec spec;
    spec.normalized = true;
    spec.samples_per_bit = 30;
    ChannelModel ch;
    ch.environment_noise_variance = 3000.0;
    const auto rep = run_thermod_intercept(20'000, kPair, spec, {}, ch, 12);
    const double sigma = std::sqrt(2.0) * stats::proportion_sigma(rep.receiver.accuracy, 20'000);
    CHECK(std::abs(rep.eve.accuracy - rep.receiver.accuracy) < 5.0 * sigma);
}
