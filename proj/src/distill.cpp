#include "kljnlab/distill.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "kljnlab/errors.hpp"

namespace kljnlab {

namespace {

void require_guess_probability(double p) {
    if (!(p >= 0.5 && p <= 1.0)) {
        throw std::domain_error("probability must be in [0.5, 1], got " + std::to_string(p));
    }
}

std::size_t agreement(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        same += a[i] == b[i] ? 1 : 0;
    }
    return same;
}

}  // namespace

double eve_prob_after_iteration(double p) {
    require_guess_probability(p);
    const double q = 1.0 - p;
    return p * p + q * q;
}

ExactProbability eve_prob_after_iteration(const ExactProbability& p) {
    if (p < ExactProbability(1, 2) || p > ExactProbability(1)) {
        throw std::domain_error("probability must be in [0.5, 1]");
    }
    const ExactProbability q = ExactProbability(1) - p;
    return p * p + q * q;
}

KeyMaterial xor_halve(const KeyMaterial& key) {
    if (key.size() < 2) {
        throw AmplifyError("cannot amplify a key of " + std::to_string(key.size()) + " bit(s)");
    }
    KeyMaterial out;
    out.bits.resize(key.size() / 2);
    for (std::size_t i = 0; i < out.bits.size(); ++i) {
        out.bits[i] = key.bits[2 * i] ^ key.bits[2 * i + 1];
    }
    out.eve_correct_prob = eve_prob_after_iteration(key.eve_correct_prob);
    out.pa_iterations_applied = key.pa_iterations_applied + 1;
    return out;
}

KeyMaterial amplify(const KeyMaterial& key, std::size_t k) {
    if (k >= 64 || key.size() < (std::size_t{1} << k)) {
        throw AmplifyError("key of " + std::to_string(key.size()) + " bits is too short for " + std::to_string(k) +
                           " amplification rounds");
    }
    KeyMaterial out = key;
    for (std::size_t i = 0; i < k; ++i) {
        out = xor_halve(out);
    }
    return out;
}

double leakage_bits(double p) {
    require_guess_probability(p);
    // 1 - H2(p) = [(1+x) ln(1+x) + (1-x) ln(1-x)] / (2 ln 2), x = 2p - 1.
    const double x = 2.0 * p - 1.0;
    const double plus = (1.0 + x) * std::log1p(x);
    const double minus = x < 1.0 ? (1.0 - x) * std::log1p(-x) : 0.0;
    return std::max(0.0, (plus + minus) / (2.0 * std::numbers::ln2));
}

DiscardResult discard_non_secure(std::span<const StateClass> classes, std::span<const std::uint8_t> bits) {
    if (classes.size() != bits.size()) {
        throw StructuralError("discard_non_secure: " + std::to_string(classes.size()) + " classes vs " +
                              std::to_string(bits.size()) + " bits");
    }
    DiscardResult out;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (classes[i] == StateClass::SecureMixed) {
            out.key.bits.push_back(bits[i]);
        }
    }
    out.key.eve_correct_prob = 0.5;
    out.retained_fraction =
        bits.empty() ? 0.0 : static_cast<double>(out.key.size()) / static_cast<double>(bits.size());
    return out;
}

std::vector<double> simulate_eve_agreement(std::size_t n, double p, std::size_t k, Seed seed) {
    require_guess_probability(p);
    auto key_rng = make_engine(derive_seed(seed, Stream::TrueKeyBits));
    auto eve_rng = make_engine(derive_seed(seed, Stream::EveGuessBits));
    std::bernoulli_distribution wrong(1.0 - p);

    KeyMaterial truth;
    KeyMaterial eve;
    truth.bits.resize(n);
    eve.bits.resize(n);
    truth.eve_correct_prob = p;
    eve.eve_correct_prob = p;
    for (std::size_t i = 0; i < n; ++i) {
        truth.bits[i] = static_cast<std::uint8_t>(key_rng() & 1U);
        eve.bits[i] = truth.bits[i] ^ static_cast<std::uint8_t>(wrong(eve_rng) ? 1 : 0);
    }

    std::vector<double> fractions;
    fractions.reserve(k + 1);
    fractions.push_back(n ? static_cast<double>(agreement(truth.bits, eve.bits)) / static_cast<double>(n) : 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        truth = xor_halve(truth);
        eve = xor_halve(eve);
        fractions.push_back(static_cast<double>(agreement(truth.bits, eve.bits)) /
                            static_cast<double>(truth.size()));
    }
    return fractions;
}

}  // namespace kljnlab
