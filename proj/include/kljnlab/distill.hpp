#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kljnlab/kljn.hpp"
#include "kljnlab/seed.hpp"

namespace kljnlab {

using ExactProbability = boost::multiprecision::cpp_rational;

/// Key bits (one byte per bit, values 0/1) plus Eve's per-bit probability of
/// guessing a bit correctly, assumed independent across bits.
struct KeyMaterial {
    std::vector<std::uint8_t> bits;
    double eve_correct_prob = 0.5;
    std::size_t pa_iterations_applied = 0;

    std::size_t size() const noexcept { return bits.size(); }
};

/// p^2 + (1-p)^2: Eve's XOR of two independent guesses is right when both or
/// neither guess is. Throws std::domain_error outside [0.5, 1].
double eve_prob_after_iteration(double p);
ExactProbability eve_prob_after_iteration(const ExactProbability& p);

/// Pairwise XOR of adjacent bits; a trailing odd bit is dropped.
/// Throws AmplifyError when the key has fewer than 2 bits.
KeyMaterial xor_halve(const KeyMaterial& key);

/// k rounds of xor_halve. Throws AmplifyError when size() < 2^k.
KeyMaterial amplify(const KeyMaterial& key, std::size_t k);

/// 1 - H2(p) in bits. Evaluated through log1p so values near p = 1/2 keep
/// full relative precision. Throws std::domain_error outside [0.5, 1].
double leakage_bits(double p);

struct DiscardResult {
    KeyMaterial key;
    double retained_fraction = 0.0;
};

/// Keeps only bits whose exchange was in the mixed (secure) class. Eve's
/// probability on the kept bits is 1/2.
/// Throws StructuralError when the spans differ in length.
DiscardResult discard_non_secure(std::span<const StateClass> classes, std::span<const std::uint8_t> bits);

/// Monte Carlo check of the recursion: a random key of n bits and an Eve copy
/// with independent per-bit correctness p, both amplified round by round.
/// Entry j is the empirical fraction of agreeing bits after j rounds
/// (j = 0..k).
std::vector<double> simulate_eve_agreement(std::size_t n, double p, std::size_t k, Seed seed);

}  // namespace kljnlab
