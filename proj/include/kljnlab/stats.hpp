#pragma once

#include <cstddef>
#include <span>

namespace kljnlab::stats {

struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased
};

Moments moments(std::span<const double> xs) noexcept;

/// Welch two-sample z statistic for equal means, |m1 - m2| / se.
double welch_z(std::span<const double> a, std::span<const double> b) noexcept;

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Critical KS distance at two-sided level `alpha` (asymptotic).
double ks_critical(std::size_t n_a, std::size_t n_b, double alpha) noexcept;

/// Two-sided normal tail probability of a `z`-sigma deviation.
double two_sided_tail(double z) noexcept;

/// Standard error of a Bernoulli proportion estimate.
double proportion_sigma(double p, std::size_t n) noexcept;

}  // namespace kljnlab::stats
