#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kljnlab/seed.hpp"

namespace kljnlab {

inline constexpr double kBoltzmann = 1.380649e-23;  // J/K

/// Thermal-noise generation parameters shared by every party.
///
/// Noise is white at `sampling_rate` and treated as already band-limited to
/// `bandwidth`; no filter is applied, so every sample is independent.
/// In normalized mode the factor 4*k_B*T*B is taken as 1 and variances are
/// numerically equal to the resistance in ohms.
struct NoiseSpec {
    double temperature = 300.0;    // K
    double bandwidth = 1.0e3;      // Hz
    double sampling_rate = 2.0e3;  // Hz
    std::size_t samples_per_bit = 10'000;
    bool normalized = false;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    /// Physical fields only (temperature, bandwidth, sampling rate). The
    /// Monte Carlo kernels accept any samples_per_bit >= 1.
    void validate_source() const;

    /// 4*k_B*T*B in V^2/ohm, or 1 in normalized mode.
    double variance_per_ohm() const noexcept;

    double dt() const noexcept { return 1.0 / sampling_rate; }
};

/// A finite sampled record of a noise voltage (or current).
struct NoiseTrace {
    std::vector<double> samples;
    double dt = 0.0;

    std::size_t size() const noexcept { return samples.size(); }
    std::span<const double> view() const noexcept { return samples; }
};

/// One-sided Johnson-Nyquist variance 4*k_B*T*R*B.
/// Throws std::domain_error for negative resistance.
double johnson_variance(double resistance, const NoiseSpec& spec);

/// `spec.samples_per_bit` independent zero-mean Gaussian samples with
/// variance johnson_variance(resistance, spec). Bit-identical for equal seeds.
NoiseTrace generate_trace(double resistance, const NoiseSpec& spec, Seed seed);

/// Same as generate_trace but with an explicit sample count.
NoiseTrace generate_trace(double resistance, const NoiseSpec& spec, Seed seed, std::size_t samples);

/// Mean of x^2 (second moment about zero).
double mean_square(std::span<const double> xs) noexcept;

}  // namespace kljnlab
