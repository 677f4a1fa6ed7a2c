#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "kljnlab/exec.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/thermod.hpp"

namespace kljnlab {

struct BerCurvePoint {
    std::size_t samples_per_bit = 0;
    double ber_analytic = 0.0;
    std::optional<double> ber_monte_carlo;
    std::size_t trials = 0;
    double variance_ratio = 0.0;
};

/// Error probability of the geometric-mean threshold on the mean square of
/// `samples` independent zero-mean Gaussian samples, between two
/// equiprobable variances in ratio `variance_ratio`. Each hypothesis makes
/// samples * S / sigma^2 chi-square with `samples` degrees of freedom.
/// Returns 0.5 for ratio <= 1. Throws std::domain_error for samples == 0.
double analytic_ber(double variance_ratio, std::size_t samples);

/// Exact misclassification probability of the KLJN log-nearest level
/// classifier with equiprobable party choices (LL and HH 1/4, mixed 1/2).
/// Every misclassification makes at least one party decode wrongly, so this
/// is also the per-exchange decode error rate.
double analytic_kljn_ber(const ResistorPair& pair, std::size_t samples);

/// Smallest N >= 1 with analytic_ber(ratio, N) <= target_ber, by doubling
/// followed by bisection. Returns 1 for target_ber >= 0.5.
/// Throws std::domain_error for ratio <= 1 or target_ber <= 0.
std::size_t required_samples(double variance_ratio, double target_ber);

enum class SystemKind { Kljn, Thermod };

/// Everything a Monte Carlo BER run needs. `amp` and `channel` are ignored
/// for KLJN.
struct BerParams {
    SystemKind system = SystemKind::Thermod;
    ResistorPair pair;
    NoiseSpec spec;
    AmplifierModel amp;
    ChannelModel channel;
};

/// Variance ratio the detector has to resolve: calibrated high/low on the
/// receiver path for TherMod, the smallest adjacent level ratio for KLJN.
double detector_variance_ratio(const BerParams& params);

/// Empirical decode error rate over `trials` independent bits with
/// `samples` samples each, together with the analytic value.
/// KLJN counts an exchange as an error if either party decodes the peer's
/// resistor wrongly or cannot decode at all. Throws std::invalid_argument
/// for trials == 0 or samples == 0.
BerCurvePoint monte_carlo_ber(const BerParams& params, std::size_t samples, std::size_t trials, Seed seed,
                              const Execution& exec = {});

/// Analytic-only point.
BerCurvePoint analytic_point(const BerParams& params, std::size_t samples);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Ordinary least squares y = slope * x + intercept.
/// Throws std::invalid_argument for fewer than two points or mismatched
/// lengths.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace kljnlab
