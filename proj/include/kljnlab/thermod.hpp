#pragma once

#include <cstddef>
#include <vector>

#include "kljnlab/exec.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/noise.hpp"
#include "kljnlab/seed.hpp"

namespace kljnlab {

struct AmplifierModel {
    double gain = 1.0;                  // linear voltage gain
    double added_noise_variance = 0.0;  // V^2, referred to the output
    double artifact_gain_ripple = 0.0;  // per-bit gain error: gain * (1 +/- ripple)
    double power_draw = 0.0;            // W

    void validate() const;
};

struct DelayTap {
    std::size_t delay = 1;  // samples
    double amplitude = 0.0;
};

/// Static wireless path. The direct path has unit amplitude; each tap adds
/// a delayed copy of the transmitted signal.
struct ChannelModel {
    double gain_to_receiver = 1.0;
    double gain_to_eavesdropper = 1.0;
    double environment_noise_variance = 0.0;  // V^2, independent per listener
    std::vector<DelayTap> delay_taps;

    void validate() const;
    /// 1 + sum of squared tap amplitudes.
    double tap_energy() const noexcept;
    std::size_t max_delay() const noexcept;
};

enum class Path { Receiver, Eavesdropper };

/// A listener's knowledge of the two received variance levels.
struct CalibrationTable {
    double expected_rx_variance_low = 0.0;
    double expected_rx_variance_high = 0.0;

    /// Strict ordering high > low > 0. A listener with no signal (zero path
    /// gain) gets a table with high == low, which is usable but not valid.
    bool valid() const noexcept;
    /// Geometric mean of the two levels.
    double threshold() const noexcept;
};

struct Transmission {
    NoiseTrace rx;
    NoiseTrace eve;
};

/// Transmits one bit through source -> amplifier -> taps -> path gain ->
/// additive environment noise, producing `spec.samples_per_bit` samples for
/// both the legitimate receiver and the eavesdropper. The amplifier ripple
/// sign is drawn once per bit.
Transmission transmit_bit(int bit, const ResistorPair& pair, const NoiseSpec& spec, const AmplifierModel& amp,
                          const ChannelModel& ch, Seed seed);

/// Analytic expected received variances for bit 0 and bit 1 on `path`.
CalibrationTable calibrate(const ResistorPair& pair, const NoiseSpec& spec, const AmplifierModel& amp,
                           const ChannelModel& ch, Path path);

struct Decision {
    int bit = 0;
    double log_likelihood_margin = 0.0;
};

/// Decides 1 iff the trace's mean square is >= the geometric-mean threshold.
/// Throws StructuralError on an empty trace and std::domain_error if the
/// calibration has a non-positive level.
Decision variance_threshold_decide(const NoiseTrace& trace, const CalibrationTable& cal);

/// Statistic-only overload used by the Monte Carlo kernels.
Decision variance_threshold_decide(double mean_square_value, const CalibrationTable& cal);

/// Per-bit outcome of one TherMod transmission, seen by both listeners.
struct ThermodBitRecord {
    int bit = 0;
    double rx_mean_square = 0.0;
    Decision rx;
    double eve_mean_square = 0.0;
    Decision eve;
};

/// n transmissions of uniformly random bits. Bit i uses
/// derive_seed(seed, TransmitBit, i); the bit value comes from its
/// ExchangeBit sub-stream. A listener whose calibration has no signal at all
/// (both levels zero) decides by a fair coin from the EveCoin sub-stream.
std::vector<ThermodBitRecord> simulate_transmissions(std::size_t n, const ResistorPair& pair, const NoiseSpec& spec,
                                                     const AmplifierModel& amp, const ChannelModel& ch, Seed seed,
                                                     const Execution& exec = {});

}  // namespace kljnlab
