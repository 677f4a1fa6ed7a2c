#include "kljnlab/thermod.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "kljnlab/errors.hpp"

namespace kljnlab {

void AmplifierModel::validate() const {
    if (!(gain > 0.0) || !std::isfinite(gain)) {
        throw std::invalid_argument("amplifier.gain must be > 0");
    }
    if (!(added_noise_variance >= 0.0) || !std::isfinite(added_noise_variance)) {
        throw std::invalid_argument("amplifier.added_noise_variance must be >= 0");
    }
    if (!(artifact_gain_ripple >= 0.0 && artifact_gain_ripple < 1.0)) {
        throw std::invalid_argument("amplifier.artifact_gain_ripple must be in [0, 1)");
    }
    if (!(power_draw >= 0.0) || !std::isfinite(power_draw)) {
        throw std::invalid_argument("amplifier.power_draw must be >= 0");
    }
}

void ChannelModel::validate() const {
    if (!(gain_to_receiver >= 0.0) || !std::isfinite(gain_to_receiver)) {
        throw std::invalid_argument("channel.gain_to_receiver must be >= 0");
    }
    if (!(gain_to_eavesdropper >= 0.0) || !std::isfinite(gain_to_eavesdropper)) {
        throw std::invalid_argument("channel.gain_to_eavesdropper must be >= 0");
    }
    if (!(environment_noise_variance >= 0.0) || !std::isfinite(environment_noise_variance)) {
        throw std::invalid_argument("channel.environment_noise_variance must be >= 0");
    }
    for (const auto& tap : delay_taps) {
        if (tap.delay < 1) {
            throw std::invalid_argument("channel.delay_taps[].delay must be >= 1");
        }
        if (!std::isfinite(tap.amplitude)) {
            throw std::invalid_argument("channel.delay_taps[].amplitude must be finite");
        }
    }
}

double ChannelModel::tap_energy() const noexcept {
    double e = 1.0;
    for (const auto& tap : delay_taps) {
        e += tap.amplitude * tap.amplitude;
    }
    return e;
}

std::size_t ChannelModel::max_delay() const noexcept {
    std::size_t d = 0;
    for (const auto& tap : delay_taps) {
        d = std::max(d, tap.delay);
    }
    return d;
}

bool CalibrationTable::valid() const noexcept {
    return expected_rx_variance_high > expected_rx_variance_low && expected_rx_variance_low > 0.0;
}

double CalibrationTable::threshold() const noexcept {
    return std::sqrt(expected_rx_variance_low * expected_rx_variance_high);
}

namespace {

void add_gaussian(std::vector<double>& xs, double variance, Seed seed) {
    if (variance <= 0.0) {
        return;
    }
    const double sigma = std::sqrt(variance);
    auto engine = make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& x : xs) {
        x += sigma * gauss(engine);
    }
}

}  // namespace

Transmission transmit_bit(int bit, const ResistorPair& pair, const NoiseSpec& spec, const AmplifierModel& amp,
                          const ChannelModel& ch, Seed seed) {
    const std::size_t n = spec.samples_per_bit;
    const std::size_t lead = ch.max_delay();
    const double resistance = bit ? pair.r_high : pair.r_low;

    // Extra leading samples so every output sample sees every tap.
    auto source = generate_trace(resistance, spec, derive_seed(seed, Stream::TransmitSource), n + lead);

    double gain = amp.gain;
    if (amp.artifact_gain_ripple > 0.0) {
        auto engine = make_engine(derive_seed(seed, Stream::AmplifierRipple));
        const bool up = (engine() & 1U) != 0;
        gain *= up ? 1.0 + amp.artifact_gain_ripple : 1.0 - amp.artifact_gain_ripple;
    }
    std::vector<double> amplified = std::move(source.samples);
    for (auto& x : amplified) {
        x *= gain;
    }
    add_gaussian(amplified, amp.added_noise_variance, derive_seed(seed, Stream::AmplifierNoise));

    std::vector<double> air(n);
    for (std::size_t t = 0; t < n; ++t) {
        double v = amplified[t + lead];
        for (const auto& tap : ch.delay_taps) {
            v += tap.amplitude * amplified[t + lead - tap.delay];
        }
        air[t] = v;
    }

    Transmission out{{std::vector<double>(n), spec.dt()}, {std::vector<double>(n), spec.dt()}};
    for (std::size_t t = 0; t < n; ++t) {
        out.rx.samples[t] = ch.gain_to_receiver * air[t];
        out.eve.samples[t] = ch.gain_to_eavesdropper * air[t];
    }
    add_gaussian(out.rx.samples, ch.environment_noise_variance, derive_seed(seed, Stream::ReceiverNoise));
    add_gaussian(out.eve.samples, ch.environment_noise_variance, derive_seed(seed, Stream::EavesdropperNoise));
    return out;
}

CalibrationTable calibrate(const ResistorPair& pair, const NoiseSpec& spec, const AmplifierModel& amp,
                           const ChannelModel& ch, Path path) {
    const double g = path == Path::Receiver ? ch.gain_to_receiver : ch.gain_to_eavesdropper;
    const double ripple2 = amp.artifact_gain_ripple * amp.artifact_gain_ripple;
    const double amp_power = amp.gain * amp.gain * (1.0 + ripple2);
    const double spread = g * g * ch.tap_energy();
    auto level = [&](double resistance) {
        return spread * (amp_power * johnson_variance(resistance, spec) + amp.added_noise_variance) +
               ch.environment_noise_variance;
    };
    return {level(pair.r_low), level(pair.r_high)};
}

Decision variance_threshold_decide(double mean_square_value, const CalibrationTable& cal) {
    if (!(cal.expected_rx_variance_low > 0.0) || !(cal.expected_rx_variance_high > 0.0)) {
        throw std::domain_error("calibration levels must be > 0");
    }
    const double threshold = cal.threshold();
    Decision d;
    d.bit = mean_square_value >= threshold ? 1 : 0;
    d.log_likelihood_margin =
        mean_square_value > 0.0 ? std::abs(std::log(mean_square_value) - std::log(threshold)) : HUGE_VAL;
    return d;
}

Decision variance_threshold_decide(const NoiseTrace& trace, const CalibrationTable& cal) {
    if (trace.samples.empty()) {
        throw StructuralError("variance_threshold_decide: empty trace");
    }
    return variance_threshold_decide(mean_square(trace.view()), cal);
}

namespace {

Decision listen(const NoiseTrace& trace, const CalibrationTable& cal, Seed coin_seed) {
    if (cal.expected_rx_variance_high > 0.0 && cal.expected_rx_variance_low > 0.0) {
        return variance_threshold_decide(trace, cal);
    }
    auto engine = make_engine(coin_seed);
    return {static_cast<int>(engine() & 1U), 0.0};
}

}  // namespace

std::vector<ThermodBitRecord> simulate_transmissions(std::size_t n, const ResistorPair& pair, const NoiseSpec& spec,
                                                     const AmplifierModel& amp, const ChannelModel& ch, Seed seed,
                                                     const Execution& exec) {
    pair.validate();
    spec.validate_source();
    if (spec.samples_per_bit == 0) {
        throw std::invalid_argument("samples_per_bit must be >= 1");
    }
    amp.validate();
    ch.validate();
    const auto rx_cal = calibrate(pair, spec, amp, ch, Path::Receiver);
    const auto eve_cal = calibrate(pair, spec, amp, ch, Path::Eavesdropper);
    std::vector<ThermodBitRecord> records(n);
    parallel_for(n, exec, [&](std::size_t i) {
        const Seed bit_seed = derive_seed(seed, Stream::TransmitBit, i);
        auto engine = make_engine(derive_seed(bit_seed, Stream::ExchangeBit));
        const int bit = static_cast<int>(engine() & 1U);
        const auto tx = transmit_bit(bit, pair, spec, amp, ch, bit_seed);
        auto& r = records[i];
        r.bit = bit;
        r.rx_mean_square = mean_square(tx.rx.view());
        r.eve_mean_square = mean_square(tx.eve.view());
        r.rx = listen(tx.rx, rx_cal, derive_seed(bit_seed, Stream::ReceiverNoise, 1));
        r.eve = listen(tx.eve, eve_cal, derive_seed(bit_seed, Stream::EveCoin));
    });
    return records;
}

}  // namespace kljnlab
