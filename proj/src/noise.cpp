#include "kljnlab/noise.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace kljnlab {

void NoiseSpec::validate() const {
    validate_source();
    if (samples_per_bit < 2) {
        throw std::invalid_argument("noise.samples_per_bit must be >= 2");
    }
}

void NoiseSpec::validate_source() const {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::invalid_argument("noise.temperature must be > 0");
    }
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw std::invalid_argument("noise.bandwidth must be > 0");
    }
    if (!(sampling_rate >= 2.0 * bandwidth) || !std::isfinite(sampling_rate)) {
        throw std::invalid_argument("noise.sampling_rate must be >= 2 * bandwidth");
    }
}

double NoiseSpec::variance_per_ohm() const noexcept {
    return normalized ? 1.0 : 4.0 * kBoltzmann * temperature * bandwidth;
}

double johnson_variance(double resistance, const NoiseSpec& spec) {
    if (resistance < 0.0 || std::isnan(resistance)) {
        throw std::domain_error("resistance must be >= 0, got " + std::to_string(resistance));
    }
    return spec.variance_per_ohm() * resistance;
}

NoiseTrace generate_trace(double resistance, const NoiseSpec& spec, Seed seed) {
    return generate_trace(resistance, spec, seed, spec.samples_per_bit);
}

NoiseTrace generate_trace(double resistance, const NoiseSpec& spec, Seed seed, std::size_t samples) {
    spec.validate_source();
    const double sigma = std::sqrt(johnson_variance(resistance, spec));
    NoiseTrace trace{std::vector<double>(samples, 0.0), spec.dt()};
    if (sigma == 0.0) {
        return trace;
    }
    auto engine = make_engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& s : trace.samples) {
        s = sigma * gauss(engine);
    }
    return trace;
}

double mean_square(std::span<const double> xs) noexcept {
    if (xs.empty()) {
        return 0.0;
    }
    double acc = 0.0;
    for (const double x : xs) {
        acc += x * x;
    }
    return acc / static_cast<double>(xs.size());
}

}  // namespace kljnlab
