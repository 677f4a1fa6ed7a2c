#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kljnlab/errors.hpp"
#include "kljnlab/errstat.hpp"
#include "kljnlab/stats.hpp"
#include "kljnlab/thermod.hpp"

using namespace kljnlab;

namespace {

const ResistorPair kPair{1.0e3, 1.0e4};

NoiseSpec normalized(std::size_t n) {
    NoiseSpec s;
    s.normalized = true;
    s.samples_per_bit = n;
    return s;
}

double error_rate(const std::vector<ThermodBitRecord>& recs, bool eve) {
    std::size_t wrong = 0;
    for (const auto& r : recs) wrong += (eve ? r.eve.bit : r.rx.bit) != r.bit ? 1 : 0;
    return double(wrong) / double(recs.size());
}

}  // namespace

TEST_CASE("model validation") {
    CHECK_NOTHROW(AmplifierModel{}.validate());
    CHECK_THROWS_AS((AmplifierModel{-1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((AmplifierModel{1.0, -1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((AmplifierModel{1.0, 0.0, 1.5}.validate()), std::invalid_argument);
    ChannelModel ch;
    CHECK_NOTHROW(ch.validate());
    ch.environment_noise_variance = -1.0;
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
    ch.environment_noise_variance = 0.0;
    ch.delay_taps = {{0, 0.5}};
    CHECK_THROWS_AS(ch.validate(), std::invalid_argument);
    ch.delay_taps = {{3, 0.5}, {7, -0.2}};
    CHECK(ch.tap_energy() == doctest::Approx(1.29));
    CHECK(ch.max_delay() == 7);
}

TEST_CASE("identity channel: receiver and eavesdropper see the same broadcast") {
    const auto spec = normalized(1000);
    const auto t = transmit_bit(1, kPair, spec, {}, {}, 42);
    REQUIRE(t.rx.size() == 1000);
    REQUIRE(t.eve.size() == 1000);
    for (std::size_t i = 0; i < t.rx.size(); ++i) CHECK(t.rx.samples[i] == t.eve.samples[i]);
}

TEST_CASE("received variance ratio tracks alpha") {
    const auto spec = normalized(200'000);
    const auto hi = transmit_bit(1, kPair, spec, {}, {}, 1);
    const auto lo = transmit_bit(0, kPair, spec, {}, {}, 2);
    const double tol = 5.0 * std::sqrt(2.0 / 200'000.0);
    CHECK(std::abs(mean_square(hi.rx.samples) / kPair.r_high - 1.0) < tol);
    CHECK(std::abs(mean_square(lo.rx.samples) / kPair.r_low - 1.0) < tol);
}

TEST_CASE("calibrate closed forms") {
    const auto spec = normalized(100);
    const auto id = calibrate(kPair, spec, {}, {}, Path::Receiver);
    CHECK(id.expected_rx_variance_low == doctest::Approx(1e3));
    CHECK(id.expected_rx_variance_high == doctest::Approx(1e4));
    CHECK(id.valid());
    CHECK(id.threshold() == doctest::Approx(std::sqrt(1e7)));

    ChannelModel ch;
    ch.environment_noise_variance = 500.0;
    ch.gain_to_eavesdropper = 0.5;
    const auto env = calibrate(kPair, spec, {}, ch, Path::Eavesdropper);
    CHECK(env.expected_rx_variance_low == doctest::Approx(0.25 * 1e3 + 500.0));
    CHECK(env.expected_rx_variance_high == doctest::Approx(0.25 * 1e4 + 500.0));

    ChannelModel tap;
    tap.delay_taps = {{5, 0.6}};
    const auto t = calibrate(kPair, spec, {}, tap, Path::Receiver);
    CHECK(t.expected_rx_variance_low == doctest::Approx(1.36e3));

    AmplifierModel amp{2.0, 100.0, 0.1, 0.0};
    const auto a = calibrate(kPair, spec, amp, {}, Path::Receiver);
    CHECK(a.expected_rx_variance_low == doctest::Approx(4.0 * 1.01 * 1e3 + 100.0));

    ChannelModel dark;
    dark.gain_to_eavesdropper = 0.0;
    const auto none = calibrate(kPair, spec, {}, dark, Path::Eavesdropper);
    CHECK_FALSE(none.valid());
    CHECK(none.expected_rx_variance_low == 0.0);
}

TEST_CASE("calibration matches the empirical variance through taps, ripple and noise") {
    const auto spec = normalized(400'000);
    AmplifierModel amp{1.5, 200.0, 0.0, 0.0};
    ChannelModel ch;
    ch.delay_taps = {{3, 0.5}, {11, 0.25}};
    ch.environment_noise_variance = 300.0;
    ch.gain_to_receiver = 0.8;
    const auto cal = calibrate(kPair, spec, amp, ch, Path::Receiver);
    const auto t = transmit_bit(0, kPair, spec, amp, ch, 9);
    CHECK(std::abs(mean_square(t.rx.samples) / cal.expected_rx_variance_low - 1.0) < 0.03);
}

TEST_CASE("variance_threshold_decide") {
    const CalibrationTable cal{1.0, 16.0};
    CHECK(cal.threshold() == doctest::Approx(4.0));
    CHECK(variance_threshold_decide(NoiseTrace{std::vector<double>(10, 3.0), 1.0}, cal).bit == 1);
    CHECK(variance_threshold_decide(NoiseTrace{std::vector<double>(10, 0.5), 1.0}, cal).bit == 0);
    // mean square 4.0 sits exactly on the threshold
    CHECK(variance_threshold_decide(NoiseTrace{std::vector<double>(10, 2.0), 1.0}, cal).bit == 1);
    CHECK_THROWS_AS(variance_threshold_decide(NoiseTrace{{}, 1.0}, cal), StructuralError);
    CHECK_THROWS_AS(variance_threshold_decide(1.0, CalibrationTable{0.0, 1.0}), std::domain_error);
    CHECK(variance_threshold_decide(16.0, cal).log_likelihood_margin > 0.0);
    CHECK(variance_threshold_decide(1.0, cal).log_likelihood_margin == doctest::Approx(std::log(4.0)));
}

TEST_CASE("receiver BER is tiny at alpha 10 and N 100") {
    const auto recs = simulate_transmissions(100'000, kPair, normalized(100), {}, {}, 5);
    CHECK(error_rate(recs, false) < 1e-3);
}

TEST_CASE("Monte Carlo BER falls with samples per bit and with alpha") {
    BerParams p;
    p.pair = {1.0, 1.5};
    p.spec = normalized(1);
    double previous = 1.0;
    std::size_t j = 0;
    for (const std::size_t n : {10, 30, 100, 300}) {
        const auto pt = monte_carlo_ber(p, n, 20'000, splitmix64(++j));
        const double sigma = stats::proportion_sigma(pt.ber_analytic, 20'000);
        CHECK(*pt.ber_monte_carlo < previous);
        CHECK(std::abs(*pt.ber_monte_carlo - pt.ber_analytic) < 5.0 * sigma + 1e-4);
        previous = *pt.ber_monte_carlo;
    }
    previous = 1.0;
    for (const double alpha : {1.2, 1.5, 2.0, 3.0}) {
        p.pair = {1.0, alpha};
        const auto pt = monte_carlo_ber(p, 30, 20'000, splitmix64(++j));
        CHECK(*pt.ber_monte_carlo < previous);
        previous = *pt.ber_monte_carlo;
    }
}

TEST_CASE("eavesdropper with the same path decodes like the receiver") {
    ChannelModel ch;
    ch.environment_noise_variance = 2000.0;
    const auto recs = simulate_transmissions(20'000, kPair, normalized(50), {}, ch, 77);
    const double rx = error_rate(recs, false);
    const double eve = error_rate(recs, true);
    const double sigma = std::sqrt(2.0) * stats::proportion_sigma(std::max(rx, 1e-3), recs.size());
    CHECK(std::abs(rx - eve) < 5.0 * sigma);
}

TEST_CASE("environment noise degrades decoding monotonically") {
    double previous = -1.0;
    for (const double env : {0.0, 5e3, 2e4, 1e5}) {
        ChannelModel ch;
        ch.environment_noise_variance = env;
        const auto recs = simulate_transmissions(5000, kPair, normalized(20), {}, ch, 8);
        const double ber = error_rate(recs, false);
        CHECK(ber >= previous);
        previous = ber;
    }
    CHECK(previous > 0.05);
}

TEST_CASE("a dark eavesdropper path leaves only coin flips") {
    ChannelModel ch;
    ch.gain_to_eavesdropper = 0.0;
    const auto recs = simulate_transmissions(10'000, kPair, normalized(20), {}, ch, 3);
    CHECK(std::abs(error_rate(recs, true) - 0.5) < 5.0 * stats::proportion_sigma(0.5, 10'000));
    CHECK(error_rate(recs, false) < 0.01);
}
