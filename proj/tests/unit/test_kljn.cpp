#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kljnlab/errors.hpp"
#include "kljnlab/kljn.hpp"
#include "kljnlab/stats.hpp"

using namespace kljnlab;

namespace {

const ResistorPair kPair{1.0e3, 1.0e4};

NoiseTrace constant(std::size_t n, double v) { return {std::vector<double>(n, v), 5e-4}; }

}  // namespace

TEST_CASE("ResistorPair invariants") {
    CHECK(kPair.alpha() == 10.0);
    CHECK_NOTHROW(kPair.validate());
    CHECK_THROWS_AS((ResistorPair{1.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ResistorPair{0.0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((ResistorPair{2.0, 1.0}.validate()), std::invalid_argument);
}

TEST_CASE("BitState labels and classes") {
    const BitState ll{Resistor::Low, Resistor::Low};
    const BitState lh{Resistor::Low, Resistor::High};
    const BitState hl{Resistor::High, Resistor::Low};
    const BitState hh{Resistor::High, Resistor::High};
    CHECK(std::string(ll.label().data()) == "00");
    CHECK(std::string(lh.label().data()) == "01");
    CHECK(std::string(hl.label().data()) == "10");
    CHECK(std::string(hh.label().data()) == "11");
    CHECK(ll.classify() == StateClass::NonSecureLL);
    CHECK(hh.classify() == StateClass::NonSecureHH);
    CHECK(lh.classify() == StateClass::SecureMixed);
    CHECK(hl.classify() == StateClass::SecureMixed);
}

TEST_CASE("loop_signals examples") {
    const auto zero = loop_signals(constant(10, 0.0), constant(10, 0.0), 1e3, 1e4);
    for (std::size_t t = 0; t < 10; ++t) {
        CHECK(zero.u_w.samples[t] == 0.0);
        CHECK(zero.i_w.samples[t] == 0.0);
    }

    NoiseSpec spec;
    spec.samples_per_bit = 100;
    const auto u_a = generate_trace(1e3, spec, 5);
    const auto half = loop_signals(u_a, constant(100, 0.0), 1e3, 1e3);
    for (std::size_t t = 0; t < 100; ++t) {
        CHECK(half.u_w.samples[t] == doctest::Approx(u_a.samples[t] / 2.0));
        CHECK(half.i_w.samples[t] == doctest::Approx(u_a.samples[t] / 2e3));
    }

    CHECK_THROWS_AS(loop_signals(constant(3, 0.0), constant(4, 0.0), 1.0, 1.0), StructuralError);
    CHECK_THROWS_AS(loop_signals(constant(3, 0.0), constant(3, 0.0), 0.0, 0.0), std::domain_error);
}

TEST_CASE("property: swapping the parties negates i_w and keeps u_w") {
    NoiseSpec spec;
    spec.samples_per_bit = 257;
    for (std::uint64_t k = 0; k < 20; ++k) {
        const double r_a = 100.0 + double(splitmix64(k) % 100000);
        const double r_b = 100.0 + double(splitmix64(k + 1000) % 100000);
        const auto u_a = generate_trace(r_a, spec, splitmix64(2 * k));
        const auto u_b = generate_trace(r_b, spec, splitmix64(2 * k + 1));
        const auto ab = loop_signals(u_a, u_b, r_a, r_b);
        const auto ba = loop_signals(u_b, u_a, r_b, r_a);
        for (std::size_t t = 0; t < u_a.size(); ++t) {
            REQUIRE(ba.i_w.samples[t] == -ab.i_w.samples[t]);
            REQUIRE(ba.u_w.samples[t] == ab.u_w.samples[t]);
        }
    }
}

TEST_CASE("loop variances converge to the propagated source variances") {
    NoiseSpec spec;
    constexpr std::size_t n = 200'000;
    const double c = spec.variance_per_ohm();
    for (const auto [r_a, r_b] : {std::pair{1e3, 1e4}, std::pair{1e3, 1e3}, std::pair{1e4, 1e4}}) {
        const auto u_a = generate_trace(r_a, spec, 11, n);
        const auto u_b = generate_trace(r_b, spec, 12, n);
        const auto loop = loop_signals(u_a, u_b, r_a, r_b);
        const double var_u = c * r_a * r_b / (r_a + r_b);
        const double var_i = c / (r_a + r_b);
        const double tol = 5.0 * std::sqrt(2.0 / n);
        CHECK(std::abs(mean_square(loop.u_w.samples) / var_u - 1.0) < tol);
        CHECK(std::abs(mean_square(loop.i_w.samples) / var_i - 1.0) < tol);
        // Var(u_w) / Var(i_w) -> r_a * r_b.
        CHECK(std::abs(mean_square(loop.u_w.samples) / mean_square(loop.i_w.samples) / (r_a * r_b) - 1.0) <
              2.0 * tol);
    }
}

TEST_CASE("run_bit_exchange LL level and record fields") {
    NoiseSpec spec;
    spec.samples_per_bit = 100'000;
    const auto rec = run_bit_exchange(kPair, spec, {Resistor::Low, Resistor::Low}, 77);
    CHECK(rec.samples_used == 100'000);
    CHECK(std::abs(rec.u_w_mean_square / (spec.variance_per_ohm() * 500.0) - 1.0) < 0.05);
    CHECK(rec.u_w_mean_square >= 0.0);
    CHECK(rec.i_w_mean_square >= 0.0);
}

TEST_CASE("fused exchange kernel matches the trace-materializing reference bit for bit") {
    NoiseSpec spec;
    spec.samples_per_bit = 3000;
    for (const auto& state : {BitState{Resistor::Low, Resistor::Low}, BitState{Resistor::Low, Resistor::High},
                              BitState{Resistor::High, Resistor::Low}, BitState{Resistor::High, Resistor::High}}) {
        const auto fast = run_bit_exchange(kPair, spec, state, 1234);
        const auto ref = run_bit_exchange_reference(kPair, spec, state, 1234);
        CHECK(fast.u_w_mean_square == ref.u_w_mean_square);
        CHECK(fast.i_w_mean_square == ref.i_w_mean_square);
        CHECK(fast.samples_used == ref.samples_used);
    }
}

TEST_CASE("mixed states share theoretical statistics") {
    NoiseSpec spec;
    const double c = spec.variance_per_ohm();
    auto theory = [&](BitState s) {
        const double r_a = kPair.resistance(s.alice);
        const double r_b = kPair.resistance(s.bob);
        return std::pair{c * r_a * r_b / (r_a + r_b), c / (r_a + r_b)};
    };
    const auto hl_theory = theory({Resistor::High, Resistor::Low});
    const auto lh_theory = theory({Resistor::Low, Resistor::High});
    CHECK(hl_theory.first == doctest::Approx(lh_theory.first).epsilon(1e-15));
    CHECK(hl_theory.second == doctest::Approx(lh_theory.second).epsilon(1e-15));
    CHECK(level_of({Resistor::High, Resistor::Low}) == level_of({Resistor::Low, Resistor::High}));

    // Monte Carlo: 1000 bits each at N = 2000 must not reject equality at 5 sigma.
    spec.samples_per_bit = 2000;
    std::vector<double> hl, lh;
    for (std::size_t i = 0; i < 1000; ++i) {
        hl.push_back(run_bit_exchange(kPair, spec, {Resistor::High, Resistor::Low}, splitmix64(i)).u_w_mean_square);
        lh.push_back(
            run_bit_exchange(kPair, spec, {Resistor::Low, Resistor::High}, splitmix64(i + 5000)).u_w_mean_square);
    }
    CHECK(stats::welch_z(hl, lh) < 5.0);
}

TEST_CASE("classify_loop_level on exact theoretical values") {
    NoiseSpec spec;
    ExchangeRecord rec;
    rec.u_w_mean_square = spec.variance_per_ohm() * (kPair.r_low / 2.0);
    CHECK(classify_loop_level(rec, kPair, spec) == LoopLevel::LL);
    rec.u_w_mean_square = spec.variance_per_ohm() * (kPair.r_low * kPair.r_high / (kPair.r_low + kPair.r_high));
    CHECK(classify_loop_level(rec, kPair, spec) == LoopLevel::Mixed);
    rec.u_w_mean_square = spec.variance_per_ohm() * (kPair.r_high / 2.0);
    CHECK(classify_loop_level(rec, kPair, spec) == LoopLevel::HH);
    rec.u_w_mean_square = 0.0;
    CHECK(classify_loop_level(rec, kPair, spec) == LoopLevel::LL);
}

TEST_CASE("classification error rate at the default desk-scale parameters") {
    NoiseSpec spec;  // N = 1e4
    const auto records = simulate_exchanges(10'000, kPair, spec, 99);
    std::size_t wrong = 0;
    for (const auto& r : records) {
        wrong += classify_loop_level(r, kPair, spec) == level_of(r.state) ? 0 : 1;
    }
    CHECK(double(wrong) / 1e4 < 1e-3);
}

TEST_CASE("party_decode") {
    CHECK(party_decode(Resistor::High, LoopLevel::Mixed) == Resistor::Low);
    CHECK(party_decode(Resistor::Low, LoopLevel::Mixed) == Resistor::High);
    CHECK(party_decode(Resistor::Low, LoopLevel::LL) == Resistor::Low);
    CHECK(party_decode(Resistor::High, LoopLevel::HH) == Resistor::High);
    CHECK_THROWS_AS(party_decode(Resistor::Low, LoopLevel::HH), DecodeError);
    CHECK_THROWS_AS(party_decode(Resistor::High, LoopLevel::LL), DecodeError);
    CHECK_FALSE(try_party_decode(Resistor::Low, LoopLevel::HH).has_value());
}

TEST_CASE("loop-back: decoded peer sequences reconstruct both resistor sequences") {
    NoiseSpec spec;
    spec.samples_per_bit = 4000;
    const auto records = simulate_exchanges(500, kPair, spec, 3);
    std::size_t states_seen[4] = {0, 0, 0, 0};
    for (const auto& r : records) {
        const auto level = classify_loop_level(r, kPair, spec);
        REQUIRE(level == level_of(r.state));
        CHECK(party_decode(r.state.alice, level) == r.state.bob);
        CHECK(party_decode(r.state.bob, level) == r.state.alice);
        ++states_seen[2 * bit_of(r.state.alice) + bit_of(r.state.bob)];
    }
    for (auto n : states_seen) CHECK(n > 80);
}
