#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "kljnlab/errstat.hpp"
#include "kljnlab/stats.hpp"

using namespace kljnlab;

namespace {

// Independent oracle: composite Simpson on the chi-square density after the
// substitution x = u^2, which removes the x^(-1/2) singularity at N = 1.
// Returns P(mean square of N unit-variance samples lies in [a, b]).
double chi_square_mass(std::size_t n, double a, double b) {
    const double k = static_cast<double>(n);
    const double log_norm = (k / 2.0) * std::log(2.0) + std::lgamma(k / 2.0);
    auto f = [&](double u) {
        if (u <= 0.0) return n == 1 ? 2.0 * std::exp(-log_norm) : 0.0;
        return std::exp(std::log(2.0) + (k - 1.0) * std::log(u) - u * u / 2.0 - log_norm);
    };
    const double ua = std::sqrt(k * a);
    const double ub = std::sqrt(k * b);
    constexpr int m = 40'000;
    const double h = (ub - ua) / m;
    double s = f(ua) + f(ub);
    for (int i = 1; i < m; ++i) s += f(ua + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

double oracle_ber(double ratio, std::size_t n) {
    const double t = std::sqrt(ratio);
    const double k = static_cast<double>(n);
    const double top = std::max(t, 1.0) * (1.0 + 60.0 / std::sqrt(k)) + 60.0 / k;
    const double false_high = chi_square_mass(n, t, top);        // low variance 1 above t
    const double false_low = chi_square_mass(n, 0.0, t / ratio);  // high variance below t
    return 0.5 * (false_high + false_low);
}

}  // namespace

TEST_CASE("analytic_ber against chi-square quadrature") {
    for (const double ratio : {1.2, 2.0, 10.0}) {
        for (const std::size_t n : {1, 2, 5, 10, 100, 300}) {
            const double o = oracle_ber(ratio, n);
            if (o < 1e-250) continue;
            INFO("ratio=" << ratio << " N=" << n);
            CHECK(analytic_ber(ratio, n) == doctest::Approx(o).epsilon(1e-6));
        }
    }
}

TEST_CASE("analytic_ber edge behaviour") {
    CHECK(analytic_ber(1.0, 100) == 0.5);
    CHECK(analytic_ber(0.5, 100) == 0.5);
    CHECK(analytic_ber(1.0 + 1e-9, 1) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(analytic_ber(1.01, 1) == doctest::Approx(0.5).epsilon(0.01));
    CHECK_THROWS_AS(analytic_ber(2.0, 0), std::domain_error);
    double prev = 0.5;
    for (std::size_t n = 1; n <= 200; ++n) {
        const double b = analytic_ber(10.0, n);
        CHECK(b < prev);
        prev = b;
    }
    prev = 0.5;
    for (double r = 1.1; r < 20.0; r *= 1.3) {
        const double b = analytic_ber(r, 20);
        CHECK(b < prev);
        prev = b;
    }
}

TEST_CASE("required_samples") {
    for (const double ratio : {1.5, 2.0, 10.0}) {
        for (const double target : {1e-2, 1e-3, 1e-6, 1e-8}) {
            const auto n = required_samples(ratio, target);
            CHECK(analytic_ber(ratio, n) <= target);
            if (n > 1) CHECK(analytic_ber(ratio, n - 1) > target);
        }
    }
    CHECK(required_samples(10.0, 0.5) == 1);
    CHECK_THROWS_AS(required_samples(1.0, 1e-3), std::domain_error);
    CHECK_THROWS_AS(required_samples(10.0, 0.0), std::domain_error);
}

TEST_CASE("detector_variance_ratio") {
    BerParams p;
    p.pair = {1.0e3, 1.0e4};
    CHECK(detector_variance_ratio(p) == doctest::Approx(10.0));
    p.system = SystemKind::Kljn;
    // LL = 500, mixed = 909.09..., HH = 5000
    CHECK(detector_variance_ratio(p) == doctest::Approx(1e4 / 1.1e4 * 2.0));
}

TEST_CASE("Monte Carlo BER agrees with the analytic value") {
    BerParams t;
    t.pair = {1.0, 2.0};
    t.spec.normalized = true;
    constexpr std::size_t trials = 40'000;
    const auto tp = monte_carlo_ber(t, 30, trials, 1);
    CHECK(std::abs(*tp.ber_monte_carlo - tp.ber_analytic) < 5.0 * stats::proportion_sigma(tp.ber_analytic, trials));

    BerParams k;
    k.system = SystemKind::Kljn;
    k.pair = {1.0e3, 1.0e4};
    const auto kp = monte_carlo_ber(k, 20, trials, 2);
    CHECK(kp.ber_analytic > 1e-3);
    CHECK(std::abs(*kp.ber_monte_carlo - kp.ber_analytic) < 5.0 * stats::proportion_sigma(kp.ber_analytic, trials));

    t.pair = {1.0, 1.01};
    const auto near = monte_carlo_ber(t, 1, trials, 3);
    CHECK(std::abs(*near.ber_monte_carlo - 0.5) < 0.02);

    CHECK_THROWS_AS(monte_carlo_ber(t, 1, 0, 3), std::invalid_argument);
    CHECK_THROWS_AS(monte_carlo_ber(t, 0, 10, 3), std::invalid_argument);
}

TEST_CASE("log BER is close to affine in N") {
    std::vector<double> xs{50, 100, 200, 400}, ys;
    for (double n : xs) ys.push_back(std::log(analytic_ber(10.0, std::size_t(n))));
    CHECK(fit_line(xs, ys).r_squared > 0.99);
}

TEST_CASE("BER is the same in normalized and physical units") {
    BerParams phys;
    phys.pair = {1.0e3, 2.0e3};
    BerParams norm = phys;
    norm.spec.normalized = true;
    CHECK(analytic_point(phys, 50).ber_analytic == doctest::Approx(analytic_point(norm, 50).ber_analytic));
    const auto a = monte_carlo_ber(phys, 50, 5000, 4);
    const auto b = monte_carlo_ber(norm, 50, 5000, 4);
    CHECK(*a.ber_monte_carlo == doctest::Approx(*b.ber_monte_carlo).epsilon(0.02));
}

TEST_CASE("fit_line") {
    const std::vector<double> xs{0, 1, 2, 3};
    const std::vector<double> ys{1, 3, 5, 7};
    const auto f = fit_line(xs, ys);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.r_squared == doctest::Approx(1.0));
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(fit_line(one, one), std::invalid_argument);
    CHECK_THROWS_AS(fit_line(xs, one), std::invalid_argument);
    const std::vector<double> flat{2, 2};
    CHECK_THROWS_AS(fit_line(flat, std::vector<double>{1, 2}), std::invalid_argument);
}
