#include "kljnlab/errstat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "kljnlab/errors.hpp"

namespace kljnlab {

namespace {

// P(S < x) where samples * S / variance ~ chi-square(samples).
double mean_square_cdf(double x, double variance, std::size_t samples) {
    if (x <= 0.0) {
        return 0.0;
    }
    const double k = static_cast<double>(samples);
    return boost::math::gamma_p(k / 2.0, k * x / (2.0 * variance));
}

double mean_square_sf(double x, double variance, std::size_t samples) {
    if (x <= 0.0) {
        return 1.0;
    }
    const double k = static_cast<double>(samples);
    return boost::math::gamma_q(k / 2.0, k * x / (2.0 * variance));
}

}  // namespace

double analytic_ber(double variance_ratio, std::size_t samples) {
    if (samples == 0) {
        throw std::domain_error("analytic_ber: samples must be >= 1");
    }
    if (!(variance_ratio > 1.0)) {
        return 0.5;
    }
    // Unit low variance; threshold at sqrt(ratio).
    const double threshold = std::sqrt(variance_ratio);
    const double false_high = mean_square_sf(threshold, 1.0, samples);
    const double false_low = mean_square_cdf(threshold, variance_ratio, samples);
    return 0.5 * (false_high + false_low);
}

double analytic_kljn_ber(const ResistorPair& pair, std::size_t samples) {
    if (samples == 0) {
        throw std::domain_error("analytic_kljn_ber: samples must be >= 1");
    }
    pair.validate();
    const double ll = level_resistance(LoopLevel::LL, pair);
    const double mx = level_resistance(LoopLevel::Mixed, pair);
    const double hh = level_resistance(LoopLevel::HH, pair);
    const double lower = std::sqrt(ll * mx);
    const double upper = std::sqrt(mx * hh);
    const double err_ll = mean_square_sf(lower, ll, samples);
    const double err_mx = mean_square_cdf(lower, mx, samples) + mean_square_sf(upper, mx, samples);
    const double err_hh = mean_square_cdf(upper, hh, samples);
    return 0.25 * err_ll + 0.5 * err_mx + 0.25 * err_hh;
}

std::size_t required_samples(double variance_ratio, double target_ber) {
    if (!(variance_ratio > 1.0)) {
        throw std::domain_error("required_samples: variance ratio must be > 1");
    }
    if (!(target_ber > 0.0)) {
        throw std::domain_error("required_samples: target BER must be > 0");
    }
    if (analytic_ber(variance_ratio, 1) <= target_ber) {
        return 1;
    }
    std::size_t lo = 1;  // analytic_ber(lo) > target
    std::size_t hi = 2;
    while (analytic_ber(variance_ratio, hi) > target_ber) {
        lo = hi;
        if (hi > (std::size_t{1} << 40)) {
            throw std::domain_error("required_samples: target not reachable");
        }
        hi *= 2;
    }
    while (hi - lo > 1) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (analytic_ber(variance_ratio, mid) > target_ber) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

double detector_variance_ratio(const BerParams& params) {
    if (params.system == SystemKind::Thermod) {
        const auto cal = calibrate(params.pair, params.spec, params.amp, params.channel, Path::Receiver);
        return cal.expected_rx_variance_high / cal.expected_rx_variance_low;
    }
    const double ll = level_resistance(LoopLevel::LL, params.pair);
    const double mx = level_resistance(LoopLevel::Mixed, params.pair);
    const double hh = level_resistance(LoopLevel::HH, params.pair);
    return std::min(mx / ll, hh / mx);
}

BerCurvePoint analytic_point(const BerParams& params, std::size_t samples) {
    BerCurvePoint point;
    point.samples_per_bit = samples;
    point.variance_ratio = detector_variance_ratio(params);
    point.ber_analytic = params.system == SystemKind::Kljn ? analytic_kljn_ber(params.pair, samples)
                                                           : analytic_ber(point.variance_ratio, samples);
    return point;
}

BerCurvePoint monte_carlo_ber(const BerParams& params, std::size_t samples, std::size_t trials, Seed seed,
                              const Execution& exec) {
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo_ber: trials must be >= 1");
    }
    if (samples == 0) {
        throw std::invalid_argument("monte_carlo_ber: samples must be >= 1");
    }
    NoiseSpec spec = params.spec;
    spec.samples_per_bit = samples;

    std::size_t errors = 0;
    if (params.system == SystemKind::Thermod) {
        const auto records = simulate_transmissions(trials, params.pair, spec, params.amp, params.channel, seed, exec);
        for (const auto& r : records) {
            errors += r.rx.bit != r.bit ? 1 : 0;
        }
    } else {
        const auto records = simulate_exchanges(trials, params.pair, spec, seed, exec);
        for (const auto& rec : records) {
            const auto level = classify_loop_level(rec, params.pair, spec);
            const auto alice_view = try_party_decode(rec.state.alice, level);
            const auto bob_view = try_party_decode(rec.state.bob, level);
            const bool ok = alice_view && bob_view && *alice_view == rec.state.bob && *bob_view == rec.state.alice;
            errors += ok ? 0 : 1;
        }
    }

    BerCurvePoint point = analytic_point(params, samples);
    point.trials = trials;
    point.ber_monte_carlo = static_cast<double>(errors) / static_cast<double>(trials);
    return point;
}

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) {
        throw std::invalid_argument("fit_line: length mismatch");
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("fit_line: need at least two points");
    }
    const auto n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("fit_line: all x values are equal");
    }
    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

}  // namespace kljnlab
