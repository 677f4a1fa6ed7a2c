#include "kljnlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kljnlab::stats {

Moments moments(std::span<const double> xs) noexcept {
    Moments m;
    m.n = xs.size();
    if (xs.empty()) {
        return m;
    }
    double sum = 0.0;
    for (const double x : xs) {
        sum += x;
    }
    m.mean = sum / static_cast<double>(m.n);
    if (m.n > 1) {
        double ss = 0.0;
        for (const double x : xs) {
            ss += (x - m.mean) * (x - m.mean);
        }
        m.variance = ss / static_cast<double>(m.n - 1);
    }
    return m;
}

double welch_z(std::span<const double> a, std::span<const double> b) noexcept {
    const auto ma = moments(a);
    const auto mb = moments(b);
    const double se = std::sqrt(ma.variance / static_cast<double>(ma.n) + mb.variance / static_cast<double>(mb.n));
    if (se == 0.0) {
        return ma.mean == mb.mean ? 0.0 : HUGE_VAL;
    }
    return std::abs(ma.mean - mb.mean) / se;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
    std::vector<double> xa(a.begin(), a.end());
    std::vector<double> xb(b.begin(), b.end());
    std::sort(xa.begin(), xa.end());
    std::sort(xb.begin(), xb.end());
    const auto na = static_cast<double>(xa.size());
    const auto nb = static_cast<double>(xb.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < xa.size() && j < xb.size()) {
        const double x = std::min(xa[i], xb[j]);
        while (i < xa.size() && xa[i] <= x) ++i;
        while (j < xb.size() && xb[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double ks_critical(std::size_t n_a, std::size_t n_b, double alpha) noexcept {
    const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
    const auto na = static_cast<double>(n_a);
    const auto nb = static_cast<double>(n_b);
    return c * std::sqrt((na + nb) / (na * nb));
}

double two_sided_tail(double z) noexcept { return std::erfc(z / std::sqrt(2.0)); }

double proportion_sigma(double p, std::size_t n) noexcept {
    return n ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
}

}  // namespace kljnlab::stats
