#include "kljnlab/power.hpp"

#include <cmath>
#include <stdexcept>

#include "kljnlab/errors.hpp"

namespace kljnlab {

namespace {

void require_nonnegative(double w, const std::string& field) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
        throw std::invalid_argument(field + " must be >= 0");
    }
}

}  // namespace

void PowerBudget::validate() const {
    for (std::size_t i = 0; i < kljn_components.size(); ++i) {
        require_nonnegative(kljn_components[i].watts, "power.kljn_components[" + std::to_string(i) + "].watts");
    }
    require_nonnegative(amp_watts, "power.amp_watts");
    require_nonnegative(proc_watts, "power.proc_watts");
    require_nonnegative(antenna_watts, "power.antenna_watts");
    if (!(bit_period > 0.0) || !std::isfinite(bit_period)) {
        throw std::invalid_argument("power.bit_period must be > 0");
    }
}

PowerBudget default_budget() {
    PowerBudget b;
    b.kljn_components = {{"rng", 0.1}, {"switches", 0.02}, {"measurement", 0.3}, {"statistics", 0.08}};
    b.amp_watts = 1.0;
    b.proc_watts = 0.4;
    b.antenna_watts = 0.0;
    b.bit_period = 5.0;
    return b;
}

double p_kljn(const PowerBudget& budget) {
    double total = 0.0;
    for (const auto& c : budget.kljn_components) {
        total += c.watts;
    }
    return total;
}

double p_thermod(const PowerBudget& budget) {
    return p_kljn(budget) + budget.amp_watts + budget.proc_watts + budget.antenna_watts;
}

double system_power(const PowerBudget& budget, SystemKind system) {
    return system == SystemKind::Kljn ? p_kljn(budget) : p_thermod(budget);
}

EnergyReport energy_per_final_bit(const PowerBudget& budget, std::size_t k, double secure_fraction,
                                  SystemKind system) {
    if (secure_fraction == 0.0) {
        throw NoSecureBitsError();
    }
    if (!(secure_fraction > 0.0 && secure_fraction <= 1.0)) {
        throw std::domain_error("secure_fraction must be in (0, 1]");
    }
    if (k >= 64) {
        throw std::domain_error("k must be < 64");
    }
    EnergyReport r;
    r.cycle_multiplier = std::ldexp(1.0, static_cast<int>(k)) / secure_fraction;
    r.joules = r.cycle_multiplier * budget.bit_period * system_power(budget, system);
    return r;
}

}  // namespace kljnlab
