#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "kljnlab/errstat.hpp"

namespace kljnlab {

struct ComponentPower {
    std::string name;
    double watts = 0.0;
};

/// Component powers for both systems. None of these numbers are measured
/// data; default_budget() is an illustrative placeholder.
struct PowerBudget {
    std::vector<ComponentPower> kljn_components;
    double amp_watts = 0.0;
    double proc_watts = 0.0;
    double antenna_watts = 0.0;
    double bit_period = 1.0;  // s

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
};

/// RNG 0.1 W, switches 0.02 W, measurement 0.3 W, statistics 0.08 W;
/// amplifier 1.0 W, processing 0.4 W, antenna 0 W; 5 s bit period
/// (10^4 samples at 2 kHz).
PowerBudget default_budget();

/// Sum of the auxiliary components running during a KLJN exchange.
double p_kljn(const PowerBudget& budget);

/// p_kljn + amplifier + processing + antenna.
double p_thermod(const PowerBudget& budget);

double system_power(const PowerBudget& budget, SystemKind system);

struct EnergyReport {
    double cycle_multiplier = 0.0;  // raw exchanges per final key bit: 2^k / secure_fraction
    double joules = 0.0;            // energy per final key bit
};

/// Energy to produce one final key bit after discarding (only
/// `secure_fraction` of exchanges are kept) and k PA rounds.
/// Throws NoSecureBitsError for secure_fraction == 0 and std::domain_error
/// for secure_fraction outside (0, 1] or k >= 64.
EnergyReport energy_per_final_bit(const PowerBudget& budget, std::size_t k, double secure_fraction,
                                  SystemKind system);

}  // namespace kljnlab
