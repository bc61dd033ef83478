#ifndef HYDROGEO_KINETICS_KINETICS_HPP
#define HYDROGEO_KINETICS_KINETICS_HPP

#include "hydrogeo/core/parameters.hpp"

namespace hydrogeo {

/// Source terms of the hydrate phase change, positive when mass is released.
struct KineticRates {
    double methane = 0.0;  // g^CH4 [kg/(m3 s)]
    double water = 0.0;    // g^H2O [kg/(m3 s)]
    double hydrate = 0.0;  // g^Hyd [kg/(m3 s)]
    double heat = 0.0;     // Q_h [W/m3]
    double equilibrium_pressure = 0.0;
    double rate_constant = 0.0;
    double reaction_area = 0.0;  // A_rs [1/m]
};

struct KineticState {
    double gas_pressure;
    double temperature;
    double water_saturation;
    double hydrate_saturation;
    double porosity;
    double permeability;
    /// Fugacity to use; a negative value asks kinetic_rates to evaluate it.
    double fugacity = -1.0;
    /// Time step used by the rate limiter; zero disables limiting.
    double dt = 0.0;
    /// Free methane mass available per unit bulk volume, bounds reformation when limiting [kg/m3].
    double methane_content = 0.0;
};

/// Kamath-Holder form A1 exp(A2 - A3 / T).
double equilibrium_pressure(double temperature, double a1, double a2, double a3);

/// Arrhenius rate constant k0 exp(-(Delta E / R) / T).
double rate_constant(double temperature, double k0, double activation_temperature);

/// Equilibrium pressure honouring the configured override.
double equilibrium_pressure(double temperature, const KineticParameters& k);

/// Smooth bound |r| <= limit; exact away from the bound and zero when limit is zero.
double smooth_rate_limit(double rate, double limit);

KineticRates kinetic_rates(const KineticState& s, const MaterialParameters& p);

} // namespace hydrogeo

#endif
