#ifndef HYDROGEO_CONSTITUTIVE_FLUID_HPP
#define HYDROGEO_CONSTITUTIVE_FLUID_HPP

#include "hydrogeo/core/parameters.hpp"

namespace hydrogeo {

enum class Phase { gas, water };

struct VleResult {
    double gas_methane = 1.0;    // chi_g^CH4
    double gas_water = 0.0;      // chi_g^H2O
    double water_methane = 0.0;  // chi_w^CH4
    double water_water = 1.0;    // chi_w^H2O
    double henry = 0.0;          // [1/Pa], mole-fraction form
    double saturation_pressure = 0.0;  // [Pa]
};

struct PengRobinsonResult {
    double z;
    double fugacity_coefficient;
};

/// Henry coefficient in mole-fraction form (chi_w^CH4 = H chi_g^CH4 P_g), van't Hoff in T.
double henry_constant(double temperature, const VleParameters& p);

/// Water vapour pressure from the Antoine equation.
double antoine_psat(double temperature, const VleParameters& p);

/// Number of evaluations that fell outside the configured Henry/Antoine temperature window.
long vle_range_warnings();

/// Mole fractions from Henry's and Raoult's laws plus the two phase sums.
VleResult vle(double gas_pressure, double temperature, const VleParameters& p);

/// Same with explicit coefficients; H and P_sat both zero gives the immiscible limit.
VleResult vle_from_coefficients(double gas_pressure, double henry, double psat);

/// Largest-root compressibility factor and fugacity coefficient of methane.
PengRobinsonResult peng_robinson(double pressure, double temperature, const PengRobinsonParameters& p);

double peng_robinson_fugacity(double pressure, double temperature, const PengRobinsonParameters& p);

/// Density used in the storage term. `z` is only read by the real-gas law.
double phase_density(const FluidPhase& f, double pressure, double temperature, double molar_mass, double z = 1.0);

/// Density used in fluxes and well terms (the reference density for slightly compressible phases).
double phase_transport_density(const FluidPhase& f, double pressure, double temperature, double molar_mass,
                               double z = 1.0);

double phase_viscosity(const FluidPhase& f, double temperature);

double phase_conductivity(const FluidPhase& f, double temperature);

double specific_enthalpy(double cp, double temperature, double reference_temperature);

double specific_internal_energy(double cv, double temperature, double reference_temperature);

/// Volume-weighted bulk conductivity of soil, hydrate and the two mobile phases.
double effective_conductivity(double phi, double sw, double sh, double k_soil, double k_hydrate, double k_water,
                              double k_gas);

/**
 * @brief Molecular diffusion coefficient of the dissolved/vapour species.
 *
 * Gas: reduced Slattery-Bird form D = D_ref (P_ref / P) (T / T_ref)^n.
 * Water: Wilke-Chang with the water viscosity supplied by the caller.
 */
double diffusion_coefficient(Phase phase, double pressure, double temperature, const DiffusionParameters& p,
                             double water_viscosity = 1e-3, double water_molar_mass = 0.018);

} // namespace hydrogeo

#endif
