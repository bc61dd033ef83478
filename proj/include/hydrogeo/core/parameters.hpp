#ifndef HYDROGEO_CORE_PARAMETERS_HPP
#define HYDROGEO_CORE_PARAMETERS_HPP

#include <limits>

namespace hydrogeo {

enum class DensityLaw {
    constant,
    exponential,            // rho_ref * exp((P - P_ref) / B)
    slightly_compressible,  // rho_ref * (1 + (P - P_ref) / B) in storage, rho_ref in transport
    real_gas,               // P M / (z R T), z from Peng-Robinson
    ideal_gas,              // P M / (R T)
};

enum class ViscosityLaw { constant, methane_sutherland, water_exponential };
enum class ConductivityLaw { constant, methane_polynomial, water_logarithmic };

struct FluidPhase {
    DensityLaw density_law = DensityLaw::constant;
    double density = 1000.0;             // reference density [kg/m3]
    double reference_pressure = 0.0;     // [Pa]
    double bulk_modulus = 2.2e9;         // [Pa]
    ViscosityLaw viscosity_law = ViscosityLaw::constant;
    double viscosity = 1e-3;             // [Pa s]
    ConductivityLaw conductivity_law = ConductivityLaw::constant;
    double conductivity = 0.6;           // [W/(m K)]
    double cp = 4186.0;                  // [J/(kg K)]
    double cv = 4186.0;                  // [J/(kg K)]
};

enum class CapillaryModel { brooks_corey, none };
enum class RelPermModel { burdine, constant };
enum class PermeabilityModel { hydrate_scaled, constant };
/// poroelastic: the tabulated rho_s(Delta P_eff, div u) law; storage_consistent replaces phi by phi_eff in the
/// pressure term and drops the 1/(1 - phi_eff) strain factor so the soil balance reproduces the linear storage model.
enum class SolidDensityLaw { constant, poroelastic, storage_consistent };

struct SoilParameters {
    double permeability = 1e-13;         // K_0 [m2]
    double porosity = 0.3;               // phi_0
    CapillaryModel capillary_model = CapillaryModel::brooks_corey;
    double entry_pressure = 5e4;         // [Pa]
    double brooks_corey_lambda = 1.2;
    double residual_water = 0.0;
    double residual_gas = 0.0;
    double m = 3.0;
    double a = 2.0;
    double capillary_cap_factor = 50.0;
    RelPermModel relperm_model = RelPermModel::burdine;
    double krw = 0.5;
    double krg = 0.5;
    PermeabilityModel permeability_model = PermeabilityModel::hydrate_scaled;
    double permeability_floor = 1e-22;   // [m2]
    double tortuosity_exponent = 1.0;
    SolidDensityLaw density_law = SolidDensityLaw::constant;
    double density = 2100.0;             // [kg/m3]
    double cv = 800.0;
    double conductivity = 1.9;
    double saturation_epsilon = 1e-6;
};

struct HydrateParameters {
    double density = 900.0;
    double molar_mass = 0.119;
    double hydration_number = 5.75;
    double cv = 2700.0;
    double conductivity = 2.1;
    bool stoichiometric_molar_mass = false;  // use M_CH4 + N_Hyd M_H2O instead of molar_mass
};

struct ComponentParameters {
    double methane_molar_mass = 0.016;
    double water_molar_mass = 0.018;
};

enum class VleModel { henry_raoult, immiscible };

struct VleParameters {
    VleModel model = VleModel::henry_raoult;
    double henry_reference = 1.4e-5;          // [mol/(m3 Pa)]
    double henry_temperature_coefficient = 1600.0;  // C_H [K]
    double henry_reference_temperature = 298.15;
    double water_molar_volume = 1.8e-5;       // converts the Henry solubility to a mole fraction [m3/mol]
    double antoine_a = 8.07131;
    double antoine_b = 1730.63;
    double antoine_c = 233.426;
    double min_temperature = 250.0;           // validity window for Henry/Antoine
    double max_temperature = 400.0;
};

struct PengRobinsonParameters {
    double critical_temperature = 190.56;
    double critical_pressure = 4.599e6;
    double acentric_factor = 0.011;
};

struct DiffusionParameters {
    bool enabled = true;
    double gas_reference = 2.2e-5;            // D_g at the reference state [m2/s]
    double gas_reference_pressure = 101325.0;
    double gas_reference_temperature = 298.15;
    double gas_temperature_exponent = 1.823;
    double association_factor = 2.6;
    double solute_molar_volume = 37.7e-6;     // methane at its normal boiling point [m3/mol]
};

enum class KineticsMode { full, simplified };
enum class FugacityModel { peng_robinson, pressure };
enum class ReactionAreaRule { constant, phi_sh };
enum class HeatLaw { per_mole_hydrate, per_kg_methane, none };

struct KineticParameters {
    bool enabled = true;
    KineticsMode mode = KineticsMode::full;
    double rate_constant = 3.6e4;                 // k_reac^0 [mol/(m2 Pa s)]
    double activation_temperature = 9752.73;      // Delta E_a / R [K]
    double a1 = 1000.0;                           // [Pa]
    double a2 = 38.98;
    double a3 = 8533.8;                           // [K]
    double equilibrium_pressure_override = std::numeric_limits<double>::quiet_NaN();
    FugacityModel fugacity = FugacityModel::peng_robinson;
    ReactionAreaRule area_rule = ReactionAreaRule::phi_sh;
    double area_fraction = 1.0;                   // Gamma_r for the constant rule
    double reference_surface_area = 1e5;          // A_s0 for the simplified mode [1/m]
    HeatLaw heat_law = HeatLaw::per_mole_hydrate;
    double b1 = 56599.0;
    double b2 = 16.744;
    double heat_slope = -1050.0;                  // per-kg law: Q = slope * T + intercept [J/kg]
    double heat_intercept = 3527000.0;
    bool rate_limiting = true;
    double reformation_ramp = 0.0;                // min(S_g, S_w) over which reformation switches on; 0 is a hard gate
};

struct MechanicalParameters {
    double soil_youngs_modulus = 0.3e9;       // E_s0
    double hydrate_youngs_modulus = 1.35e9;   // E_h
    double poisson_ratio = 0.2;
    double b = 0.0;
    double c = 1.0;
    double d = 1.0;
    double reference_stress = 1e6;            // sigma_c0
    double biot = 0.6;
    double grain_modulus = std::numeric_limits<double>::quiet_NaN();  // B_sh; unset derives B_m / (1 - alpha)
    bool gravity = false;
};

struct ThermalParameters {
    bool isothermal = false;
    double reference_temperature = 273.15;
    // Heat gained per unit volume from surroundings the grid does not resolve, such as the
    // jacket of a 1D core: ambient_exchange * (ambient_temperature - T).
    double ambient_exchange = 0.0;        // [W/(m3 K)]
    double ambient_temperature = 273.15;  // [K]
};

struct MaterialParameters {
    SoilParameters soil;
    FluidPhase gas;
    FluidPhase water;
    HydrateParameters hydrate;
    ComponentParameters components;
    VleParameters vle;
    PengRobinsonParameters peng_robinson;
    DiffusionParameters diffusion;
    KineticParameters kinetics;
    MechanicalParameters mechanics;
    ThermalParameters thermal;
    double gravity = 9.81;
    bool flow_gravity = false;  // hydrostatic term in the phase potentials, z along the last grid axis

    /// Throws ConfigError if an invariant on moduli, fractions or exponents is violated.
    void validate() const;
};

/// Hydrate molar mass honouring the stoichiometric option.
double hydrate_molar_mass(const MaterialParameters& p);

/// Methane gas and liquid water laws of the reservoir parameter table.
MaterialParameters reservoir_defaults();

} // namespace hydrogeo

#endif
