#ifndef HYDROGEO_ANALYTIC_KPE_HPP
#define HYDROGEO_ANALYTIC_KPE_HPP

#include "hydrogeo/core/parameters.hpp"

namespace hydrogeo {

/// Inputs of the storage-equation coefficient algebra for a uniformly hydrated, loaded sample.
struct KpeSample {
    double permeability;          // [m2]
    double rate_constant;         // k0 including the Arrhenius factor [mol/(m2 Pa s)]
    double surface_area;          // A_s0 [1/m]
    double hydrate_saturation;    // S_h
    double effective_porosity;    // phi_e
    double water_fraction;        // S_w,e; the gas fraction is 1 - S_w,e
    double biot;                  // alpha
    double matrix_compliance;     // C_m = 1 / (uniaxial drained modulus) [1/Pa]
    double grain_modulus;         // B_sh [Pa]
    double water_bulk_modulus;    // B_w
    double gas_bulk_modulus;      // B_g
    double water_density;
    double gas_density;
    double hydrate_density;
    double water_viscosity;
    double gas_viscosity;
    double water_molar_mass;
    double methane_molar_mass;
    double hydrate_molar_mass;
    double hydration_number;
    double load;                  // q [Pa], compression positive
    double equilibrium_pressure;  // P_e [Pa]
};

struct KpeCoefficients {
    double storativity;        // S [1/Pa]
    double reaction;           // C [1/(Pa s)]
    double matrix_compliance;  // C_m [1/Pa]
    double mobility_viscosity; // mu_f [Pa s]
    double cv;                 // [m2/s]
    double cr;                 // [1/s]
    double initial_pressure;   // P0 [Pa]
    double equilibrium_pressure;
    double theta;              // sqrt(C_r / C_v) [1/m]
};

/// Throws ConfigError when the storage denominator vanishes.
KpeCoefficients kpe_coefficients(const KpeSample& s);

/// Sample built from simulator parameters; the uniaxial compliance follows E_sh(S_h) and nu.
KpeSample kpe_sample(const MaterialParameters& p, double temperature, double hydrate_saturation, double effective_porosity,
                     double water_fraction, double load, double equilibrium_pressure);

/// P0 and the Table-style coefficients with C_r forced from outside; used by the calibration below.
struct KpeCalibration {
    double matrix_compliance;   // C_m from the initial-pressure condition
    double youngs_modulus;      // E_sh reproducing C_m in uniaxial strain
    double grain_modulus;       // B_sh = B_m / (1 - alpha)
    double effective_porosity;  // phi_e reproducing the storativity
};

/**
 * @brief Solves for (C_m, phi_e) such that a reference row reproduces a target C_r and P0.
 *
 * Fields of `base` other than matrix_compliance, grain_modulus and
 * effective_porosity are used as given.
 */
KpeCalibration calibrate_kpe(const KpeSample& base, double poisson, double target_cr, double target_p0);

/// Decay wavenumber lambda_n = (n - 1/2) pi / L, n >= 1.
double kpe_eigenvalue(int n, double length);

/**
 * @brief Series solution of P_t = C_v P_zz + C_r (P_e - P) with P(0,t) = P0,
 * P_z(L,t) = 0 and P(z,0) = P0.
 *
 * Terms are added until |term| < tol after at least min_terms.
 */
double kpe_pressure(double z, double t, const KpeCoefficients& c, double length, int min_terms = 50,
                    double tol = 1e-12);

} // namespace hydrogeo

#endif
