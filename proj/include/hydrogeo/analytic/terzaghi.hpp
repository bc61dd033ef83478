#ifndef HYDROGEO_ANALYTIC_TERZAGHI_HPP
#define HYDROGEO_ANALYTIC_TERZAGHI_HPP

namespace hydrogeo {

struct TerzaghiCoefficients {
    double diffusivity;      // c [m2/s]
    double skempton;         // H_v [-]
    double uniaxial_modulus; // B_sv [Pa]
    double storage;          // S_v [1/Pa]
    double amplitude;        // P0_bar = L^2 / (2c) H_v sigma_rate [Pa]
};

/// Specific storage phi c_f + (alpha - phi)/B_sh + alpha^2 / B_sv for two mobile fluids.
double terzaghi_storage(double porosity, double water_saturation, double water_bulk, double gas_bulk, double biot,
                        double grain_modulus, double uniaxial_modulus);

TerzaghiCoefficients terzaghi_coefficients(double permeability, double mobility_viscosity, double biot,
                                           double uniaxial_modulus, double storage, double length,
                                           double stress_rate);

/// Wavenumber psi_m = (2m + 1) pi / (2L), m >= 0.
double terzaghi_wavenumber(int m, double length);

/**
 * @brief Pore pressure under a linearly ramped load.
 *
 * `depth` is measured downward from the loaded, drained face; the opposite
 * face is impermeable.
 */
double terzaghi_pressure(double depth, double t, const TerzaghiCoefficients& c, double length, int min_terms = 50,
                         double tol = 1e-12);

} // namespace hydrogeo

#endif
