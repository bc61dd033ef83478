#ifndef HYDROGEO_POROSITY_POROSITY_HPP
#define HYDROGEO_POROSITY_POROSITY_HPP

#include "hydrogeo/core/grid.hpp"
#include "hydrogeo/core/parameters.hpp"
#include "hydrogeo/geomech/mechanics_model.hpp"

#include <Eigen/Core>

namespace hydrogeo {

/// Per-cell reference state of the grain-density law, fixed at t = 0.
struct PorosityReference {
    Eigen::VectorXd porosity;
    Eigen::VectorXd effective_porosity;
    Eigen::VectorXd pressure;           // P_eff
    Eigen::VectorXd volumetric_strain;
    Eigen::VectorXd grain_modulus;      // B_sh
};

struct PorosityResult {
    Eigen::VectorXd porosity;
    long clamped = 0;  // cells pulled back into (0, 1)
};

/**
 * @brief Relative grain-mass excess Z with (1 - phi) rho_s = rho_s0 (1 - phi + Z).
 *
 * Coefficients use the reference porosities so Z is a function of
 * (P_eff, div u) alone; Z = 0 for the constant law.
 */
Eigen::VectorXd grain_excess(SolidDensityLaw law, double biot, const PorosityReference& ref,
                             const Eigen::VectorXd& pressure, const Eigen::VectorXd& volumetric_strain);

/**
 * @brief Implicit-Euler upwind finite-volume update of the soil mass balance.
 *
 * `excess_old`/`excess_new` are Z at both time levels. Boundary faces carry
 * the interior soil mass out with the outward solid velocity.
 */
PorosityResult step_porosity(const StructuredGrid& grid, const Eigen::VectorXd& porosity_old,
                             const Eigen::VectorXd& excess_old, const Eigen::VectorXd& excess_new,
                             const FaceVelocities& velocity, double dt);

/**
 * @brief Right-hand side of the effective-porosity evolution
 * (1/B_sh) dsigma/dt - (phi_e/B_sh) dP/dt + div((1 - phi_e) v_s) - q_h / rho_sh.
 */
double effective_porosity_rate(double stress_rate, double pressure_rate, double advective_divergence,
                               double hydrate_rate, double grain_modulus, double effective_porosity,
                               double composite_density);

/// B_sh per cell: the configured value, or B_m / (1 - alpha) from the composite Young's moduli.
Eigen::VectorXd grain_moduli(const MechanicalParameters& m, const Eigen::VectorXd& youngs);

} // namespace hydrogeo

#endif
