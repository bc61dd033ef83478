#ifndef HYDROGEO_CONSTITUTIVE_MECHANICS_HPP
#define HYDROGEO_CONSTITUTIVE_MECHANICS_HPP

#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/parameters.hpp"

#include <cmath>

namespace hydrogeo {

template <typename Scalar>
struct LameParameters {
    Scalar shear;   // G
    Scalar lambda;
};

/// Saturation-weighted pore pressure over the mobile phases.
template <typename Scalar>
Scalar effective_pressure(Scalar sw, Scalar sg, Scalar pw, Scalar pg)
{
    const Scalar mobile = sw + sg;
    if (!(mobile > Scalar(0)))
        throw DegenerateStateError("effective pressure undefined without mobile phases");
    return (sw * pw + sg * pg) / mobile;
}

template <typename Scalar>
Scalar biot_alpha(Scalar drained_bulk, Scalar grain_bulk)
{
    return Scalar(1) - drained_bulk / grain_bulk;
}

/// Composite Young's modulus E_s0 (sigma_c / sigma_c0)^b + c E_h S_h^d, sigma_c compression positive.
template <typename Scalar>
Scalar youngs_modulus_composite(Scalar sigma_c, Scalar sh, const MechanicalParameters& m)
{
    using std::max;
    using std::pow;
    const Scalar stress_term =
        m.b == 0.0 ? Scalar(1) : pow(max(sigma_c, Scalar(0)) / Scalar(m.reference_stress), m.b);
    const Scalar hydrate_term = m.d == 0.0 ? Scalar(1) : pow(max(sh, Scalar(0)), m.d);
    return Scalar(m.soil_youngs_modulus) * stress_term + Scalar(m.c * m.hydrate_youngs_modulus) * hydrate_term;
}

template <typename Scalar>
LameParameters<Scalar> lame_parameters(Scalar youngs, double poisson)
{
    if (!(poisson > -1.0 && poisson < 0.5))
        throw ConfigError("Poisson ratio must lie in (-1, 0.5)");
    return {youngs / Scalar(2.0 * (1.0 + poisson)),
            youngs * Scalar(poisson / ((1.0 + poisson) * (1.0 - 2.0 * poisson)))};
}

template <typename Scalar>
Scalar drained_bulk_modulus(Scalar youngs, double poisson)
{
    return youngs / Scalar(3.0 * (1.0 - 2.0 * poisson));
}

/// Uniaxial-strain (oedometric) modulus lambda + 2G.
template <typename Scalar>
Scalar constrained_modulus(Scalar youngs, double poisson)
{
    return youngs * Scalar((1.0 - poisson) / ((1.0 + poisson) * (1.0 - 2.0 * poisson)));
}

/// Composite density rate rho_sh / (G (1 - phi_eff)) (dsigma/dt - phi dP_eff/dt).
template <typename Scalar>
Scalar solid_density_rate(Scalar rho_sh, Scalar shear, Scalar phi, Scalar phi_eff, Scalar stress_rate,
                          Scalar pressure_rate)
{
    return rho_sh / (shear * (Scalar(1) - phi_eff)) * (stress_rate - phi * pressure_rate);
}

} // namespace hydrogeo

#endif
