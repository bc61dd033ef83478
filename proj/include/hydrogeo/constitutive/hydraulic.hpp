#ifndef HYDROGEO_CONSTITUTIVE_HYDRAULIC_HPP
#define HYDROGEO_CONSTITUTIVE_HYDRAULIC_HPP

#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/parameters.hpp"

#include <algorithm>
#include <cmath>

namespace hydrogeo {

template <typename Scalar>
struct RelativePermeabilities {
    Scalar water;
    Scalar gas;
};

/// Capillary scaling with hydrate saturation, (1 - S_h)^(-(m lambda - 1)/(m lambda)).
template <typename Scalar>
Scalar capillary_hydrate_factor(Scalar sh, double m, double lambda)
{
    using std::pow;
    const double ml = m * lambda;
    return pow(Scalar(1) - sh, -(ml - 1.0) / ml);
}

/// Capillary scaling with porosity, (phi_0/phi) ((1 - phi)/(1 - phi_0))^a.
template <typename Scalar>
Scalar capillary_porosity_factor(Scalar phi, double phi0, double a)
{
    using std::pow;
    return (Scalar(phi0) / phi) * pow((Scalar(1) - phi) / Scalar(1.0 - phi0), a);
}

template <typename Scalar>
Scalar permeability_hydrate_factor(Scalar sh, double m)
{
    using std::pow;
    return pow(Scalar(1) - sh, (5.0 * m + 4.0) / (2.0 * m));
}

template <typename Scalar>
Scalar permeability_porosity_factor(Scalar phi, double phi0, double a)
{
    const Scalar f = capillary_porosity_factor(phi, phi0, a);
    return (phi / Scalar(phi0)) / (f * f);
}

/**
 * @brief Brooks-Corey capillary pressure with hydrate and porosity scaling.
 *
 * `swe` is the (already clamped) effective water saturation. The result is
 * capped at capillary_cap_factor * P_entry.
 */
template <typename Scalar>
Scalar capillary_pressure(Scalar swe, Scalar sh, Scalar phi, const SoilParameters& soil)
{
    using std::min;
    using std::pow;
    if (soil.capillary_model == CapillaryModel::none)
        return Scalar(0);
    const Scalar cap = Scalar(soil.capillary_cap_factor * soil.entry_pressure);
    if (!(swe > Scalar(0)))
        return cap;
    const Scalar pc0 = Scalar(soil.entry_pressure) * pow(swe, -1.0 / soil.brooks_corey_lambda);
    const Scalar pc = pc0 * capillary_hydrate_factor(sh, soil.m, soil.brooks_corey_lambda) *
                      capillary_porosity_factor(phi, soil.porosity, soil.a);
    return min(pc, cap);
}

/// Intrinsic permeability K = K_0 f_Sh f_phi, floored at permeability_floor.
template <typename Scalar>
Scalar intrinsic_permeability(Scalar sh, Scalar phi, const SoilParameters& soil)
{
    using std::max;
    if (soil.permeability_model == PermeabilityModel::constant)
        return Scalar(soil.permeability);
    if (!(sh < Scalar(1)))
        return Scalar(soil.permeability_floor);
    const Scalar k = Scalar(soil.permeability) * permeability_hydrate_factor(sh, soil.m) *
                     permeability_porosity_factor(phi, soil.porosity, soil.a);
    return max(k, Scalar(soil.permeability_floor));
}

/// Burdine relative permeabilities from the effective water saturation.
template <typename Scalar>
RelativePermeabilities<Scalar> relative_permeabilities(Scalar swe, const SoilParameters& soil)
{
    using std::clamp;
    using std::pow;
    if (soil.relperm_model == RelPermModel::constant)
        return {Scalar(soil.krw), Scalar(soil.krg)};
    const double lambda = soil.brooks_corey_lambda;
    const Scalar s = clamp(swe, Scalar(0), Scalar(1));
    const Scalar one_minus = Scalar(1) - s;
    return {pow(s, (2.0 + 3.0 * lambda) / lambda),
            one_minus * one_minus * (Scalar(1) - pow(s, (2.0 + lambda) / lambda))};
}

/// Specific surface area of the matrix, sqrt(phi_eff^3 / (2 K)).
template <typename Scalar>
Scalar specific_surface_area(Scalar phi, Scalar sh, Scalar permeability)
{
    using std::sqrt;
    const Scalar phi_eff = phi * (Scalar(1) - sh);
    return sqrt(phi_eff * phi_eff * phi_eff / (Scalar(2) * permeability));
}

/// Fraction Gamma_r of the pore surface taking part in the reaction.
template <typename Scalar>
Scalar reaction_area_fraction(Scalar phi, Scalar sh, const KineticParameters& k)
{
    if (k.area_rule == ReactionAreaRule::phi_sh)
        return phi * sh;
    return Scalar(k.area_fraction);
}

/// Tortuosity tau = phi^n with 1 <= n <= 3.
template <typename Scalar>
Scalar tortuosity(Scalar phi, double n)
{
    using std::pow;
    if (n < 1.0 || n > 3.0)
        throw ConfigError("tortuosity exponent must lie in [1, 3]");
    return pow(phi, n);
}

} // namespace hydrogeo

#endif
