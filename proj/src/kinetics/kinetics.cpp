#include "hydrogeo/kinetics/kinetics.hpp"

#include "hydrogeo/constitutive/fluid.hpp"
#include "hydrogeo/constitutive/hydraulic.hpp"

#include <algorithm>
#include <cmath>

namespace hydrogeo {

double equilibrium_pressure(double temperature, double a1, double a2, double a3)
{
    return a1 * std::exp(a2 - a3 / temperature);
}

double equilibrium_pressure(double temperature, const KineticParameters& k)
{
    if (std::isfinite(k.equilibrium_pressure_override))
        return k.equilibrium_pressure_override;
    return equilibrium_pressure(temperature, k.a1, k.a2, k.a3);
}

double rate_constant(double temperature, double k0, double activation_temperature)
{
    return k0 * std::exp(-activation_temperature / temperature);
}

double smooth_rate_limit(double rate, double limit)
{
    if (limit <= 0.0)
        return 0.0;
    const double ratio = std::abs(rate) / limit;
    const double r2 = ratio * ratio;
    const double r4 = r2 * r2;
    return rate / std::pow(1.0 + r4 * r4, 0.125);
}

KineticRates kinetic_rates(const KineticState& s, const MaterialParameters& p)
{
    const KineticParameters& k = p.kinetics;
    KineticRates out;
    out.equilibrium_pressure = equilibrium_pressure(s.temperature, k);
    out.rate_constant = rate_constant(s.temperature, k.rate_constant, k.activation_temperature);
    if (!k.enabled)
        return out;

    const double sh = std::max(s.hydrate_saturation, 0.0);
    double fugacity = s.fugacity;
    if (fugacity < 0.0) {
        fugacity = (k.mode == KineticsMode::simplified || k.fugacity == FugacityModel::pressure)
                       ? s.gas_pressure
                       : peng_robinson_fugacity(s.gas_pressure, s.temperature, p.peng_robinson);
    }

    if (k.mode == KineticsMode::simplified) {
        out.reaction_area = k.reference_surface_area * sh;
    } else {
        const double area = specific_surface_area(s.porosity, sh, s.permeability);
        out.reaction_area = reaction_area_fraction(s.porosity, sh, k) * area;
    }

    const double drive = out.equilibrium_pressure - fugacity;
    const double mg = p.components.methane_molar_mass;
    double methane = out.rate_constant * mg * out.reaction_area * drive;

    const double sg = 1.0 - s.water_saturation - s.hydrate_saturation;
    if (methane > 0.0 && !(sh > 0.0))
        methane = 0.0;
    if (methane < 0.0 && !(sg > 0.0 && s.water_saturation > 0.0))
        methane = 0.0;
    if (methane < 0.0 && k.reformation_ramp > 0.0) {
        const double r = std::clamp(std::min(sg, s.water_saturation) / k.reformation_ramp, 0.0, 1.0);
        methane *= r * r * (3.0 - 2.0 * r);
    }

    const double mh = hydrate_molar_mass(p);
    if (k.rate_limiting && s.dt > 0.0 && methane != 0.0) {
        if (methane > 0.0) {
            // bound on hydrate consumed, expressed in methane released
            const double hydrate_limit = p.hydrate.density * s.porosity * sh / s.dt;
            methane = smooth_rate_limit(methane, hydrate_limit * mg / mh);
        } else {
            methane = smooth_rate_limit(methane, std::max(s.methane_content, 0.0) / s.dt);
        }
    }

    out.methane = methane;
    out.water = p.hydrate.hydration_number * (p.components.water_molar_mass / mg) * methane;
    out.hydrate = -(mh / mg) * methane;

    switch (k.heat_law) {
    case HeatLaw::per_mole_hydrate:
        out.heat = (out.hydrate / mh) * (k.b1 - k.b2 / s.temperature);
        break;
    case HeatLaw::per_kg_methane:
        out.heat = -methane * (k.heat_slope * s.temperature + k.heat_intercept);
        break;
    case HeatLaw::none:
        out.heat = 0.0;
        break;
    }
    return out;
}

} // namespace hydrogeo
