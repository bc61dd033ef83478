#include "hydrogeo/analytic/kpe.hpp"

#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/kinetics/kinetics.hpp"

#include <cmath>

namespace hydrogeo {

namespace {

double fluid_compressibility(const KpeSample& s)
{
    return s.water_fraction / s.water_bulk_modulus + (1.0 - s.water_fraction) / s.gas_bulk_modulus;
}

double mobility_viscosity(const KpeSample& s)
{
    return 1.0 / (0.5 * (1.0 / s.gas_viscosity + 1.0 / s.water_viscosity));
}

double reaction_coefficient(const KpeSample& s)
{
    const double volume_change = s.hydration_number * s.water_molar_mass / s.water_density +
                                 s.methane_molar_mass / s.gas_density -
                                 s.hydrate_molar_mass / s.hydrate_density;
    return volume_change * s.rate_constant * s.surface_area;
}

} // namespace

KpeCoefficients kpe_coefficients(const KpeSample& s)
{
    KpeCoefficients c{};
    c.matrix_compliance = s.matrix_compliance;
    c.storativity = s.effective_porosity * fluid_compressibility(s) + (s.biot - s.effective_porosity) / s.grain_modulus;
    c.reaction = reaction_coefficient(s);
    c.mobility_viscosity = mobility_viscosity(s);
    c.equilibrium_pressure = s.equilibrium_pressure;

    const double denom = s.biot * s.biot * s.matrix_compliance + c.storativity;
    if (!(std::abs(denom) > 0.0) || !std::isfinite(denom))
        throw ConfigError("storage coefficient alpha^2 C_m + S vanishes");
    c.cv = s.permeability / (c.mobility_viscosity * denom);
    c.cr = c.reaction * s.hydrate_saturation / denom;

    const double csh = c.reaction * s.hydrate_saturation;
    const double denom0 = denom + csh;
    if (!(std::abs(denom0) > 0.0))
        throw ConfigError("initial-pressure denominator vanishes");
    c.initial_pressure = (s.biot * s.matrix_compliance * s.load + csh * s.equilibrium_pressure) / denom0;
    c.theta = c.cv > 0.0 ? std::sqrt(c.cr / c.cv) : 0.0;
    return c;
}

KpeSample kpe_sample(const MaterialParameters& p, double temperature, double hydrate_saturation, double effective_porosity,
                     double water_fraction, double load, double equilibrium_pressure)
{
    const auto& m = p.mechanics;
    const double youngs = youngs_modulus_composite(0.0, hydrate_saturation, m);
    const double bulk = drained_bulk_modulus(youngs, m.poisson_ratio);

    KpeSample s{};
    s.permeability = p.soil.permeability;
    s.rate_constant = rate_constant(temperature, p.kinetics.rate_constant, p.kinetics.activation_temperature);
    s.surface_area = p.kinetics.reference_surface_area;
    s.hydrate_saturation = hydrate_saturation;
    s.effective_porosity = effective_porosity;
    s.water_fraction = water_fraction;
    s.biot = m.biot;
    s.matrix_compliance = 1.0 / constrained_modulus(youngs, m.poisson_ratio);
    s.grain_modulus = std::isfinite(m.grain_modulus) ? m.grain_modulus : bulk / (1.0 - m.biot);
    s.water_bulk_modulus = p.water.bulk_modulus;
    s.gas_bulk_modulus = p.gas.bulk_modulus;
    s.water_density = p.water.density;
    s.gas_density = p.gas.density;
    s.hydrate_density = p.hydrate.density;
    s.water_viscosity = p.water.viscosity;
    s.gas_viscosity = p.gas.viscosity;
    s.water_molar_mass = p.components.water_molar_mass;
    s.methane_molar_mass = p.components.methane_molar_mass;
    s.hydrate_molar_mass = hydrate_molar_mass(p);
    s.hydration_number = p.hydrate.hydration_number;
    s.load = load;
    s.equilibrium_pressure = equilibrium_pressure;
    return s;
}

KpeCalibration calibrate_kpe(const KpeSample& base, double poisson, double target_cr, double target_p0)
{
    const double csh = reaction_coefficient(base) * base.hydrate_saturation;
    const double denom = csh / target_cr;  // alpha^2 C_m + S
    const double alpha_cm = (target_p0 * (denom + csh) - csh * base.equilibrium_pressure) / base.load;

    KpeCalibration out{};
    out.matrix_compliance = alpha_cm / base.biot;
    const double storativity = denom - base.biot * alpha_cm;
    const double uniaxial = 1.0 / out.matrix_compliance;
    out.youngs_modulus = uniaxial * (1.0 + poisson) * (1.0 - 2.0 * poisson) / (1.0 - poisson);
    out.grain_modulus = drained_bulk_modulus(out.youngs_modulus, poisson) / (1.0 - base.biot);
    out.effective_porosity = (storativity - base.biot / out.grain_modulus) /
                             (fluid_compressibility(base) - 1.0 / out.grain_modulus);
    return out;
}

double kpe_eigenvalue(int n, double length) { return (n - 0.5) * M_PI / length; }

double kpe_pressure(double z, double t, const KpeCoefficients& c, double length, int min_terms, double tol)
{
    const double theta = c.theta;
    double ratio = std::cosh(theta * (length - z)) / std::cosh(theta * length);
    for (int n = 1; n < 100000; ++n) {
        const double lam = kpe_eigenvalue(n, length);
        const double lam2 = lam * lam;
        const double coeff = (2.0 / length) / lam * (1.0 - lam2 / (lam2 + theta * theta));
        const double bound = coeff * std::exp(-c.cv * (lam2 + theta * theta) * t);
        ratio += bound * std::sin(lam * z);
        if (n >= min_terms && std::abs(bound) < tol)
            break;
    }
    return c.equilibrium_pressure - ratio * (c.equilibrium_pressure - c.initial_pressure);
}

} // namespace hydrogeo
