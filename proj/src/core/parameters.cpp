#include "hydrogeo/core/parameters.hpp"

#include "hydrogeo/core/errors.hpp"

#include <cmath>
#include <string>

namespace hydrogeo {

namespace {

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ConfigError("invalid parameter: " + what);
}

void validate_phase(const FluidPhase& f, const std::string& name)
{
    require(f.density > 0.0, name + ".density must be > 0");
    require(f.viscosity > 0.0, name + ".viscosity must be > 0");
    require(f.conductivity > 0.0, name + ".conductivity must be > 0");
    require(f.cp > 0.0 && f.cv > 0.0, name + " heat capacities must be > 0");
    if (f.density_law == DensityLaw::exponential || f.density_law == DensityLaw::slightly_compressible)
        require(f.bulk_modulus > 0.0, name + ".bulk_modulus must be > 0");
}

} // namespace

double hydrate_molar_mass(const MaterialParameters& p)
{
    if (p.hydrate.stoichiometric_molar_mass)
        return p.components.methane_molar_mass + p.hydrate.hydration_number * p.components.water_molar_mass;
    return p.hydrate.molar_mass;
}

void MaterialParameters::validate() const
{
    validate_phase(gas, "gas");
    validate_phase(water, "water");

    require(soil.permeability > 0.0, "soil.permeability must be > 0");
    require(soil.porosity > 0.0 && soil.porosity < 1.0, "soil.porosity must lie in (0, 1)");
    require(soil.entry_pressure >= 0.0, "soil.entry_pressure must be >= 0");
    require(soil.brooks_corey_lambda > 0.0, "soil.lambda must be > 0");
    require(soil.residual_water >= 0.0 && soil.residual_gas >= 0.0 &&
                soil.residual_water + soil.residual_gas < 1.0,
            "residual saturations must be >= 0 and sum below 1");
    require(soil.m > 0.0, "soil.m must be > 0");
    require(soil.tortuosity_exponent >= 1.0 && soil.tortuosity_exponent <= 3.0,
            "soil.tortuosity_exponent must lie in [1, 3]");
    require(soil.krw >= 0.0 && soil.krw <= 1.0 && soil.krg >= 0.0 && soil.krg <= 1.0,
            "constant relative permeabilities must lie in [0, 1]");
    require(soil.density > 0.0 && soil.cv > 0.0 && soil.conductivity > 0.0, "soil density, cv, conductivity must be > 0");
    require(soil.permeability_floor > 0.0, "soil.permeability_floor must be > 0");
    require(soil.capillary_cap_factor >= 1.0, "soil.capillary_cap_factor must be >= 1");

    require(hydrate.density > 0.0 && hydrate.molar_mass > 0.0 && hydrate.cv > 0.0 && hydrate.conductivity > 0.0,
            "hydrate density, molar mass, cv, conductivity must be > 0");
    require(hydrate.hydration_number > 0.0, "hydrate.hydration_number must be > 0");
    require(components.methane_molar_mass > 0.0 && components.water_molar_mass > 0.0, "molar masses must be > 0");

    require(vle.min_temperature < vle.max_temperature, "VLE validity window is empty");
    require(peng_robinson.critical_temperature > 0.0 && peng_robinson.critical_pressure > 0.0,
            "Peng-Robinson critical constants must be > 0");

    require(kinetics.rate_constant >= 0.0, "kinetics.rate_constant must be >= 0");
    require(kinetics.a1 > 0.0, "kinetics.a1 must be > 0");
    require(kinetics.area_fraction >= 0.0 && kinetics.area_fraction <= 1.0, "kinetics.area_fraction must lie in [0, 1]");
    require(kinetics.reference_surface_area >= 0.0, "kinetics.reference_surface_area must be >= 0");
    require(kinetics.reformation_ramp >= 0.0 && kinetics.reformation_ramp < 1.0,
            "kinetics.reformation_ramp must lie in [0, 1)");

    require(mechanics.soil_youngs_modulus > 0.0, "mechanics.soil_youngs_modulus must be > 0");
    require(mechanics.hydrate_youngs_modulus >= 0.0, "mechanics.hydrate_youngs_modulus must be >= 0");
    require(mechanics.poisson_ratio > 0.0 && mechanics.poisson_ratio < 0.5, "mechanics.poisson_ratio must lie in (0, 0.5)");
    require(mechanics.biot >= 0.0 && mechanics.biot <= 1.0, "mechanics.biot must lie in [0, 1]");
    require(mechanics.reference_stress > 0.0, "mechanics.reference_stress must be > 0");
    require(thermal.reference_temperature > 0.0, "thermal.reference_temperature must be > 0");
    require(thermal.ambient_exchange >= 0.0, "thermal.ambient_exchange must be >= 0");
    require(thermal.ambient_temperature > 0.0, "thermal.ambient_temperature must be > 0");
}

MaterialParameters reservoir_defaults()
{
    MaterialParameters p;
    p.gas.density_law = DensityLaw::real_gas;
    p.gas.density = 0.717;
    p.gas.viscosity_law = ViscosityLaw::methane_sutherland;
    p.gas.viscosity = 1.04e-5;
    p.gas.conductivity_law = ConductivityLaw::methane_polynomial;
    p.gas.conductivity = 0.03;
    p.gas.cp = 2220.0;
    p.gas.cv = 2220.0 - 8.314462618 / 0.016;

    p.water.density_law = DensityLaw::constant;
    p.water.density = 1000.0;
    p.water.viscosity_law = ViscosityLaw::water_exponential;
    p.water.viscosity = 1.792e-3;
    p.water.conductivity_law = ConductivityLaw::water_logarithmic;
    p.water.conductivity = 0.57;
    p.water.cp = 4186.0;
    p.water.cv = 4186.0 + 8.314462618 / 0.018;
    return p;
}

} // namespace hydrogeo
