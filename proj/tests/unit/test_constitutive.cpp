#include "hydrogeo/constitutive/fluid.hpp"
#include "hydrogeo/constitutive/hydraulic.hpp"
#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"

#include <doctest.h>

#include <cmath>

using namespace hydrogeo;
using doctest::Approx;

TEST_CASE("vapour-liquid equilibrium")
{
    const VleResult imm = vle_from_coefficients(3e6, 0.0, 0.0);
    CHECK(imm.gas_methane == 1.0);
    CHECK(imm.water_water == 1.0);
    CHECK(imm.gas_water == 0.0);
    CHECK(imm.water_methane == 0.0);

    // closed-form solve of H P x + y = 1, x + (Psat/P) y = 1
    const VleParameters p;
    const double pg = 3.535e6, t = 274.69;
    const double h = henry_constant(t, p), psat = antoine_psat(t, p);
    const VleResult r = vle(pg, t, p);
    const double x = (1.0 - psat / pg) / (1.0 - h * psat);
    const double y = (1.0 - h * pg) / (1.0 - h * psat);
    CHECK(r.gas_methane == Approx(x).epsilon(1e-13));
    CHECK(r.water_water == Approx(y).epsilon(1e-13));
    CHECK(r.water_methane == Approx(h * pg * x).epsilon(1e-12));

    for (double pp : {1e5, 1e6, 5e6, 2e7})
        for (double tt : {260.0, 275.0, 300.0, 350.0}) {
            const VleResult s = vle(pp, tt, p);
            CHECK(std::abs(s.gas_methane + s.gas_water - 1.0) <= 1e-12);
            CHECK(std::abs(s.water_methane + s.water_water - 1.0) <= 1e-12);
            CHECK(s.gas_methane >= 0.0);
            CHECK(s.gas_water >= 0.0);
            CHECK(s.water_methane >= 0.0);
        }

    CHECK_THROWS_AS(vle_from_coefficients(1e5, 1e-5, 1e5), DegenerateStateError);
}

TEST_CASE("Henry and Antoine correlations")
{
    const VleParameters p;
    CHECK(henry_constant(p.henry_reference_temperature, p) == Approx(p.henry_reference * p.water_molar_volume));
    CHECK(antoine_psat(373.15, p) == Approx(101.3e3).epsilon(2e-3));
    double last = 0.0;
    for (double t = 273.15; t <= 373.15; t += 5.0) {
        const double ps = antoine_psat(t, p);
        CHECK(ps > last);
        last = ps;
    }
}

TEST_CASE("diffusion coefficients")
{
    const DiffusionParameters p;
    const double d1 = diffusion_coefficient(Phase::gas, 1e6, 280.0, p);
    CHECK(diffusion_coefficient(Phase::gas, 2e6, 280.0, p) / d1 == Approx(0.5).epsilon(1e-14));
    CHECK(diffusion_coefficient(Phase::gas, 1e6, 300.0, p) > d1);
    CHECK(diffusion_coefficient(Phase::water, 1e5, 283.0, p, 1.3e-3) > 0.0);
}

TEST_CASE("capillary pressure")
{
    SoilParameters soil;
    soil.entry_pressure = 5000.0;
    soil.brooks_corey_lambda = 1.5;
    CHECK(capillary_pressure(1.0, 0.0, soil.porosity, soil) == Approx(5000.0).epsilon(1e-14));

    CHECK(capillary_hydrate_factor(0.4, 3.0, 1.2) == Approx(std::pow(0.6, -2.6 / 3.6)).epsilon(1e-14));
    CHECK(capillary_hydrate_factor(0.4, 3.0, 1.2) == Approx(1.4464).epsilon(1e-4));
    CHECK(capillary_hydrate_factor(0.0, 3.0, 1.2) == 1.0);
    CHECK(capillary_porosity_factor(0.3, 0.3, 2.0) == Approx(1.0));

    // capped at 50 P_entry
    CHECK(capillary_pressure(1e-6, 0.0, soil.porosity, soil) == Approx(50.0 * 5000.0));
    CHECK(capillary_pressure(0.0, 0.0, soil.porosity, soil) == Approx(50.0 * 5000.0));

    double last = INFINITY;
    for (double swe = 0.1; swe <= 1.0; swe += 0.1) {
        const double pc = capillary_pressure(swe, 0.2, 0.3, soil);
        CHECK(pc <= last);
        CHECK(pc >= 0.0);
        last = pc;
    }
}

TEST_CASE("intrinsic permeability")
{
    SoilParameters soil;
    soil.permeability = 0.1 * 9.869233e-16;
    CHECK(intrinsic_permeability(0.0, soil.porosity, soil) == Approx(soil.permeability).epsilon(1e-14));
    CHECK(permeability_hydrate_factor(0.4, 3.0) == Approx(std::pow(0.6, 19.0 / 6.0)).epsilon(1e-14));
    CHECK(permeability_hydrate_factor(0.4, 3.0) == Approx(0.1984).epsilon(5e-4));
    CHECK(permeability_porosity_factor(0.3, 0.3, 2.0) == Approx(1.0));
    // 0.1 mD hydrate-free against 0.0198 mD at S_h = 0.4
    CHECK(intrinsic_permeability(0.4, soil.porosity, soil) / 9.869233e-16 == Approx(0.0198).epsilon(5e-3));

    double last = INFINITY;
    for (double sh = 0.0; sh < 0.95; sh += 0.1) {
        const double k = intrinsic_permeability(sh, 0.3, soil);
        CHECK(k < last);
        last = k;
    }
    CHECK(intrinsic_permeability(1.0, 0.3, soil) == soil.permeability_floor);
}

TEST_CASE("relative permeabilities")
{
    SoilParameters soil;
    soil.brooks_corey_lambda = 1.5;
    const auto one = relative_permeabilities(1.0, soil);
    CHECK(one.water == 1.0);
    CHECK(one.gas == 0.0);
    const auto zero = relative_permeabilities(0.0, soil);
    CHECK(zero.water == 0.0);
    CHECK(zero.gas == 1.0);
    const auto half = relative_permeabilities(0.5, soil);
    CHECK(half.water == Approx(0.0496).epsilon(2e-3));
    CHECK(half.gas == Approx(0.2004).epsilon(2e-3));

    double w = -1.0, g = 2.0;
    for (double s = 0.0; s <= 1.0; s += 0.05) {
        const auto k = relative_permeabilities(s, soil);
        CHECK(k.water >= w);
        CHECK(k.gas <= g);
        w = k.water;
        g = k.gas;
    }

    soil.relperm_model = RelPermModel::constant;
    const auto c = relative_permeabilities(0.3, soil);
    CHECK(c.water == 0.5);
    CHECK(c.gas == 0.5);
}

TEST_CASE("surface area, reaction fraction and tortuosity")
{
    CHECK(specific_surface_area(0.3, 0.0, 1e-13) == Approx(std::sqrt(0.027 / 2e-13)).epsilon(1e-14));
    CHECK(specific_surface_area(0.3, 0.0, 1e-13) == Approx(3.674e5).epsilon(1e-4));
    KineticParameters k;
    k.area_rule = ReactionAreaRule::phi_sh;
    CHECK(reaction_area_fraction(0.3, 0.0, k) == 0.0);
    CHECK(reaction_area_fraction(0.3, 0.4, k) == Approx(0.12));
    k.area_rule = ReactionAreaRule::constant;
    k.area_fraction = 0.7;
    CHECK(reaction_area_fraction(0.3, 0.4, k) == 0.7);

    CHECK(tortuosity(1.0, 2.0) == 1.0);
    CHECK(tortuosity(0.3, 1.0) == Approx(0.3));
    CHECK(tortuosity(0.3, 2.0) == Approx(0.09));
    CHECK_THROWS_AS(tortuosity(0.3, 3.5), ConfigError);
    CHECK_THROWS_AS(tortuosity(0.3, 0.5), ConfigError);
}

TEST_CASE("effective pressure and Biot coefficient")
{
    CHECK(effective_pressure(0.3, 0.3, 1e6, 2e6) == Approx(1.5e6));
    CHECK(effective_pressure(0.5, 0.2, 3e6, 3e6) == Approx(3e6));
    CHECK_THROWS_AS(effective_pressure(0.0, 0.0, 1e6, 1e6), DegenerateStateError);
    CHECK(biot_alpha(1e9, 1e9) == 0.0);
    CHECK(biot_alpha(2e8, 1e9) == Approx(0.8));
}

TEST_CASE("composite modulus and Lame parameters")
{
    MechanicalParameters m;
    m.soil_youngs_modulus = 0.3e9;
    m.hydrate_youngs_modulus = 1.35e9;
    m.b = 0.0;
    m.c = 1.0;
    m.d = 1.0;
    CHECK(youngs_modulus_composite(5e6, 0.4, m) == Approx(0.84e9).epsilon(1e-14));
    CHECK(youngs_modulus_composite(5e6, 0.0, m) == Approx(0.3e9).epsilon(1e-14));

    m.b = 0.5;
    CHECK(youngs_modulus_composite(4e6, 0.0, m) == Approx(0.6e9).epsilon(1e-14));

    const auto l = lame_parameters(1e9, 0.2);
    CHECK(l.shear == Approx(0.41667e9).epsilon(1e-5));
    CHECK(l.lambda == Approx(0.27778e9).epsilon(1e-5));
    // E and nu back from (G, lambda)
    const double e = l.shear * (3.0 * l.lambda + 2.0 * l.shear) / (l.lambda + l.shear);
    const double nu = l.lambda / (2.0 * (l.lambda + l.shear));
    CHECK(std::abs(e / 1e9 - 1.0) <= 1e-12);
    CHECK(std::abs(nu / 0.2 - 1.0) <= 1e-12);
    CHECK_THROWS_AS(lame_parameters(1e9, 0.5), ConfigError);
    CHECK(constrained_modulus(1e9, 0.2) == Approx(l.lambda + 2.0 * l.shear).epsilon(1e-14));
}

TEST_CASE("solid density rate")
{
    CHECK(solid_density_rate(2000.0, 1e9, 0.3, 0.3, 0.0, 0.0) == 0.0);
    CHECK(solid_density_rate(2000.0, 1e9, 0.3, 0.3, 0.3 * 1e5, 1e5) == Approx(0.0).epsilon(1e-14));
    CHECK(solid_density_rate(2000.0, 1e9, 0.3, 0.3, 1e5, 0.0) == Approx(2000.0 * 1e5 / (1e9 * 0.7)).epsilon(1e-14));
}

TEST_CASE("Peng-Robinson fugacity of methane")
{
    const PengRobinsonParameters p;
    CHECK(std::abs(peng_robinson_fugacity(1e3, 280.0, p) / 1e3 - 1.0) < 1e-3);
    CHECK(peng_robinson_fugacity(10e6, 280.0, p) < 10e6);
    const PengRobinsonResult r = peng_robinson(10e6, 280.0, p);
    CHECK(r.z > 0.7);
    CHECK(r.z < 1.0);
}

TEST_CASE("thermal and transport properties")
{
    CHECK(specific_enthalpy(4186.0, 273.15, 273.15) == 0.0);
    CHECK(specific_internal_energy(800.0, 273.15, 273.15) == 0.0);
    CHECK(specific_enthalpy(4186.0, 283.15, 273.15) == Approx(41860.0));

    CHECK(effective_conductivity(0.0, 0.5, 0.2, 1.9, 2.1, 0.6, 0.03) == Approx(1.9));
    for (double phi : {0.1, 0.4, 0.9})
        for (double sw : {0.0, 0.3, 0.6}) {
            const double k = effective_conductivity(phi, sw, 0.2, 1.9, 2.1, 0.6, 0.03);
            CHECK(k >= 0.03);
            CHECK(k <= 2.1);
        }

    FluidPhase water;
    water.viscosity_law = ViscosityLaw::water_exponential;
    water.viscosity = 1.792e-3;
    CHECK(phase_viscosity(water, 273.15) == Approx(0.001792).epsilon(1e-12));
    CHECK(phase_viscosity(water, 293.15) < phase_viscosity(water, 273.15));

    FluidPhase gas;
    gas.density_law = DensityLaw::ideal_gas;
    CHECK(phase_density(gas, 1e6, 280.0, 0.016) == Approx(1e6 * 0.016 / (8.314462618 * 280.0)));
}
