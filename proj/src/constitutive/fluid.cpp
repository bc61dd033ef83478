#include "hydrogeo/constitutive/fluid.hpp"

#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/units.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>

namespace hydrogeo {

namespace {

std::atomic<long> g_range_warnings{0};

double clamp_temperature(double t, const VleParameters& p)
{
    if (t < p.min_temperature || t > p.max_temperature) {
        g_range_warnings.fetch_add(1, std::memory_order_relaxed);
        return std::clamp(t, p.min_temperature, p.max_temperature);
    }
    return t;
}

void require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream msg;
        msg << what << " must be positive and finite, got " << v;
        throw DomainError(msg.str());
    }
}

} // namespace

long vle_range_warnings() { return g_range_warnings.load(std::memory_order_relaxed); }

double henry_constant(double temperature, const VleParameters& p)
{
    require_positive(temperature, "temperature");
    const double t = clamp_temperature(temperature, p);
    const double h_cp =
        p.henry_reference * std::exp(p.henry_temperature_coefficient * (1.0 / t - 1.0 / p.henry_reference_temperature));
    return h_cp * p.water_molar_volume;
}

double antoine_psat(double temperature, const VleParameters& p)
{
    require_positive(temperature, "temperature");
    const double t = clamp_temperature(temperature, p);
    const double celsius = t - constants::zero_celsius;
    return std::pow(10.0, p.antoine_a - p.antoine_b / (p.antoine_c + celsius)) * constants::mmhg;
}

VleResult vle_from_coefficients(double gas_pressure, double henry, double psat)
{
    require_positive(gas_pressure, "gas pressure");
    // H P x + y = 1 and x + (Psat / P) y = 1, with x = chi_g^CH4 and y = chi_w^H2O.
    const double det = henry * psat - 1.0;
    if (std::abs(det) < 1e-14) {
        std::ostringstream msg;
        msg << "degenerate vapour-liquid equilibrium at P_g=" << gas_pressure << " (H*Psat=" << henry * psat << ")";
        throw DegenerateStateError(msg.str());
    }
    double x = (1.0 - psat / gas_pressure) / (1.0 - henry * psat);
    x = std::clamp(x, 0.0, 1.0);
    double y = 1.0 - henry * gas_pressure * x;
    y = std::clamp(y, 0.0, 1.0);

    VleResult r;
    r.gas_methane = x;
    r.gas_water = 1.0 - x;
    r.water_water = y;
    r.water_methane = 1.0 - y;
    r.henry = henry;
    r.saturation_pressure = psat;
    return r;
}

VleResult vle(double gas_pressure, double temperature, const VleParameters& p)
{
    if (p.model == VleModel::immiscible)
        return vle_from_coefficients(gas_pressure, 0.0, 0.0);
    return vle_from_coefficients(gas_pressure, henry_constant(temperature, p), antoine_psat(temperature, p));
}

PengRobinsonResult peng_robinson(double pressure, double temperature, const PengRobinsonParameters& p)
{
    require_positive(pressure, "pressure");
    require_positive(temperature, "temperature");
    const double r = constants::gas_constant;
    const double tc = p.critical_temperature;
    const double pc = p.critical_pressure;
    const double w = p.acentric_factor;
    const double kappa = 0.37464 + 1.54226 * w - 0.26992 * w * w;
    const double s = 1.0 + kappa * (1.0 - std::sqrt(temperature / tc));
    const double a = 0.45724 * r * r * tc * tc / pc * s * s;
    const double b = 0.07780 * r * tc / pc;
    const double rt = r * temperature;
    const double A = a * pressure / (rt * rt);
    const double B = b * pressure / rt;

    // Z^3 + c2 Z^2 + c1 Z + c0 = 0
    const double c2 = -(1.0 - B);
    const double c1 = A - 3.0 * B * B - 2.0 * B;
    const double c0 = -(A * B - B * B - B * B * B);

    const double q = (3.0 * c1 - c2 * c2) / 9.0;
    const double rr = (9.0 * c2 * c1 - 27.0 * c0 - 2.0 * c2 * c2 * c2) / 54.0;
    const double disc = q * q * q + rr * rr;
    double z;
    if (disc > 0.0) {
        const double sq = std::sqrt(disc);
        z = std::cbrt(rr + sq) + std::cbrt(rr - sq) - c2 / 3.0;
    } else {
        const double theta = std::acos(std::clamp(rr / std::sqrt(-q * q * q), -1.0, 1.0));
        const double m = 2.0 * std::sqrt(-q);
        const double z1 = m * std::cos(theta / 3.0) - c2 / 3.0;
        const double z2 = m * std::cos((theta + 2.0 * M_PI) / 3.0) - c2 / 3.0;
        const double z3 = m * std::cos((theta + 4.0 * M_PI) / 3.0) - c2 / 3.0;
        z = std::max({z1, z2, z3});
    }
    for (int it = 0; it < 3; ++it) {
        const double f = ((z + c2) * z + c1) * z + c0;
        const double df = (3.0 * z + 2.0 * c2) * z + c1;
        if (df == 0.0)
            break;
        z -= f / df;
    }
    if (!std::isfinite(z) || z <= B) {
        std::ostringstream msg;
        msg << "Peng-Robinson: no physical gas root at P=" << pressure << " T=" << temperature;
        throw EosError(msg.str());
    }
    const double sqrt2 = std::sqrt(2.0);
    const double ln_phi = z - 1.0 - std::log(z - B) -
                          A / (2.0 * sqrt2 * B) * std::log((z + (1.0 + sqrt2) * B) / (z + (1.0 - sqrt2) * B));
    return {z, std::exp(ln_phi)};
}

double peng_robinson_fugacity(double pressure, double temperature, const PengRobinsonParameters& p)
{
    return peng_robinson(pressure, temperature, p).fugacity_coefficient * pressure;
}

double phase_density(const FluidPhase& f, double pressure, double temperature, double molar_mass, double z)
{
    switch (f.density_law) {
    case DensityLaw::constant:
        return f.density;
    case DensityLaw::exponential:
        return f.density * std::exp((pressure - f.reference_pressure) / f.bulk_modulus);
    case DensityLaw::slightly_compressible:
        return f.density * (1.0 + (pressure - f.reference_pressure) / f.bulk_modulus);
    case DensityLaw::real_gas:
        return pressure * molar_mass / (z * constants::gas_constant * temperature);
    case DensityLaw::ideal_gas:
        return pressure * molar_mass / (constants::gas_constant * temperature);
    }
    return f.density;
}

double phase_transport_density(const FluidPhase& f, double pressure, double temperature, double molar_mass, double z)
{
    if (f.density_law == DensityLaw::slightly_compressible)
        return f.density;
    return phase_density(f, pressure, temperature, molar_mass, z);
}

double phase_viscosity(const FluidPhase& f, double temperature)
{
    switch (f.viscosity_law) {
    case ViscosityLaw::constant:
        return f.viscosity;
    case ViscosityLaw::methane_sutherland:
        return f.viscosity * ((273.15 + 162.0) / (temperature + 162.0)) * std::pow(temperature / 273.15, 1.5);
    case ViscosityLaw::water_exponential: {
        const double r = 273.15 / temperature;
        return f.viscosity * std::exp(-1.94 - 4.80 * r + 6.74 * r * r);
    }
    }
    return f.viscosity;
}

double phase_conductivity(const FluidPhase& f, double temperature)
{
    switch (f.conductivity_law) {
    case ConductivityLaw::constant:
        return f.conductivity;
    case ConductivityLaw::methane_polynomial: {
        const double t = temperature;
        return -0.886e-2 + 0.242e-3 * t - 0.699e-6 * t * t + 0.122e-8 * t * t * t;
    }
    case ConductivityLaw::water_logarithmic:
        return 0.3834 * std::log(temperature) - 1.581;
    }
    return f.conductivity;
}

double specific_enthalpy(double cp, double temperature, double reference_temperature)
{
    return cp * (temperature - reference_temperature);
}

double specific_internal_energy(double cv, double temperature, double reference_temperature)
{
    return cv * (temperature - reference_temperature);
}

double effective_conductivity(double phi, double sw, double sh, double k_soil, double k_hydrate, double k_water,
                              double k_gas)
{
    const double sg = 1.0 - sw - sh;
    return (1.0 - phi) * k_soil + phi * (sh * k_hydrate + sw * k_water + sg * k_gas);
}

double diffusion_coefficient(Phase phase, double pressure, double temperature, const DiffusionParameters& p,
                             double water_viscosity, double water_molar_mass)
{
    require_positive(pressure, "pressure");
    require_positive(temperature, "temperature");
    if (phase == Phase::gas) {
        return p.gas_reference * (p.gas_reference_pressure / pressure) *
               std::pow(temperature / p.gas_reference_temperature, p.gas_temperature_exponent);
    }
    // Wilke-Chang in its customary units: cm2/s, g/mol, cP, cm3/mol.
    const double solvent_g_per_mol = water_molar_mass * 1e3;
    const double viscosity_cp = water_viscosity * 1e3;
    const double volume_cm3 = p.solute_molar_volume * 1e6;
    const double d_cm2 = 7.4e-8 * std::sqrt(p.association_factor * solvent_g_per_mol) * temperature /
                         (viscosity_cp * std::pow(volume_cm3, 0.6));
    return d_cm2 * 1e-4;
}

} // namespace hydrogeo
