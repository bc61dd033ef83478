#ifndef HYDROGEO_CORE_UNITS_HPP
#define HYDROGEO_CORE_UNITS_HPP

#include <string>
#include <string_view>

namespace hydrogeo {

namespace constants {
inline constexpr double gas_constant = 8.314462618;      // J/(mol K)
inline constexpr double zero_celsius = 273.15;           // K
inline constexpr double millidarcy = 9.869233e-16;       // m^2
inline constexpr double standard_pressure = 101325.0;    // Pa
inline constexpr double standard_temperature = 273.15;   // K
inline constexpr double mmhg = 133.322387415;            // Pa
} // namespace constants

enum class Dimension {
    dimensionless,
    pressure,
    temperature,
    length,
    area,
    volume,
    time,
    density,
    viscosity,
    molar_mass,
    specific_heat,
    conductivity,
    mass_rate,
    mass_flux,
    stress_rate,
    diffusivity,
    specific_energy,
    molar_energy,
    inverse_length,
    rate_constant,
    henry,
    molar_volume,
    acceleration,
    velocity,
    heat_transfer,  // volumetric, W/(m3 K)
};

std::string_view dimension_name(Dimension d);

struct UnitInfo {
    Dimension dimension;
    double factor;  // SI = factor * value + offset
    double offset;
};

/// Looks up a unit symbol such as "MPa", "degC", "mD", "kg/m3". Throws ConfigError on unknown symbols.
UnitInfo lookup_unit(std::string_view symbol);

/**
 * @brief Parses "<number> [unit]" and converts to SI.
 *
 * A bare number is taken as already being in SI. Percent is accepted for
 * dimensionless quantities.
 */
double parse_quantity(std::string_view text, Dimension expected);

/// Canonical SI symbol used when writing normalized configs.
std::string_view si_symbol(Dimension d);

} // namespace hydrogeo

#endif
