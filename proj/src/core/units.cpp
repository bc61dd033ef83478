#include "hydrogeo/core/units.hpp"

#include "hydrogeo/core/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace hydrogeo {

namespace {

struct UnitEntry {
    std::string_view symbol;
    UnitInfo info;
};

constexpr std::array kUnits = {
    UnitEntry{"%", {Dimension::dimensionless, 0.01, 0.0}},
    UnitEntry{"-", {Dimension::dimensionless, 1.0, 0.0}},
    UnitEntry{"Pa", {Dimension::pressure, 1.0, 0.0}},
    UnitEntry{"kPa", {Dimension::pressure, 1e3, 0.0}},
    UnitEntry{"MPa", {Dimension::pressure, 1e6, 0.0}},
    UnitEntry{"GPa", {Dimension::pressure, 1e9, 0.0}},
    UnitEntry{"bar", {Dimension::pressure, 1e5, 0.0}},
    UnitEntry{"K", {Dimension::temperature, 1.0, 0.0}},
    UnitEntry{"degC", {Dimension::temperature, 1.0, constants::zero_celsius}},
    UnitEntry{"m", {Dimension::length, 1.0, 0.0}},
    UnitEntry{"cm", {Dimension::length, 1e-2, 0.0}},
    UnitEntry{"mm", {Dimension::length, 1e-3, 0.0}},
    UnitEntry{"m2", {Dimension::area, 1.0, 0.0}},
    UnitEntry{"cm2", {Dimension::area, 1e-4, 0.0}},
    UnitEntry{"mm2", {Dimension::area, 1e-6, 0.0}},
    UnitEntry{"mD", {Dimension::area, constants::millidarcy, 0.0}},
    UnitEntry{"D", {Dimension::area, 1e3 * constants::millidarcy, 0.0}},
    UnitEntry{"m3", {Dimension::volume, 1.0, 0.0}},
    UnitEntry{"s", {Dimension::time, 1.0, 0.0}},
    UnitEntry{"min", {Dimension::time, 60.0, 0.0}},
    UnitEntry{"h", {Dimension::time, 3600.0, 0.0}},
    UnitEntry{"day", {Dimension::time, 86400.0, 0.0}},
    UnitEntry{"kg/m3", {Dimension::density, 1.0, 0.0}},
    UnitEntry{"Pa.s", {Dimension::viscosity, 1.0, 0.0}},
    UnitEntry{"mPa.s", {Dimension::viscosity, 1e-3, 0.0}},
    UnitEntry{"cP", {Dimension::viscosity, 1e-3, 0.0}},
    UnitEntry{"kg/mol", {Dimension::molar_mass, 1.0, 0.0}},
    UnitEntry{"g/mol", {Dimension::molar_mass, 1e-3, 0.0}},
    UnitEntry{"J/(kg.K)", {Dimension::specific_heat, 1.0, 0.0}},
    UnitEntry{"W/(m.K)", {Dimension::conductivity, 1.0, 0.0}},
    UnitEntry{"W/(m3.K)", {Dimension::heat_transfer, 1.0, 0.0}},
    UnitEntry{"kg/s", {Dimension::mass_rate, 1.0, 0.0}},
    UnitEntry{"kg/(m2.s)", {Dimension::mass_flux, 1.0, 0.0}},
    UnitEntry{"Pa/s", {Dimension::stress_rate, 1.0, 0.0}},
    UnitEntry{"MPa/s", {Dimension::stress_rate, 1e6, 0.0}},
    UnitEntry{"m2/s", {Dimension::diffusivity, 1.0, 0.0}},
    UnitEntry{"J/kg", {Dimension::specific_energy, 1.0, 0.0}},
    UnitEntry{"J/mol", {Dimension::molar_energy, 1.0, 0.0}},
    UnitEntry{"1/m", {Dimension::inverse_length, 1.0, 0.0}},
    UnitEntry{"mol/(m2.Pa.s)", {Dimension::rate_constant, 1.0, 0.0}},
    UnitEntry{"mol/(m3.Pa)", {Dimension::henry, 1.0, 0.0}},
    UnitEntry{"m3/mol", {Dimension::molar_volume, 1.0, 0.0}},
    UnitEntry{"cm3/mol", {Dimension::molar_volume, 1e-6, 0.0}},
    UnitEntry{"m/s2", {Dimension::acceleration, 1.0, 0.0}},
    UnitEntry{"m/s", {Dimension::velocity, 1.0, 0.0}},
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace

std::string_view dimension_name(Dimension d)
{
    switch (d) {
    case Dimension::dimensionless: return "dimensionless";
    case Dimension::pressure: return "pressure";
    case Dimension::temperature: return "temperature";
    case Dimension::length: return "length";
    case Dimension::area: return "area";
    case Dimension::volume: return "volume";
    case Dimension::time: return "time";
    case Dimension::density: return "density";
    case Dimension::viscosity: return "viscosity";
    case Dimension::molar_mass: return "molar mass";
    case Dimension::specific_heat: return "specific heat";
    case Dimension::conductivity: return "thermal conductivity";
    case Dimension::mass_rate: return "mass rate";
    case Dimension::mass_flux: return "mass flux";
    case Dimension::stress_rate: return "stress rate";
    case Dimension::diffusivity: return "diffusivity";
    case Dimension::specific_energy: return "specific energy";
    case Dimension::molar_energy: return "molar energy";
    case Dimension::inverse_length: return "inverse length";
    case Dimension::rate_constant: return "rate constant";
    case Dimension::henry: return "Henry constant";
    case Dimension::molar_volume: return "molar volume";
    case Dimension::acceleration: return "acceleration";
    case Dimension::velocity: return "velocity";
    case Dimension::heat_transfer: return "volumetric heat transfer";
    }
    return "unknown";
}

std::string_view si_symbol(Dimension d)
{
    switch (d) {
    case Dimension::dimensionless: return "";
    case Dimension::pressure: return "Pa";
    case Dimension::temperature: return "K";
    case Dimension::length: return "m";
    case Dimension::area: return "m2";
    case Dimension::volume: return "m3";
    case Dimension::time: return "s";
    case Dimension::density: return "kg/m3";
    case Dimension::viscosity: return "Pa.s";
    case Dimension::molar_mass: return "kg/mol";
    case Dimension::specific_heat: return "J/(kg.K)";
    case Dimension::conductivity: return "W/(m.K)";
    case Dimension::mass_rate: return "kg/s";
    case Dimension::mass_flux: return "kg/(m2.s)";
    case Dimension::stress_rate: return "Pa/s";
    case Dimension::diffusivity: return "m2/s";
    case Dimension::specific_energy: return "J/kg";
    case Dimension::molar_energy: return "J/mol";
    case Dimension::inverse_length: return "1/m";
    case Dimension::rate_constant: return "mol/(m2.Pa.s)";
    case Dimension::henry: return "mol/(m3.Pa)";
    case Dimension::molar_volume: return "m3/mol";
    case Dimension::acceleration: return "m/s2";
    case Dimension::velocity: return "m/s";
    case Dimension::heat_transfer: return "W/(m3.K)";
    }
    return "";
}

UnitInfo lookup_unit(std::string_view symbol)
{
    for (const auto& u : kUnits) {
        if (u.symbol == symbol)
            return u.info;
    }
    throw ConfigError("unknown unit '" + std::string(symbol) + "'");
}

double parse_quantity(std::string_view text, Dimension expected)
{
    text = trim(text);
    if (text.empty())
        throw ConfigError("empty quantity");

    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc())
        throw ConfigError("not a number: '" + std::string(text) + "'");

    std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
    if (unit.empty())
        return value;

    const UnitInfo info = lookup_unit(unit);
    if (info.dimension != expected) {
        throw ConfigError("unit '" + std::string(unit) + "' is a " + std::string(dimension_name(info.dimension)) +
                          ", expected " + std::string(dimension_name(expected)));
    }
    return info.factor * value + info.offset;
}

} // namespace hydrogeo
