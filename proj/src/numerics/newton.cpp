#include "hydrogeo/numerics/newton.hpp"

#include "hydrogeo/core/errors.hpp"

namespace hydrogeo {

void NewtonOptions::validate() const
{
    if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0))
        throw ConfigError("Newton tolerances must be positive");
    if (max_iterations < 1)
        throw ConfigError("Newton max_iterations must be at least 1");
    if (max_damping < 0)
        throw ConfigError("Newton max_damping must be non-negative");
    if (!(max_saturation_change > 0.0) || !(max_relative_pressure_change > 0.0) || !(max_temperature_change > 0.0))
        throw ConfigError("Newton step limits must be positive");
}

} // namespace hydrogeo
