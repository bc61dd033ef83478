#ifndef HYDROGEO_NUMERICS_NEWTON_HPP
#define HYDROGEO_NUMERICS_NEWTON_HPP

#include <string>
#include <vector>

namespace hydrogeo {

struct NewtonOptions {
    double relative_tolerance = 1e-6;
    double absolute_tolerance = 1e-8;
    int max_iterations = 25;
    int max_damping = 6;
    /// Largest accepted change per iteration; the whole update is scaled down to respect it.
    double max_saturation_change = 0.25;
    double max_relative_pressure_change = 0.5;
    double max_temperature_change = 10.0;

    /// Throws ConfigError on non-positive tolerances or counts.
    void validate() const;
};

struct NewtonReport {
    bool converged = false;
    int iterations = 0;
    int damping_steps = 0;
    std::vector<double> residual_history;  // infinity norm of the scaled residual
    std::string message;
};

} // namespace hydrogeo

#endif
