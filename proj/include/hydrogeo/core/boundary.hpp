#ifndef HYDROGEO_CORE_BOUNDARY_HPP
#define HYDROGEO_CORE_BOUNDARY_HPP

#include "hydrogeo/core/grid.hpp"

#include <Eigen/Core>

#include <limits>
#include <string>
#include <vector>

namespace hydrogeo {

inline constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

/**
 * @brief Boundary faces on one side, optionally restricted to face centres
 * inside a box and/or to cells containing an anchor coordinate.
 *
 * Anchor components that are NaN are ignored, so an anchor of (0, 0, NaN)
 * picks the column of cells along z that touches the x = y = 0 edge.
 */
struct FaceSelector {
    Side side = Side::xmin;
    bool restricted = false;
    Eigen::Vector3d lower = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());
    Eigen::Vector3d upper = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    Eigen::Vector3d anchor = Eigen::Vector3d::Constant(std::numeric_limits<double>::quiet_NaN());

    bool matches(const BoundaryFace& f) const;
};

enum class FlowBcType { no_flow, dirichlet, mass_flux };

/**
 * @brief Flow/thermal condition on a face set.
 *
 * Unset (NaN) Dirichlet saturations take the adjacent cell value, so the
 * saturation gradient across the face vanishes. An unset temperature means
 * no conduction through the face.
 */
struct FlowBoundaryCondition {
    std::string name;
    FaceSelector faces;
    FlowBcType type = FlowBcType::no_flow;
    double gas_pressure = kUnset;
    double water_saturation = kUnset;
    double hydrate_saturation = kUnset;
    double temperature = kUnset;
    bool use_initial_state = false;   // Dirichlet values copied from the adjacent cell at t = 0
    double ramp_time = 0.0;           // Dirichlet pressure reaches its value linearly over this time
    double water_mass_flux = 0.0;     // outward [kg/(m2 s)]
    double gas_mass_flux = 0.0;
    bool outlet = false;              // methane leaving here counts as production
};

/// Mass production from the cell containing `location`; positive rates withdraw fluid.
struct Well {
    std::string name;
    Eigen::Vector3d location = Eigen::Vector3d::Zero();
    double water_rate = 0.0;  // [kg/s]
    double gas_rate = 0.0;    // [kg/s]
    bool outlet = true;
};

enum class MechanicsBcType { displacement, traction };

/**
 * @brief Mechanics condition for one displacement/traction component on a face set.
 *
 * Traction is tension positive. The value at time t is value + rate * t,
 * limited in magnitude by `limit` when it is finite.
 */
struct MechanicsBoundaryCondition {
    std::string name;
    FaceSelector faces;
    MechanicsBcType type = MechanicsBcType::traction;
    int component = 0;
    double value = 0.0;
    double rate = 0.0;
    double limit = std::numeric_limits<double>::infinity();

    double value_at(double t) const;
};

/// Side from its name ("xmin" ... "zmax"); throws ConfigError otherwise.
Side parse_side(const std::string& name);
std::string side_name(Side s);

} // namespace hydrogeo

#endif
