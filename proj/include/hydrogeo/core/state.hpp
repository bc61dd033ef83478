#ifndef HYDROGEO_CORE_STATE_HPP
#define HYDROGEO_CORE_STATE_HPP

#include "hydrogeo/core/grid.hpp"

#include <Eigen/Core>

namespace hydrogeo {

/// Number of flow unknowns per cell: P_g, S_w, S_h, T.
inline constexpr int kFlowVars = 4;

enum FlowVar : int { var_pressure = 0, var_water_saturation = 1, var_hydrate_saturation = 2, var_temperature = 3 };

/**
 * @brief Full unknown set X = [X1 | X2 | X3].
 *
 * X1 is stored interleaved per cell (P_g, S_w, S_h, T); X2 holds nodal
 * displacements node-major with `dimension` components; X3 is the total
 * porosity per cell.
 */
struct SimulationState {
    Eigen::VectorXd flow;          // X1, size 4 * cells
    Eigen::VectorXd displacement;  // X2, size dim * nodes
    Eigen::VectorXd porosity;      // X3, size cells
    double time = 0.0;

    double gas_pressure(Index c) const { return flow[kFlowVars * c + var_pressure]; }
    double water_saturation(Index c) const { return flow[kFlowVars * c + var_water_saturation]; }
    double hydrate_saturation(Index c) const { return flow[kFlowVars * c + var_hydrate_saturation]; }
    double temperature(Index c) const { return flow[kFlowVars * c + var_temperature]; }
    double gas_saturation(Index c) const { return 1.0 - water_saturation(c) - hydrate_saturation(c); }
};

SimulationState make_state(const StructuredGrid& grid);

/// Concatenates X1, X2, X3 into one vector.
Eigen::VectorXd assemble_unknowns(const SimulationState& state);

/// Splits a concatenated vector back into a state; throws std::invalid_argument on size mismatch.
SimulationState partition_unknowns(const Eigen::VectorXd& x, const StructuredGrid& grid, double time = 0.0);

/// Throws DegenerateStateError if a saturation, porosity, pressure or temperature bound is violated.
void check_admissible(const SimulationState& state, const StructuredGrid& grid, double tol = 1e-12);

} // namespace hydrogeo

#endif
