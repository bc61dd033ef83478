#include "hydrogeo/core/state.hpp"

#include "hydrogeo/core/errors.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hydrogeo {

SimulationState make_state(const StructuredGrid& grid)
{
    SimulationState s;
    s.flow = Eigen::VectorXd::Zero(kFlowVars * grid.num_cells());
    s.displacement = Eigen::VectorXd::Zero(grid.dimension() * grid.num_nodes());
    s.porosity = Eigen::VectorXd::Zero(grid.num_cells());
    return s;
}

Eigen::VectorXd assemble_unknowns(const SimulationState& state)
{
    Eigen::VectorXd x(state.flow.size() + state.displacement.size() + state.porosity.size());
    x << state.flow, state.displacement, state.porosity;
    return x;
}

SimulationState partition_unknowns(const Eigen::VectorXd& x, const StructuredGrid& grid, double time)
{
    const Index n1 = kFlowVars * grid.num_cells();
    const Index n2 = grid.dimension() * grid.num_nodes();
    const Index n3 = grid.num_cells();
    if (x.size() != n1 + n2 + n3) {
        std::ostringstream msg;
        msg << "unknown vector has " << x.size() << " entries, grid needs " << n1 + n2 + n3;
        throw std::invalid_argument(msg.str());
    }
    SimulationState s;
    s.flow = x.segment(0, n1);
    s.displacement = x.segment(n1, n2);
    s.porosity = x.segment(n1 + n2, n3);
    s.time = time;
    return s;
}

void check_admissible(const SimulationState& state, const StructuredGrid& grid, double tol)
{
    for (Index c = 0; c < grid.num_cells(); ++c) {
        const double p = state.gas_pressure(c);
        const double sw = state.water_saturation(c);
        const double sh = state.hydrate_saturation(c);
        const double t = state.temperature(c);
        const double phi = state.porosity[c];
        const bool ok = std::isfinite(p) && std::isfinite(sw) && std::isfinite(sh) && std::isfinite(t) &&
                        std::isfinite(phi) && sw >= -tol && sh >= -tol && sw + sh <= 1.0 + tol && phi > 0.0 &&
                        phi < 1.0 && t > 0.0;
        if (!ok) {
            std::ostringstream msg;
            msg << "inadmissible state in cell " << c << ": P_g=" << p << " S_w=" << sw << " S_h=" << sh
                << " T=" << t << " phi=" << phi;
            throw DegenerateStateError(msg.str());
        }
    }
}

} // namespace hydrogeo
