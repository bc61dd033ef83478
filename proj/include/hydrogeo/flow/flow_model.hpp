#ifndef HYDROGEO_FLOW_FLOW_MODEL_HPP
#define HYDROGEO_FLOW_FLOW_MODEL_HPP

#include "hydrogeo/core/boundary.hpp"
#include "hydrogeo/core/grid.hpp"
#include "hydrogeo/core/parameters.hpp"
#include "hydrogeo/core/state.hpp"
#include "hydrogeo/numerics/linear_solver.hpp"
#include "hydrogeo/numerics/newton.hpp"

#include <Eigen/Core>

#include <array>
#include <vector>

namespace hydrogeo {

/// Equation rows per cell.
enum FlowEquation : int { eq_methane = 0, eq_water = 1, eq_hydrate = 2, eq_energy = 3 };

enum PhaseIndex : int { phase_water = 0, phase_gas = 1 };
enum ComponentIndex : int { comp_methane = 0, comp_water = 1 };

/// Everything the residual needs from one cell, evaluated at one iterate.
struct CellProperties {
    double gas_pressure = 0.0;
    double water_pressure = 0.0;
    double capillary_pressure = 0.0;
    double effective_pressure = 0.0;
    double water_saturation = 0.0;
    double hydrate_saturation = 0.0;
    double gas_saturation = 0.0;
    double temperature = 0.0;
    double porosity = 0.0;
    double permeability = 0.0;
    std::array<double, 2> mobility{};           // k_r / mu
    std::array<double, 2> density{};            // storage density
    std::array<double, 2> transport_density{};
    std::array<std::array<double, 2>, 2> mass_fraction{};  // [phase][component]
    std::array<double, 2> enthalpy{};
    std::array<double, 2> internal_energy{};
    double hydrate_energy = 0.0;
    double solid_energy = 0.0;
    double conductivity = 0.0;
    std::array<double, 2> diffusion{};          // phi S tau D rho per phase [kg/(m s)]
    std::array<double, 4> accumulation{};       // per unit bulk volume
    std::array<double, 4> source{};             // per unit bulk volume and time
    double fugacity = 0.0;
};

/// Fluxes across one face; interior faces run left to right, boundary faces outward.
struct FaceFlux {
    std::array<double, 2> darcy{};       // [m3/s]
    std::array<double, 4> advective{};   // component masses [kg/s], enthalpy [W]
    std::array<double, 2> diffusive{};   // CH4, H2O [kg/s]
    double conductive = 0.0;             // [W]
    std::array<double, 4> solid{};       // carried with the moving skeleton

    std::array<double, 4> total() const;
};

/// Data the flow block receives from the mechanics and porosity blocks.
struct FlowCoupling {
    Eigen::VectorXd porosity;            // phi at the new time level
    Eigen::VectorXd porosity_old;
    Eigen::VectorXd interior_velocity;   // solid velocity normal to each interior face, left to right
    Eigen::VectorXd boundary_velocity;   // outward solid velocity normal to each boundary face
    // Fixed-stress split: phi(P_g) = porosity + porosity_compressibility * (P_g - pressure_reference).
    // Left empty, porosity is held fixed during the flow solve.
    Eigen::VectorXd porosity_compressibility;  // [1/Pa]
    Eigen::VectorXd pressure_reference;        // [Pa]
};

struct ComponentTotals {
    double methane = 0.0;  // free plus hydrate-bound [kg]
    double water = 0.0;    // [kg]
    double energy = 0.0;   // [J]
};

/// Boundary and well exchange over a converged step, positive out of the domain.
struct StepExchange {
    double methane_out = 0.0;        // all outflow [kg/s]
    double water_out = 0.0;
    double outlet_methane = 0.0;     // outflow through outlet faces and wells [kg/s]
    double methane_generation = 0.0; // integral of the kinetic methane source [kg/s]
};

/**
 * @brief Fully implicit finite-volume block for X1 = (P_g, S_w, S_h, T).
 *
 * Two-point fluxes with per-phase potential upwinding, backward Euler in
 * time, damped Newton with a finite-difference Jacobian built one cell
 * column at a time.
 */
class FlowModel {
public:
    FlowModel(const StructuredGrid& grid, const MaterialParameters& params, std::vector<FlowBoundaryCondition> bcs,
              std::vector<Well> wells, const SimulationState& initial);

    void set_options(const NewtonOptions& options);
    const NewtonOptions& options() const { return options_; }

    /// Fixes the old time level, the step size and the coupling data for subsequent solves.
    void begin_step(const Eigen::VectorXd& x_old, double dt, double t_new, const FlowCoupling& coupling);

    /// Residual in kg/s and W per row.
    Eigen::VectorXd raw_residual(const Eigen::VectorXd& x);

    /// Residual scaled by dt / (V * reference density); the Newton convergence measure.
    Eigen::VectorXd scaled_residual(const Eigen::VectorXd& x);

    /// Damped Newton from the guess in x; x holds the last iterate on return.
    NewtonReport solve(Eigen::VectorXd& x);

    CellProperties properties(const Eigen::VectorXd& x, Index c, double porosity) const;
    /// Porosity the flow block uses for cell c at iterate x.
    double coupled_porosity(const Eigen::VectorXd& x, Index c) const;

    FaceFlux interior_flux(const CellProperties& left, const CellProperties& right, Index face) const;

    /// Outward flux through a boundary face; zero for faces without a condition.
    FaceFlux boundary_flux(const CellProperties& inside, Index face) const;

    ComponentTotals totals(const Eigen::VectorXd& x, const Eigen::VectorXd& porosity) const;

    /// Exchange rates at the converged state of the current step.
    StepExchange exchange(const Eigen::VectorXd& x);

    const StructuredGrid& grid() const { return grid_; }
    const MaterialParameters& parameters() const { return params_; }
    double time() const { return t_new_; }
    double dt() const { return dt_; }
    const Eigen::VectorXd& porosity() const { return coupling_.porosity; }

private:
    struct BoundaryState {
        int condition = -1;                  // index into bcs_, -1 for no-flow and adiabatic
        std::array<double, 4> initial{};     // adjacent cell at t = 0
    };
    struct WellCell {
        Index cell;
        int well;
    };

    void evaluate_all(const Eigen::VectorXd& x);
    void cell_rows(Index c, double* r) const;
    void well_terms(const CellProperties& p, const Well& w, double* f) const;
    CellProperties ghost(const CellProperties& inside, Index face) const;
    void build_pattern();
    void assemble_jacobian(const Eigen::VectorXd& x);
    void project(Eigen::VectorXd& x) const;
    double step_limit(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const;
    double elevation(const Eigen::Vector3d& p) const;

    const StructuredGrid& grid_;
    MaterialParameters params_;
    std::vector<FlowBoundaryCondition> bcs_;
    std::vector<Well> wells_;
    std::vector<BoundaryState> boundary_;
    std::vector<WellCell> well_cells_;
    std::vector<std::vector<int>> cell_wells_;
    NewtonOptions options_;

    Eigen::VectorXd x_old_;
    std::vector<std::array<double, 4>> accumulation_old_;
    FlowCoupling coupling_;
    double dt_ = 0.0;
    double t_new_ = 0.0;
    std::array<double, 4> scale_{};

    std::vector<CellProperties> props_;
    SparseMatrix jacobian_;
    SparseDirectSolver solver_;
};

} // namespace hydrogeo

#endif
