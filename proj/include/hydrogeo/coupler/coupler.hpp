#ifndef HYDROGEO_COUPLER_COUPLER_HPP
#define HYDROGEO_COUPLER_COUPLER_HPP

#include "hydrogeo/core/boundary.hpp"
#include "hydrogeo/core/grid.hpp"
#include "hydrogeo/core/parameters.hpp"
#include "hydrogeo/core/state.hpp"
#include "hydrogeo/flow/flow_model.hpp"
#include "hydrogeo/geomech/mechanics_model.hpp"
#include "hydrogeo/porosity/porosity.hpp"

#include <memory>
#include <string>
#include <vector>

namespace hydrogeo {

enum class CouplingBlocks { flow, flow_porosity, full };

/// Drained stiffness K_dr in the fixed-stress term; automatic is constrained in 1D and bulk otherwise.
enum class DrainedModulus { automatic, bulk, constrained };

struct CouplingConfig {
    CouplingBlocks blocks = CouplingBlocks::full;
    double tolerance = 1e-5;
    int max_iterations = 10;
    double relaxation = 1.0;
    int max_step_cuts = 5;
    double growth_factor = 2.0;
    double pressure_floor = 1e3;        // [Pa] in the relative-change denominators
    double displacement_floor = 1e-9;   // [m]
    bool fixed_stress = true;           // pore compressibility alpha^2/K_dr in the flow block
    DrainedModulus drained_modulus = DrainedModulus::automatic;

    void validate() const;
};

struct StepReport {
    double time = 0.0;          // end of the step
    double dt = 0.0;
    bool success = false;
    int outer_iterations = 0;
    bool outer_converged = false;
    int step_cuts = 0;
    std::vector<int> newton_iterations;              // per outer iteration
    std::vector<std::vector<double>> newton_history; // residual norms per outer iteration
    std::vector<double> outer_changes;
    std::string message;
};

CouplingBlocks parse_blocks(const std::string& name);
std::string blocks_name(CouplingBlocks b);

/**
 * @brief Block Gauss-Seidel driver over flow (F1), mechanics (F2) and porosity (F3).
 *
 * The initial displacement is the equilibrium with the initial pressure and
 * the loads at t = 0; it also fixes the reference state of the grain law.
 */
class CoupledSimulator {
public:
    CoupledSimulator(const StructuredGrid& grid, const MaterialParameters& params,
                     std::vector<FlowBoundaryCondition> flow_bcs, std::vector<Well> wells,
                     std::vector<MechanicsBoundaryCondition> mechanics_bcs, const SimulationState& initial,
                     const CouplingConfig& coupling, const NewtonOptions& newton);

    /// One step of size dt; the state is untouched when the step fails.
    StepReport step(double dt);

    /**
     * @brief Advances to t_target with steps of at most dt_max, halving on failure.
     *
     * Throws StepFailure once a step has been cut max_step_cuts times; the
     * reports of all attempts so far are appended to `reports` first.
     */
    void advance_to(double t_target, double dt_max, std::vector<StepReport>& reports);

    const SimulationState& state() const { return state_; }
    const StructuredGrid& grid() const { return grid_; }
    const MaterialParameters& parameters() const { return params_; }
    const CouplingConfig& coupling() const { return config_; }
    FlowModel& flow() { return *flow_; }
    const FlowModel& flow() const { return *flow_; }

    /// Per-cell properties of the current state.
    std::vector<CellProperties> cell_properties() const;
    Eigen::VectorXd effective_pressure() const;
    Eigen::VectorXd youngs_moduli() const;
    ElasticField elastic_field() const;

    /// Displacement change since t = 0.
    Eigen::VectorXd displacement_change() const { return state_.displacement - initial_displacement_; }

    double cumulative_outlet_methane() const { return cumulative_outlet_methane_; }  // [kg]
    double methane_generation_rate() const { return generation_rate_; }              // [kg/s]
    double outlet_methane_rate() const { return outlet_rate_; }                      // [kg/s]
    long porosity_clamps() const { return porosity_clamps_; }
    double current_dt() const { return dt_current_; }

private:
    Eigen::VectorXd effective_pressure(const Eigen::VectorXd& x, const Eigen::VectorXd& phi) const;
    Eigen::VectorXd youngs_moduli(const Eigen::VectorXd& x, const Eigen::VectorXd& stress_mean) const;
    Eigen::VectorXd fixed_stress_compressibility(const Eigen::VectorXd& x) const;
    Eigen::VectorXd bulk_density(const Eigen::VectorXd& x, const Eigen::VectorXd& phi) const;
    Eigen::VectorXd solve_mechanics(const Eigen::VectorXd& x, const Eigen::VectorXd& phi, double t);
    Eigen::VectorXd mean_compression(const Eigen::VectorXd& u, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& phi) const;

    const StructuredGrid& grid_;
    MaterialParameters params_;
    CouplingConfig config_;
    std::unique_ptr<FlowModel> flow_;
    std::unique_ptr<MechanicsModel> mechanics_;
    SimulationState state_;
    Eigen::VectorXd initial_displacement_;
    PorosityReference reference_;
    Eigen::VectorXd excess_;           // grain-law excess at the current time level
    Eigen::VectorXd stress_mean_;      // compression-positive mean effective stress, lagged one step
    double cumulative_outlet_methane_ = 0.0;
    double generation_rate_ = 0.0;
    double outlet_rate_ = 0.0;
    long porosity_clamps_ = 0;
    double dt_current_ = 0.0;
};

} // namespace hydrogeo

#endif
