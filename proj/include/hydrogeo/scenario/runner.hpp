#ifndef HYDROGEO_SCENARIO_RUNNER_HPP
#define HYDROGEO_SCENARIO_RUNNER_HPP

#include "hydrogeo/coupler/coupler.hpp"
#include "hydrogeo/scenario/config.hpp"

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace hydrogeo {

/// Command-line style overrides applied on top of a scenario.
struct RunOptions {
    std::string out_dir;                  // empty writes no files
    std::optional<double> t_end;
    std::optional<double> dt;
    std::optional<CouplingBlocks> blocks;
    std::vector<Probe> extra_probes;
    std::ostream* progress = nullptr;     // one line per output time when set
};

struct ProbeSample {
    double time = 0.0;
    double gas_pressure = 0.0;
    double effective_pressure = 0.0;
    double gas_saturation = 0.0;
    double water_saturation = 0.0;
    double hydrate_saturation = 0.0;
    double temperature = 0.0;
    Eigen::Vector3d displacement = Eigen::Vector3d::Zero();  // change since t = 0, cell average
    double porosity = 0.0;
    double effective_porosity = 0.0;
    double permeability = 0.0;
    double deviatoric_stress = 0.0;
};

struct SeriesSample {
    double time = 0.0;
    double cumulative_gas = 0.0;   // produced at outlets [m3 at standard conditions]
    double generation_rate = 0.0;  // kinetic methane release [m3/min at standard conditions]
    double production_rate = 0.0;  // outlet methane [m3/min at standard conditions]
};

struct RunResult {
    bool completed = false;
    std::string message;
    std::vector<std::string> probe_names;
    std::vector<std::vector<ProbeSample>> probes;  // per probe
    std::vector<SeriesSample> series;
    std::vector<StepReport> reports;
    SimulationState final_state;
    long porosity_clamps = 0;
};

/// Called after every output time with the simulator at that time.
using StepObserver = std::function<void(const CoupledSimulator&)>;

/// The scenario with the overrides of `options` applied and validated.
ScenarioConfig apply_overrides(const ScenarioConfig& config, const RunOptions& options);

/**
 * @brief Runs a scenario to t_end, writing probe/series CSV, VTK snapshots and a log to out_dir.
 *
 * A StepFailure ends the run early with completed = false; everything
 * recorded up to then is kept and written.
 */
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {},
                       const StepObserver& observer = {});

/// Methane density at the standard conditions of `output` [kg/m3].
double standard_gas_density(const ScenarioConfig& config);

/// Probe values for one cell of the current simulator state.
ProbeSample sample_cell(const CoupledSimulator& sim, Index cell, const ElasticField* field = nullptr);

/// Legacy ASCII VTK structured-points file with cell fields and the displacement change.
void write_vtk(const std::string& path, const CoupledSimulator& sim, const std::string& title);

} // namespace hydrogeo

#endif
