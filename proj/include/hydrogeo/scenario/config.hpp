#ifndef HYDROGEO_SCENARIO_CONFIG_HPP
#define HYDROGEO_SCENARIO_CONFIG_HPP

#include "hydrogeo/core/boundary.hpp"
#include "hydrogeo/core/grid.hpp"
#include "hydrogeo/core/parameters.hpp"
#include "hydrogeo/core/state.hpp"
#include "hydrogeo/coupler/coupler.hpp"
#include "hydrogeo/numerics/newton.hpp"

#include <Eigen/Core>

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace hydrogeo {

struct GridSpec {
    int dimension = 1;
    std::array<int, 3> cells{1, 1, 1};
    std::array<double, 3> extents{1.0, 1.0, 1.0};
    double transverse = 1.0;  // cross-section area in 1D, thickness in 2D
};

/**
 * @brief Initial values of one region; unset entries fall back to the enclosing defaults.
 *
 * `effective_pressure` replaces `gas_pressure` by adding the saturation-weighted
 * capillary pressure; `effective_porosity` replaces `porosity` as phi (1 - S_h).
 */
struct InitialValues {
    double gas_pressure = kUnset;
    double effective_pressure = kUnset;
    double water_saturation = kUnset;
    double hydrate_saturation = kUnset;
    double temperature = kUnset;
    double porosity = kUnset;
    double effective_porosity = kUnset;
};

/// Cells whose centres lie inside [lower, upper] take these values; later regions win.
struct InitialRegion {
    std::string name;
    Eigen::Vector3d lower = Eigen::Vector3d::Constant(-std::numeric_limits<double>::infinity());
    Eigen::Vector3d upper = Eigen::Vector3d::Constant(std::numeric_limits<double>::infinity());
    InitialValues values;
};

struct InitialSpec {
    InitialValues values;
    std::vector<InitialRegion> regions;
};

struct TimeSpec {
    double dt = 0.0;
    double t_end = 0.0;
    double output_interval = 0.0;   // probe sampling; 0 records every step
    std::vector<double> snapshots;  // field dumps
};

struct Probe {
    std::string name;
    Eigen::Vector3d point = Eigen::Vector3d::Zero();
};

struct OutputSpec {
    bool probes = true;
    bool series = true;
    bool snapshots = true;
    double standard_pressure = 101325.0;     // for gas volumes
    double standard_temperature = 273.15;
};

enum class ReferenceKind { none, kpe, terzaghi };

/**
 * @brief Analytic solution the scenario is compared against.
 *
 * The drained face is where depth is measured from. KPE takes the constant
 * load, Terzaghi the loading rate; all other coefficients come from the
 * material and the initial state.
 */
struct ReferenceSpec {
    ReferenceKind kind = ReferenceKind::none;
    Side drained_side = Side::xmin;
    double load = 0.0;       // [Pa], compression positive
    double load_rate = 0.0;  // [Pa/s]
};

struct ScenarioConfig {
    std::string name;
    std::string description;
    GridSpec grid;
    MaterialParameters material;
    InitialSpec initial;
    std::vector<FlowBoundaryCondition> flow_boundaries;
    std::vector<Well> wells;
    std::vector<MechanicsBoundaryCondition> mechanics_boundaries;
    CouplingConfig coupling;
    NewtonOptions newton;
    TimeSpec time;
    std::vector<Probe> probes;
    OutputSpec output;
    ReferenceSpec reference;

    /// Throws ConfigError on inconsistent or incomplete settings.
    void validate() const;
};

/// Parses YAML text; `origin` names the source in messages. Errors carry the offending line.
ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "<config>");

/// Reads and parses a file; throws ConfigError if it cannot be opened.
ScenarioConfig load_scenario(const std::string& path);

/// Normalized YAML with every quantity in SI; parsing the result gives the same config.
std::string dump_scenario(const ScenarioConfig& config);

/// Directory of the shipped presets; HYDROGEO_PRESET_DIR overrides the built-in path.
std::string preset_directory();
std::vector<std::string> preset_names();
ScenarioConfig load_preset(const std::string& name);

/// A preset name or a path to a YAML file.
ScenarioConfig resolve_scenario(const std::string& name_or_path);

StructuredGrid make_grid(const ScenarioConfig& config);

/// Cell-wise initial state; displacements are zero (the coupler equilibrates them).
SimulationState initial_state(const ScenarioConfig& config, const StructuredGrid& grid);

/// Cell counts scaled by `factor` along every active axis; throws ConfigError if a count is not integral.
ScenarioConfig refined(const ScenarioConfig& config, double factor);

} // namespace hydrogeo

#endif
