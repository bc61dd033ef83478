#ifndef HYDROGEO_SCENARIO_STUDY_HPP
#define HYDROGEO_SCENARIO_STUDY_HPP

#include "hydrogeo/analytic/kpe.hpp"
#include "hydrogeo/analytic/terzaghi.hpp"
#include "hydrogeo/scenario/config.hpp"
#include "hydrogeo/scenario/runner.hpp"

#include <Eigen/Core>

#include <string>
#include <vector>

namespace hydrogeo {

/// Closed-form pressure for a 1D scenario with a `reference` section.
struct AnalyticReference {
    ReferenceKind kind = ReferenceKind::none;
    KpeCoefficients kpe{};
    TerzaghiCoefficients terzaghi{};
    double length = 0.0;
    Side drained_side = Side::xmin;
    double initial_pressure = 0.0;  // Terzaghi excess pressure is added to this

    /// Distance from the drained face.
    double depth(double x) const;
    double pressure(double x, double t) const;
};

/// Throws ConfigError when the scenario has no analytic reference.
AnalyticReference make_reference(const ScenarioConfig& config);

/// Volume-weighted RMS of P_g minus the analytic pressure at time t.
double analytic_l2_error(const AnalyticReference& ref, const StructuredGrid& grid, const SimulationState& state);

enum class ReferenceSource { analytic, finest };

struct RefinementLevel {
    double factor = 1.0;  // cell-count multiplier relative to the scenario
    double dt = 0.0;
};

struct ConvergenceRow {
    int cells = 0;        // along the first axis
    double spacing = 0.0;
    double dt = 0.0;
    double error = 0.0;   // [Pa]
};

struct ConvergenceResult {
    std::vector<ConvergenceRow> rows;
    double slope = 0.0;       // least-squares slope of log(error) against log(cells)
    bool degenerate = false;  // all errors equal, so the slope carries no information
    ReferenceSource source = ReferenceSource::analytic;
    double time = 0.0;
};

/// Least-squares slope of log(y) against log(x); throws std::invalid_argument on fewer than 2 points.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/**
 * @brief Runs the scenario at each level and reports the P_g L2 error at time t.
 *
 * With ReferenceSource::finest the last level is the reference and is
 * restricted to coarser grids by cell averaging; grids must nest. The slope
 * is taken against the number of cells, so first order reads -1.
 * Throws ConfigError for fewer than two levels.
 */
ConvergenceResult convergence_study(const ScenarioConfig& config, const std::vector<RefinementLevel>& levels, double time,
                                    ReferenceSource source, std::ostream* progress = nullptr);

/// Levels n0 * 2^k with dt0 / 2^k, k = 0 .. count - 1, relative to the scenario grid.
std::vector<RefinementLevel> halving_levels(const ScenarioConfig& config, int coarse_cells, double coarse_dt, int count);

struct ObservedSeries {
    std::vector<double> time;    // [s]
    std::vector<double> volume;  // cumulative gas [m3 at standard conditions]
};

/// Reads a two-column CSV (time, cumulative gas) with an optional header line.
ObservedSeries read_observed_series(const std::string& path);

struct FitResult {
    double rate_constant = 0.0;
    double misfit = 0.0;        // RMS of simulated minus observed cumulative gas
    int evaluations = 0;
    bool at_lower_bound = false;
    bool at_upper_bound = false;
    std::string warning;
};

/// RMS misfit of the scenario's cumulative gas for kinetic rate constant k.
double cumulative_gas_misfit(const ScenarioConfig& config, const ObservedSeries& observed, double k);

/**
 * @brief Golden-section search for the rate constant k0 on log k within [lower, upper].
 *
 * Throws ConfigError when the bounds do not bracket a positive interval.
 * A minimum on a bound sets the matching flag and a warning.
 */
FitResult fit_rate_constant(const ScenarioConfig& config, const ObservedSeries& observed, double lower, double upper,
                            double relative_tolerance = 1e-3, std::ostream* progress = nullptr);

} // namespace hydrogeo

#endif
