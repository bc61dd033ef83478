#include "hydrogeo/scenario/runner.hpp"

#include "hydrogeo/constitutive/fluid.hpp"
#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/units.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>

namespace hydrogeo {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

/// Output times: the regular step grid, probe cadence and snapshots, merged and capped at t_end.
std::vector<double> output_times(const ScenarioConfig& c)
{
    std::vector<double> t;
    const double end = c.time.t_end;
    const double tol = 1e-9 * c.time.dt;
    const long steps = static_cast<long>(std::ceil(end / c.time.dt - 1e-9));
    for (long k = 1; k <= steps; ++k)
        t.push_back(std::min(end, static_cast<double>(k) * c.time.dt));
    if (c.time.output_interval > 0.0) {
        const long n = static_cast<long>(std::floor(end / c.time.output_interval + 1e-9));
        for (long k = 1; k <= n; ++k)
            t.push_back(static_cast<double>(k) * c.time.output_interval);
    }
    for (double s : c.time.snapshots) {
        if (s > 0.0 && s <= end)
            t.push_back(s);
    }
    std::sort(t.begin(), t.end());
    std::vector<double> out;
    for (double v : t) {
        if (out.empty() || v > out.back() + tol)
            out.push_back(v);
    }
    return out;
}

bool is_due(double t, double interval, double& next, double tol)
{
    if (interval <= 0.0)
        return true;
    if (t + tol >= next) {
        while (next <= t + tol)
            next += interval;
        return true;
    }
    return false;
}

std::string probe_header()
{
    return "time,P_g,P_eff,S_g,S_w,S_h,T,u_x,u_y,u_z,phi,phi_eff,K,q_dev";
}

std::string probe_row(const ProbeSample& p)
{
    std::string row = fmt(p.time);
    for (double v : {p.gas_pressure, p.effective_pressure, p.gas_saturation, p.water_saturation, p.hydrate_saturation,
                     p.temperature, p.displacement[0], p.displacement[1], p.displacement[2], p.porosity,
                     p.effective_porosity, p.permeability, p.deviatoric_stress})
        row += "," + fmt(v);
    return row;
}

std::string sanitize(const std::string& name)
{
    std::string out;
    for (char ch : name)
        out += (std::isalnum(static_cast<unsigned char>(ch)) || ch == '-' || ch == '_' || ch == '.') ? ch : '_';
    return out.empty() ? "probe" : out;
}

} // namespace

ScenarioConfig apply_overrides(const ScenarioConfig& config, const RunOptions& options)
{
    ScenarioConfig c = config;
    if (options.t_end)
        c.time.t_end = *options.t_end;
    if (options.dt)
        c.time.dt = *options.dt;
    if (options.blocks)
        c.coupling.blocks = *options.blocks;
    for (const Probe& p : options.extra_probes)
        c.probes.push_back(p);
    c.validate();
    return c;
}

double standard_gas_density(const ScenarioConfig& config)
{
    return config.output.standard_pressure * config.material.components.methane_molar_mass /
           (constants::gas_constant * config.output.standard_temperature);
}

ProbeSample sample_cell(const CoupledSimulator& sim, Index cell, const ElasticField* field)
{
    const SimulationState& s = sim.state();
    const StructuredGrid& grid = sim.grid();
    ProbeSample p;
    p.time = s.time;
    const CellProperties props = sim.flow().properties(s.flow, cell, s.porosity[cell]);
    p.gas_pressure = props.gas_pressure;
    p.effective_pressure = props.effective_pressure;
    p.gas_saturation = props.gas_saturation;
    p.water_saturation = props.water_saturation;
    p.hydrate_saturation = props.hydrate_saturation;
    p.temperature = props.temperature;
    p.porosity = s.porosity[cell];
    p.effective_porosity = s.porosity[cell] * (1.0 - props.hydrate_saturation);
    p.permeability = props.permeability;

    const int dim = grid.dimension();
    const Eigen::VectorXd du = sim.displacement_change();
    const auto nodes = grid.cell_nodes(cell);
    for (int a = 0; a < grid.nodes_per_cell(); ++a) {
        for (int k = 0; k < dim; ++k)
            p.displacement[k] += du[nodes[static_cast<std::size_t>(a)] * dim + k];
    }
    p.displacement /= grid.nodes_per_cell();
    if (field != nullptr)
        p.deviatoric_stress = field->deviatoric_stress[cell];
    return p;
}

void write_vtk(const std::string& path, const CoupledSimulator& sim, const std::string& title)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    const StructuredGrid& g = sim.grid();
    const SimulationState& s = sim.state();
    const int dim = g.dimension();
    out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET STRUCTURED_POINTS\n";
    out << "DIMENSIONS";
    for (int a = 0; a < 3; ++a)
        out << ' ' << (a < dim ? g.cells(a) + 1 : 1);
    out << "\nORIGIN 0 0 0\nSPACING";
    for (int a = 0; a < 3; ++a)
        out << ' ' << fmt(a < dim ? g.spacing(a) : 1.0);
    out << "\nCELL_DATA " << g.num_cells() << "\n";

    const Index n = g.num_cells();
    const Eigen::VectorXd peff = sim.effective_pressure();
    const ElasticField field = sim.elastic_field();
    auto scalar = [&](const char* name, auto&& value) {
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (Index c = 0; c < n; ++c)
            out << fmt(value(c)) << '\n';
    };
    scalar("gas_pressure", [&](Index c) { return s.gas_pressure(c); });
    scalar("effective_pressure", [&](Index c) { return peff[c]; });
    scalar("gas_saturation", [&](Index c) { return s.gas_saturation(c); });
    scalar("water_saturation", [&](Index c) { return s.water_saturation(c); });
    scalar("hydrate_saturation", [&](Index c) { return s.hydrate_saturation(c); });
    scalar("temperature", [&](Index c) { return s.temperature(c); });
    scalar("porosity", [&](Index c) { return s.porosity[c]; });
    scalar("effective_porosity", [&](Index c) { return s.porosity[c] * (1.0 - s.hydrate_saturation(c)); });
    scalar("volumetric_strain", [&](Index c) { return field.volumetric_strain[c]; });
    scalar("deviatoric_stress", [&](Index c) { return field.deviatoric_stress[c]; });

    const Eigen::VectorXd du = sim.displacement_change();
    out << "POINT_DATA " << g.num_nodes() << "\nVECTORS displacement double\n";
    for (Index node = 0; node < g.num_nodes(); ++node) {
        for (int k = 0; k < 3; ++k)
            out << (k ? " " : "") << fmt(k < dim ? du[node * dim + k] : 0.0);
        out << '\n';
    }
}

RunResult run_scenario(const ScenarioConfig& input, const RunOptions& options, const StepObserver& observer)
{
    const ScenarioConfig c = apply_overrides(input, options);
    const StructuredGrid grid = make_grid(c);
    const SimulationState initial = initial_state(c, grid);

    RunResult result;
    std::vector<Index> probe_cells;
    for (const Probe& p : c.probes) {
        result.probe_names.push_back(p.name);
        probe_cells.push_back(grid.locate(p.point));
    }
    result.probes.resize(c.probes.size());

    const bool write = !options.out_dir.empty();
    std::vector<std::unique_ptr<std::ofstream>> probe_files;
    std::ofstream series_file;
    std::ofstream log;
    if (write) {
        std::filesystem::create_directories(options.out_dir);
        const std::filesystem::path dir(options.out_dir);
        log.open(dir / "run.log");
        log << "scenario " << c.name << "\nblocks " << blocks_name(c.coupling.blocks) << "\ncells";
        for (int a = 0; a < c.grid.dimension; ++a)
            log << ' ' << c.grid.cells[static_cast<std::size_t>(a)];
        log << "\ndt " << fmt(c.time.dt) << " s\nt_end " << fmt(c.time.t_end) << " s\n";
        log << "# time dt outer converged cuts newton message\n";
        if (c.output.probes) {
            for (const Probe& p : c.probes) {
                probe_files.push_back(std::make_unique<std::ofstream>(dir / ("probe_" + sanitize(p.name) + ".csv")));
                *probe_files.back() << probe_header() << "\r\n";
            }
        }
        if (c.output.series) {
            series_file.open(dir / "series.csv");
            series_file << "time,cumulative_gas,generation_rate,production_rate\r\n";
        }
    }

    CoupledSimulator sim(grid, c.material, c.flow_boundaries, c.wells, c.mechanics_boundaries, initial, c.coupling,
                         c.newton);
    const double rho_std = standard_gas_density(c);
    const double tol = 1e-9 * c.time.dt;
    double next_probe = c.time.output_interval;
    std::size_t next_snapshot = 0;
    std::vector<double> snapshots = c.time.snapshots;
    std::sort(snapshots.begin(), snapshots.end());
    std::size_t logged = 0;
    int snapshot_index = 0;

    auto record = [&](bool probes_due) {
        const double t = sim.state().time;
        SeriesSample s;
        s.time = t;
        s.cumulative_gas = sim.cumulative_outlet_methane() / rho_std;
        s.generation_rate = sim.methane_generation_rate() / rho_std * 60.0;
        s.production_rate = sim.outlet_methane_rate() / rho_std * 60.0;
        result.series.push_back(s);
        if (series_file.is_open())
            series_file << fmt(s.time) << ',' << fmt(s.cumulative_gas) << ',' << fmt(s.generation_rate) << ','
                        << fmt(s.production_rate) << "\r\n";

        if (probes_due && !probe_cells.empty()) {
            const ElasticField field = sim.elastic_field();
            for (std::size_t k = 0; k < probe_cells.size(); ++k) {
                result.probes[k].push_back(sample_cell(sim, probe_cells[k], &field));
                if (k < probe_files.size())
                    *probe_files[k] << probe_row(result.probes[k].back()) << "\r\n";
            }
        }
        while (next_snapshot < snapshots.size() && snapshots[next_snapshot] <= t + tol) {
            if (write && c.output.snapshots) {
                char name[64];
                std::snprintf(name, sizeof(name), "fields_%03d.vtk", snapshot_index);
                write_vtk((std::filesystem::path(options.out_dir) / name).string(), sim,
                          c.name + " t=" + fmt(t) + " s");
            }
            ++snapshot_index;
            ++next_snapshot;
        }
    };

    auto flush_log = [&] {
        for (; logged < result.reports.size(); ++logged) {
            const StepReport& r = result.reports[logged];
            int newton = 0;
            for (int k : r.newton_iterations)
                newton += k;
            if (log.is_open()) {
                log << fmt(r.time) << ' ' << fmt(r.dt) << ' ' << r.outer_iterations << ' '
                    << (r.success ? (r.outer_converged ? "yes" : "no") : "failed") << ' ' << r.step_cuts << ' '
                    << newton << (r.message.empty() ? "" : " " + r.message) << '\n';
            }
        }
        if (log.is_open())
            log.flush();
    };

    record(true);
    result.completed = true;
    try {
        for (double t : output_times(c)) {
            sim.advance_to(t, c.time.dt, result.reports);
            flush_log();
            record(is_due(t, c.time.output_interval, next_probe, tol) || t >= c.time.t_end - tol);
            if (observer)
                observer(sim);
            if (options.progress != nullptr)
                *options.progress << "t = " << fmt(t) << " s, steps " << result.reports.size() << '\n';
        }
    } catch (const StepFailure& e) {
        flush_log();
        result.completed = false;
        result.message = e.what();
        if (log.is_open())
            log << "FAILED " << e.what() << '\n';
    }
    result.final_state = sim.state();
    result.porosity_clamps = sim.porosity_clamps();
    if (log.is_open()) {
        log << "porosity_clamps " << result.porosity_clamps << '\n';
        log << (result.completed ? "completed" : "aborted") << '\n';
    }
    return result;
}

} // namespace hydrogeo
