// Command-line front end: run / presets / convergence / fit.

#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/units.hpp"
#include "hydrogeo/scenario/config.hpp"
#include "hydrogeo/scenario/runner.hpp"
#include "hydrogeo/scenario/study.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace hydrogeo;

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Common {
    std::string config;
    std::string out_dir;
    std::string t_end;
    std::string dt;
    double refine = 1.0;
    std::vector<std::string> probes;
    std::string blocks;
    bool verbose = false;
};

void add_common(CLI::App& cmd, Common& o)
{
    cmd.add_option("-c,--config", o.config, "Preset name or YAML file")->required()->envname("HYDROGEO_CONFIG");
    cmd.add_option("-o,--out-dir", o.out_dir, "Directory for CSV, VTK and log output")->envname("HYDROGEO_OUT_DIR");
    cmd.add_option("--t-end", o.t_end, "End time, e.g. '40 min'")->envname("HYDROGEO_T_END");
    cmd.add_option("--dt", o.dt, "Time step, e.g. '10 s'")->envname("HYDROGEO_DT");
    cmd.add_option("--refine", o.refine, "Multiply cell counts by this factor")->envname("HYDROGEO_REFINE");
    cmd.add_option("--probe", o.probes, "Extra probe NAME=x[,y[,z]] in metres");
    cmd.add_option("--blocks", o.blocks, "Coupled blocks: flow, flow+poro or full")
        ->check(CLI::IsMember({"flow", "flow+poro", "full"}))
        ->envname("HYDROGEO_BLOCKS");
    cmd.add_flag("-v,--verbose", o.verbose, "Print progress");
}

Probe parse_probe(const std::string& text)
{
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("probe '" + text + "' must look like NAME=x[,y[,z]]");
    Probe p;
    p.name = text.substr(0, eq);
    std::stringstream coords(text.substr(eq + 1));
    std::string item;
    int k = 0;
    while (std::getline(coords, item, ',')) {
        if (k >= 3)
            throw ConfigError("probe '" + text + "' has more than three coordinates");
        p.point[k++] = parse_quantity(item, Dimension::length);
    }
    if (k == 0)
        throw ConfigError("probe '" + text + "' has no coordinates");
    return p;
}

/// Scenario and run options after applying the common flags.
std::pair<ScenarioConfig, RunOptions> prepare(const Common& o)
{
    ScenarioConfig config = resolve_scenario(o.config);
    if (o.refine != 1.0)
        config = refined(config, o.refine);
    RunOptions run;
    run.out_dir = o.out_dir;
    if (!o.t_end.empty())
        run.t_end = parse_quantity(o.t_end, Dimension::time);
    if (!o.dt.empty())
        run.dt = parse_quantity(o.dt, Dimension::time);
    if (!o.blocks.empty())
        run.blocks = parse_blocks(o.blocks);
    for (const auto& p : o.probes)
        run.extra_probes.push_back(parse_probe(p));
    if (o.verbose)
        run.progress = &std::cerr;
    return {config, run};
}

int run_command(const Common& o)
{
    auto [config, options] = prepare(o);
    const RunResult result = run_scenario(config, options);
    if (!options.out_dir.empty()) {
        std::ofstream normalized(std::filesystem::path(options.out_dir) / "scenario.yaml");
        normalized << dump_scenario(apply_overrides(config, options));
    }
    std::size_t outer = 0;
    for (const auto& r : result.reports)
        outer += static_cast<std::size_t>(r.outer_iterations);
    std::printf("%s: %zu step attempts, %zu outer iterations, final time %.6g s\n", config.name.c_str(),
                result.reports.size(), outer, result.final_state.time);
    if (!result.series.empty())
        std::printf("cumulative gas %.6g m3 (standard conditions)\n", result.series.back().cumulative_gas);
    if (!result.completed) {
        std::fprintf(stderr, "error: %s\n", result.message.c_str());
        return kExitSolver;
    }
    return 0;
}

int convergence_command(const Common& o, int coarse_cells, const std::string& coarse_dt, int levels,
                        const std::string& time, const std::string& reference)
{
    auto [config, options] = prepare(o);
    config = apply_overrides(config, options);
    const double t = parse_quantity(time, Dimension::time);
    const double dt0 = parse_quantity(coarse_dt, Dimension::time);
    const ReferenceSource source = reference == "finest" ? ReferenceSource::finest : ReferenceSource::analytic;
    const ConvergenceResult r =
        convergence_study(config, halving_levels(config, coarse_cells, dt0, levels), t, source, options.progress);

    std::ostringstream table;
    table << "cells,spacing,dt,l2_error\n";
    for (const auto& row : r.rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%d,%.10g,%.10g,%.10g\n", row.cells, row.spacing, row.dt, row.error);
        table << line;
    }
    std::cout << table.str();
    std::printf("slope %.4f%s\n", r.slope, r.degenerate ? " (degenerate: errors do not change with refinement)" : "");
    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        std::ofstream(std::filesystem::path(options.out_dir) / "convergence.csv") << table.str();
    }
    return 0;
}

int fit_command(const Common& o, const std::string& observed, double lower, double upper, double tol)
{
    auto [config, options] = prepare(o);
    config = apply_overrides(config, options);
    const ObservedSeries data = read_observed_series(observed);
    const FitResult fit = fit_rate_constant(config, data, lower, upper, tol, options.progress);
    std::printf("k0 %.6g mol/(m2.Pa.s), misfit %.6g m3, %d evaluations\n", fit.rate_constant, fit.misfit,
                fit.evaluations);
    if (!fit.warning.empty())
        std::fprintf(stderr, "warning: %s\n", fit.warning.c_str());
    return 0;
}

int presets_command(const std::string& dump)
{
    if (!dump.empty()) {
        std::cout << dump_scenario(load_preset(dump));
        return 0;
    }
    for (const auto& name : preset_names()) {
        const ScenarioConfig c = load_preset(name);
        std::printf("%-14s %s\n", name.c_str(), c.description.c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coupled flow, geomechanics and hydrate kinetics simulator"};
    app.require_subcommand(1);

    Common run_opts;
    auto* run = app.add_subcommand("run", "Run a scenario");
    add_common(*run, run_opts);

    std::string dump;
    auto* presets = app.add_subcommand("presets", "List the shipped presets or print one normalized");
    presets->add_option("--dump", dump, "Preset to print in normalized SI form");

    Common conv_opts;
    int coarse_cells = 25;
    std::string coarse_dt = "2 s";
    int levels = 6;
    std::string time = "10 s";
    std::string reference = "analytic";
    auto* conv = app.add_subcommand("convergence", "Grid convergence study of the gas pressure");
    add_common(*conv, conv_opts);
    conv->add_option("--coarse-cells", coarse_cells, "Cells along x on the coarsest level");
    conv->add_option("--coarse-dt", coarse_dt, "Time step on the coarsest level");
    conv->add_option("--levels", levels, "Number of levels; cells double and dt halves per level");
    conv->add_option("--time", time, "Comparison time");
    conv->add_option("--reference", reference, "analytic or finest")->check(CLI::IsMember({"analytic", "finest"}));

    Common fit_opts;
    std::string observed;
    double lower = 1e3, upper = 1e5, tol = 1e-3;
    auto* fit = app.add_subcommand("fit", "Fit the kinetic rate constant to a cumulative gas curve");
    add_common(*fit, fit_opts);
    fit->add_option("--observed", observed, "CSV with time [s] and cumulative gas [m3]")->required();
    fit->add_option("--lower", lower, "Lower bound for k0");
    fit->add_option("--upper", upper, "Upper bound for k0");
    fit->add_option("--tol", tol, "Relative tolerance on k0");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run->parsed())
            return run_command(run_opts);
        if (presets->parsed())
            return presets_command(dump);
        if (conv->parsed())
            return convergence_command(conv_opts, coarse_cells, coarse_dt, levels, time, reference);
        if (fit->parsed())
            return fit_command(fit_opts, observed, lower, upper, tol);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const StepFailure& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const DegenerateStateError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    }
    return 0;
}
