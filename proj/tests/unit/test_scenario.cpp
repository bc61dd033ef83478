#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/units.hpp"
#include "hydrogeo/scenario/config.hpp"
#include "hydrogeo/scenario/runner.hpp"
#include "hydrogeo/scenario/study.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

using namespace hydrogeo;
using doctest::Approx;

TEST_CASE("every shipped preset loads and validates")
{
    const std::vector<std::string> names = preset_names();
    CHECK(names.size() == 15);
    for (const char* expected : {"five-spot", "kpe-1", "kpe-9", "reservoir-3d", "tang-run2", "tang-run3", "terzaghi",
                                 "yuhu-2d"})
        CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    for (const std::string& n : names) {
        CAPTURE(n);
        CHECK_NOTHROW(load_preset(n).validate());
    }
    CHECK_THROWS_AS(load_preset("no-such-preset"), ConfigError);
}

TEST_CASE("Tang Run 2 initial conditions")
{
    const ScenarioConfig c = load_preset("tang-run2");
    const StructuredGrid g = make_grid(c);
    const SimulationState s = initial_state(c, g);
    for (Index cell : {Index{0}, g.num_cells() - 1}) {
        CHECK(s.flow[kFlowVars * cell + var_pressure] == Approx(3.535e6));
        CHECK(s.flow[kFlowVars * cell + var_temperature] == Approx(273.15 + 1.54));
        CHECK(s.flow[kFlowVars * cell + var_water_saturation] == Approx(0.2961));
        CHECK(s.flow[kFlowVars * cell + var_hydrate_saturation] == Approx(0.2183));
    }
}

TEST_CASE("five-spot hydrate block covers 0.3 m by 0.3 m")
{
    const ScenarioConfig c = load_preset("five-spot");
    const StructuredGrid g = make_grid(c);
    const SimulationState s = initial_state(c, g);
    double area = 0.0;
    for (Index cell = 0; cell < g.num_cells(); ++cell) {
        const double sh = s.flow[kFlowVars * cell + var_hydrate_saturation];
        if (sh > 0.0) {
            CHECK(sh == Approx(0.5));
            area += g.cell_volume();
        }
    }
    CHECK(area == Approx(0.09).epsilon(1e-12));
}

TEST_CASE("a dumped scenario parses back to the same scenario")
{
    for (const char* name : {"terzaghi", "five-spot", "reservoir-3d"}) {
        CAPTURE(name);
        const ScenarioConfig a = load_preset(name);
        const std::string text = dump_scenario(a);
        const ScenarioConfig b = parse_scenario(text);
        CHECK(dump_scenario(b) == text);
        CHECK(b.grid.cells == a.grid.cells);
        CHECK(b.material.kinetics.rate_constant == a.material.kinetics.rate_constant);
        CHECK(b.time.t_end == a.time.t_end);
    }
}

TEST_CASE("configuration errors name the line")
{
    const std::string text = "grid:\n"
                             "  dimension: 1\n"
                             "  cells: [10]\n"
                             "  extents: [1 m]\n"
                             "  spacing_typo: 3\n"
                             "initial:\n"
                             "  gas_pressure: 1 MPa\n"
                             "time:\n"
                             "  dt: 1 s\n"
                             "  t_end: 10 s\n";
    try {
        parse_scenario(text, "typo.yaml");
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 5);
        CHECK(std::string(e.what()).find("spacing_typo") != std::string::npos);
        CHECK(std::string(e.what()).find("typo.yaml") != std::string::npos);
    }

    try {
        parse_scenario("");
        FAIL("empty scenario accepted");
    } catch (const ConfigError& e) {
        CHECK(e.message() == "missing sections: grid, initial, time");
    }

    CHECK_THROWS_AS(parse_scenario("grid: [unclosed\n"), ConfigError);
}

TEST_CASE("refinement scales cells and keeps the extents")
{
    const ScenarioConfig c = load_preset("five-spot");
    const ScenarioConfig f = refined(c, 2.0);
    CHECK(f.grid.cells[0] == 40);
    CHECK(f.grid.cells[1] == 40);
    CHECK(f.grid.extents == c.grid.extents);
}

TEST_CASE("log-log slope")
{
    CHECK(loglog_slope({10.0, 20.0, 40.0}, {1.0, 0.5, 0.25}) == Approx(-1.0));
    CHECK(loglog_slope({1.0, 10.0}, {3.0, 3.0}) == Approx(0.0));
    CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(loglog_slope({}, {}), std::invalid_argument);
}

TEST_CASE("convergence study input checks")
{
    const ScenarioConfig c = load_preset("kpe-3");
    CHECK_THROWS_AS(convergence_study(c, {{1.0, 1.0}}, 1.0, ReferenceSource::analytic), ConfigError);
    CHECK_THROWS_AS(convergence_study(c, {{1.0, 1.0}, {2.0, 0.5}}, 0.0, ReferenceSource::analytic), ConfigError);
    CHECK_THROWS_AS(convergence_study(load_preset("five-spot"), {{1.0, 1.0}, {2.0, 0.5}}, 1.0,
                                      ReferenceSource::analytic),
                    ConfigError);
    CHECK_THROWS_AS(halving_levels(c, 25, 2.0, 0), ConfigError);

    const std::vector<RefinementLevel> levels = halving_levels(c, 25, 2.0, 3);
    REQUIRE(levels.size() == 3);
    CHECK(levels[2].dt == Approx(0.5));
    CHECK(levels[2].factor == Approx(4.0 * levels[0].factor));
}

TEST_CASE("convergence study of a state that does not move is degenerate")
{
    // no load: the column stays at its initial pressure on every grid
    ScenarioConfig c = load_preset("kpe-3");
    c.mechanics_boundaries.clear();
    c.flow_boundaries.clear();
    c.material.kinetics.enabled = false;
    c.coupling.blocks = CouplingBlocks::flow;
    c.reference.kind = ReferenceKind::none;
    const ConvergenceResult r = convergence_study(c, halving_levels(c, 5, 1.0, 3), 2.0, ReferenceSource::finest);
    CHECK(r.degenerate);
    CHECK(r.slope == 0.0);
}

namespace {

ScenarioConfig small_tang()
{
    ScenarioConfig c = refined(load_preset("tang-run2"), 0.25);
    c.time.t_end = 20.0 * 60.0;
    c.time.dt = 20.0;
    c.time.snapshots.clear();
    c.probes.clear();
    return c;
}

ObservedSeries synthetic(const ScenarioConfig& c, double k)
{
    ScenarioConfig run = c;
    run.material.kinetics.rate_constant = k;
    const RunResult r = run_scenario(run);
    REQUIRE(r.completed);
    ObservedSeries o;
    for (const SeriesSample& s : r.series) {
        if (s.time > 0.0 && std::fmod(s.time, 120.0) < 1e-6) {
            o.time.push_back(s.time);
            o.volume.push_back(s.cumulative_gas);
        }
    }
    REQUIRE(o.time.size() >= 5);
    return o;
}

} // namespace

TEST_CASE("rate-constant fit recovers the constant of a synthetic series")
{
    const ScenarioConfig c = small_tang();
    const ObservedSeries observed = synthetic(c, 1.7e4);
    const FitResult fit = fit_rate_constant(c, observed, 2e3, 2e5, 1e-3);
    CHECK(fit.rate_constant == Approx(1.7e4).epsilon(0.02));
    CHECK_FALSE(fit.at_lower_bound);
    CHECK_FALSE(fit.at_upper_bound);
    CHECK(fit.warning.empty());
}

TEST_CASE("rate-constant fit on a series without gas stops at the lower bound")
{
    const ScenarioConfig c = small_tang();
    ObservedSeries flat;
    flat.time = {300.0, 600.0, 900.0, 1200.0};
    flat.volume = {0.0, 0.0, 0.0, 0.0};
    const FitResult fit = fit_rate_constant(c, flat, 1e2, 1e4, 1e-2);
    CHECK(fit.at_lower_bound);
    CHECK_FALSE(fit.warning.empty());
    CHECK(fit.rate_constant == Approx(1e2).epsilon(0.05));

    CHECK_THROWS_AS(fit_rate_constant(c, flat, 1e4, 1e2), ConfigError);
    CHECK_THROWS_AS(fit_rate_constant(c, flat, 0.0, 1e2), ConfigError);
}
