#include "hydrogeo/scenario/study.hpp"

#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/kinetics/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hydrogeo {

namespace {

double interpolate(const std::vector<SeriesSample>& s, double t)
{
    if (s.empty())
        return 0.0;
    if (t <= s.front().time)
        return s.front().cumulative_gas;
    for (std::size_t k = 1; k < s.size(); ++k) {
        if (t <= s[k].time) {
            const double w = (t - s[k - 1].time) / (s[k].time - s[k - 1].time);
            return (1.0 - w) * s[k - 1].cumulative_gas + w * s[k].cumulative_gas;
        }
    }
    return s.back().cumulative_gas;
}

/// Averages a fine cell field onto a nested coarse grid.
Eigen::VectorXd restrict_field(const StructuredGrid& fine, const Eigen::VectorXd& values, const StructuredGrid& coarse)
{
    std::array<int, 3> ratio{1, 1, 1};
    for (int a = 0; a < fine.dimension(); ++a) {
        if (fine.cells(a) % coarse.cells(a) != 0)
            throw ConfigError("refinement levels do not nest");
        ratio[static_cast<std::size_t>(a)] = fine.cells(a) / coarse.cells(a);
    }
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(coarse.num_cells());
    Eigen::VectorXd count = Eigen::VectorXd::Zero(coarse.num_cells());
    for (Index c = 0; c < fine.num_cells(); ++c) {
        const auto ijk = fine.cell_ijk(c);
        const Index target = coarse.cell_index(ijk[0] / ratio[0], ijk[1] / ratio[1], ijk[2] / ratio[2]);
        sum[target] += values[c];
        count[target] += 1.0;
    }
    return sum.cwiseQuotient(count);
}

Eigen::VectorXd pressure_field(const SimulationState& s, Index n)
{
    Eigen::VectorXd p(n);
    for (Index c = 0; c < n; ++c)
        p[c] = s.gas_pressure(c);
    return p;
}

double rms(const StructuredGrid& grid, const Eigen::VectorXd& e)
{
    // Uniform cells: the volume weights cancel.
    return std::sqrt(e.squaredNorm() / static_cast<double>(grid.num_cells()));
}

} // namespace

double AnalyticReference::depth(double x) const
{
    return drained_side == Side::xmin ? x : length - x;
}

double AnalyticReference::pressure(double x, double t) const
{
    const double z = std::clamp(depth(x), 0.0, length);
    switch (kind) {
    case ReferenceKind::kpe: return kpe_pressure(z, t, kpe, length);
    case ReferenceKind::terzaghi: return initial_pressure + terzaghi_pressure(z, t, terzaghi, length);
    case ReferenceKind::none: break;
    }
    throw ConfigError("scenario has no analytic reference");
}

AnalyticReference make_reference(const ScenarioConfig& config)
{
    if (config.reference.kind == ReferenceKind::none)
        throw ConfigError("scenario '" + config.name + "' has no analytic reference");
    const StructuredGrid grid = make_grid(config);
    const SimulationState s = initial_state(config, grid);
    const MaterialParameters& p = config.material;

    AnalyticReference ref;
    ref.kind = config.reference.kind;
    ref.length = config.grid.extents[0];
    ref.drained_side = config.reference.drained_side;
    ref.initial_pressure = s.gas_pressure(0);

    const double sw = s.water_saturation(0);
    const double sh = s.hydrate_saturation(0);
    const double temperature = s.temperature(0);
    const double phi = s.porosity[0];

    if (ref.kind == ReferenceKind::kpe) {
        const double pe = std::isfinite(p.kinetics.equilibrium_pressure_override)
                              ? p.kinetics.equilibrium_pressure_override
                              : equilibrium_pressure(temperature, p.kinetics);
        const KpeSample sample =
            kpe_sample(p, temperature, sh, phi * (1.0 - sh), sw / (1.0 - sh), config.reference.load, pe);
        ref.kpe = kpe_coefficients(sample);
    } else {
        const auto& m = p.mechanics;
        const double youngs = youngs_modulus_composite(0.0, sh, m);
        const double uniaxial = constrained_modulus(youngs, m.poisson_ratio);
        const double grain = std::isfinite(m.grain_modulus)
                                 ? m.grain_modulus
                                 : drained_bulk_modulus(youngs, m.poisson_ratio) / (1.0 - m.biot);
        const double storage = terzaghi_storage(phi, sw / (1.0 - sh), p.water.bulk_modulus, p.gas.bulk_modulus,
                                                m.biot, grain, uniaxial);
        const double mobility = p.soil.krw / p.water.viscosity + p.soil.krg / p.gas.viscosity;
        ref.terzaghi = terzaghi_coefficients(p.soil.permeability, 1.0 / mobility, m.biot, uniaxial, storage,
                                             ref.length, config.reference.load_rate);
    }
    return ref;
}

double analytic_l2_error(const AnalyticReference& ref, const StructuredGrid& grid, const SimulationState& state)
{
    Eigen::VectorXd e(grid.num_cells());
    for (Index c = 0; c < grid.num_cells(); ++c)
        e[c] = state.gas_pressure(c) - ref.pressure(grid.cell_center(c)[0], state.time);
    return rms(grid, e);
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() < 2 || x.size() != y.size())
        throw std::invalid_argument("a log-log slope needs at least two points");
    double mx = 0.0, my = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += std::log(x[k]) / n;
        my += std::log(y[k]) / n;
    }
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double dx = std::log(x[k]) - mx;
        sxy += dx * (std::log(y[k]) - my);
        sxx += dx * dx;
    }
    if (!(sxx > 0.0))
        throw std::invalid_argument("log-log slope needs distinct abscissae");
    return sxy / sxx;
}

std::vector<RefinementLevel> halving_levels(const ScenarioConfig& config, int coarse_cells, double coarse_dt, int count)
{
    if (coarse_cells < 1 || !(coarse_dt > 0.0) || count < 1)
        throw ConfigError("refinement levels need positive cells, dt and count");
    std::vector<RefinementLevel> levels;
    const double base = static_cast<double>(coarse_cells) / config.grid.cells[0];
    for (int k = 0; k < count; ++k)
        levels.push_back({base * std::ldexp(1.0, k), coarse_dt * std::ldexp(1.0, -k)});
    return levels;
}

ConvergenceResult convergence_study(const ScenarioConfig& config, const std::vector<RefinementLevel>& levels, double time,
                                    ReferenceSource source, std::ostream* progress)
{
    if (levels.size() < 2)
        throw ConfigError("a convergence study needs at least two refinement levels");
    if (!(time > 0.0))
        throw ConfigError("the comparison time must be positive");

    ConvergenceResult result;
    result.source = source;
    result.time = time;

    AnalyticReference ref;
    if (source == ReferenceSource::analytic)
        ref = make_reference(config);

    std::vector<ScenarioConfig> configs;
    std::vector<SimulationState> states;
    for (const RefinementLevel& level : levels) {
        ScenarioConfig c = refined(config, level.factor);
        c.time.dt = level.dt;
        c.time.t_end = time;
        c.time.snapshots.clear();
        c.probes.clear();
        RunResult run = run_scenario(c);
        if (!run.completed)
            throw StepFailure("level with " + std::to_string(c.grid.cells[0]) + " cells failed: " + run.message);
        configs.push_back(c);
        states.push_back(run.final_state);
        if (progress != nullptr)
            *progress << "level " << c.grid.cells[0] << " cells, dt " << level.dt << " s done\n";
    }

    const std::size_t used = source == ReferenceSource::finest ? levels.size() - 1 : levels.size();
    const StructuredGrid finest_grid = make_grid(configs.back());
    const Eigen::VectorXd finest = pressure_field(states.back(), finest_grid.num_cells());
    std::vector<double> cells, errors;
    for (std::size_t k = 0; k < used; ++k) {
        const StructuredGrid grid = make_grid(configs[k]);
        double error = 0.0;
        if (source == ReferenceSource::analytic) {
            error = analytic_l2_error(ref, grid, states[k]);
        } else {
            const Eigen::VectorXd coarse_ref = restrict_field(finest_grid, finest, grid);
            error = rms(grid, pressure_field(states[k], grid.num_cells()) - coarse_ref);
        }
        result.rows.push_back({configs[k].grid.cells[0], grid.spacing(0), configs[k].time.dt, error});
        cells.push_back(configs[k].grid.cells[0]);
        errors.push_back(error);
    }
    if (cells.size() < 2)
        throw ConfigError("a convergence study against the finest grid needs at least three levels");

    const auto [lo, hi] = std::minmax_element(errors.begin(), errors.end());
    if (!(*lo > 0.0) || *hi - *lo <= 1e-12 * *hi) {
        result.slope = 0.0;
        result.degenerate = true;
    } else {
        result.slope = loglog_slope(cells, errors);
    }
    return result;
}

ObservedSeries read_observed_series(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open observed series '" + path + "'");
    ObservedSeries s;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double t = 0.0, v = 0.0;
        if (!(row >> t >> v)) {
            if (s.time.empty() && number == 1)
                continue;  // header
            throw ConfigError("bad observed row", number, path);
        }
        if (!s.time.empty() && t <= s.time.back())
            throw ConfigError("observed times must increase", number, path);
        s.time.push_back(t);
        s.volume.push_back(v);
    }
    if (s.time.empty())
        throw ConfigError("observed series '" + path + "' is empty");
    return s;
}

double cumulative_gas_misfit(const ScenarioConfig& config, const ObservedSeries& observed, double k)
{
    ScenarioConfig c = config;
    c.material.kinetics.rate_constant = k;
    c.time.t_end = std::max(c.time.t_end, observed.time.back());
    c.time.snapshots.clear();
    c.probes.clear();
    const RunResult run = run_scenario(c);
    if (!run.completed)
        throw StepFailure("fit evaluation at k = " + std::to_string(k) + " failed: " + run.message);
    double sum = 0.0;
    for (std::size_t i = 0; i < observed.time.size(); ++i) {
        const double d = interpolate(run.series, observed.time[i]) - observed.volume[i];
        sum += d * d;
    }
    return std::sqrt(sum / static_cast<double>(observed.time.size()));
}

FitResult fit_rate_constant(const ScenarioConfig& config, const ObservedSeries& observed, double lower, double upper,
                            double relative_tolerance, std::ostream* progress)
{
    if (!(lower > 0.0) || !(upper > lower))
        throw ConfigError("fit bounds must satisfy 0 < lower < upper");
    if (observed.time.empty())
        throw ConfigError("observed series is empty");

    FitResult fit;
    auto f = [&](double logk) {
        ++fit.evaluations;
        const double m = cumulative_gas_misfit(config, observed, std::exp(logk));
        if (progress != nullptr)
            *progress << "k = " << std::exp(logk) << " misfit " << m << '\n';
        return m;
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(lower), b = std::log(upper);
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    const double tol = std::log1p(relative_tolerance);
    while (b - a > tol) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const double best = fc <= fd ? c : d;
    fit.rate_constant = std::exp(best);
    fit.misfit = std::min(fc, fd);

    const double edge = 2.0 * tol;
    if (best - std::log(lower) <= edge) {
        fit.at_lower_bound = true;
        fit.warning = "fit reached the lower bound; the optimum may lie outside the bracket";
    } else if (std::log(upper) - best <= edge) {
        fit.at_upper_bound = true;
        fit.warning = "fit reached the upper bound; the optimum may lie outside the bracket";
    }
    return fit;
}

} // namespace hydrogeo
