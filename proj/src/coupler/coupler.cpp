#include "hydrogeo/coupler/coupler.hpp"

#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hydrogeo {

namespace {

double relative_change(const Eigen::VectorXd& now, const Eigen::VectorXd& before, double floor)
{
    if (now.size() == 0)
        return 0.0;
    const double diff = (now - before).lpNorm<Eigen::Infinity>();
    return diff / (now.lpNorm<Eigen::Infinity>() + floor);
}

Eigen::VectorXd hydrate_saturations(const Eigen::VectorXd& x)
{
    const Index n = x.size() / kFlowVars;
    Eigen::VectorXd s(n);
    for (Index c = 0; c < n; ++c)
        s[c] = x[kFlowVars * c + var_hydrate_saturation];
    return s;
}

} // namespace

void CouplingConfig::validate() const
{
    if (!(tolerance > 0.0))
        throw ConfigError("coupling tolerance must be positive");
    if (max_iterations < 1)
        throw ConfigError("coupling max_iterations must be at least 1");
    if (!(relaxation > 0.0 && relaxation <= 1.0))
        throw ConfigError("coupling relaxation must lie in (0, 1]");
    if (max_step_cuts < 0)
        throw ConfigError("max_step_cuts must be non-negative");
    if (!(growth_factor >= 1.0))
        throw ConfigError("growth_factor must be at least 1");
}

CouplingBlocks parse_blocks(const std::string& name)
{
    if (name == "flow")
        return CouplingBlocks::flow;
    if (name == "flow+poro")
        return CouplingBlocks::flow_porosity;
    if (name == "full")
        return CouplingBlocks::full;
    throw ConfigError("unknown block set '" + name + "' (expected flow, flow+poro or full)");
}

std::string blocks_name(CouplingBlocks b)
{
    switch (b) {
    case CouplingBlocks::flow:
        return "flow";
    case CouplingBlocks::flow_porosity:
        return "flow+poro";
    case CouplingBlocks::full:
        return "full";
    }
    return "full";
}

CoupledSimulator::CoupledSimulator(const StructuredGrid& grid, const MaterialParameters& params,
                                   std::vector<FlowBoundaryCondition> flow_bcs, std::vector<Well> wells,
                                   std::vector<MechanicsBoundaryCondition> mechanics_bcs,
                                   const SimulationState& initial, const CouplingConfig& coupling,
                                   const NewtonOptions& newton)
    : grid_(grid), params_(params), config_(coupling), state_(initial)
{
    config_.validate();
    flow_ = std::make_unique<FlowModel>(grid_, params_, std::move(flow_bcs), std::move(wells), initial);
    flow_->set_options(newton);

    const Index n = grid_.num_cells();
    if (state_.displacement.size() != grid_.num_nodes() * grid_.dimension())
        state_.displacement = Eigen::VectorXd::Zero(grid_.num_nodes() * grid_.dimension());
    stress_mean_ = Eigen::VectorXd::Zero(n);

    reference_.porosity = state_.porosity;
    reference_.effective_porosity = (state_.porosity.array() * (1.0 - hydrate_saturations(state_.flow).array())).matrix();
    reference_.pressure = effective_pressure(state_.flow, state_.porosity);
    reference_.volumetric_strain = Eigen::VectorXd::Zero(n);

    if (config_.blocks == CouplingBlocks::full) {
        mechanics_ = std::make_unique<MechanicsModel>(grid_, std::move(mechanics_bcs), params_.mechanics.poisson_ratio);
        state_.displacement = solve_mechanics(state_.flow, state_.porosity, state_.time);
        const ElasticField field = elastic_field();
        reference_.volumetric_strain = field.volumetric_strain;
        stress_mean_ = mean_compression(state_.displacement, state_.flow, state_.porosity);
    }
    initial_displacement_ = state_.displacement;
    reference_.grain_modulus = grain_moduli(params_.mechanics, youngs_moduli(state_.flow, stress_mean_));
    excess_ = Eigen::VectorXd::Zero(n);
}

Eigen::VectorXd CoupledSimulator::effective_pressure(const Eigen::VectorXd& x, const Eigen::VectorXd& phi) const
{
    Eigen::VectorXd p(grid_.num_cells());
    for (Index c = 0; c < p.size(); ++c)
        p[c] = flow_->properties(x, c, phi[c]).effective_pressure;
    return p;
}

Eigen::VectorXd CoupledSimulator::youngs_moduli(const Eigen::VectorXd& x, const Eigen::VectorXd& stress_mean) const
{
    Eigen::VectorXd e(grid_.num_cells());
    for (Index c = 0; c < e.size(); ++c)
        e[c] = youngs_modulus_composite(stress_mean[c], x[kFlowVars * c + var_hydrate_saturation], params_.mechanics);
    return e;
}

Eigen::VectorXd CoupledSimulator::fixed_stress_compressibility(const Eigen::VectorXd& x) const
{
    const double nu = params_.mechanics.poisson_ratio;
    const double alpha = params_.mechanics.biot;
    DrainedModulus modulus = config_.drained_modulus;
    if (modulus == DrainedModulus::automatic)
        modulus = grid_.dimension() == 1 ? DrainedModulus::constrained : DrainedModulus::bulk;
    const double factor = modulus == DrainedModulus::constrained ? (1.0 - nu) / ((1.0 + nu) * (1.0 - 2.0 * nu))
                                                                 : 1.0 / (3.0 * (1.0 - 2.0 * nu));
    return (alpha * alpha / factor) * youngs_moduli(x, stress_mean_).cwiseInverse();
}

Eigen::VectorXd CoupledSimulator::bulk_density(const Eigen::VectorXd& x, const Eigen::VectorXd& phi) const
{
    Eigen::VectorXd rho(grid_.num_cells());
    for (Index c = 0; c < rho.size(); ++c) {
        const CellProperties p = flow_->properties(x, c, phi[c]);
        rho[c] = (1.0 - phi[c]) * params_.soil.density +
                 phi[c] * (p.water_saturation * p.density[phase_water] + p.gas_saturation * p.density[phase_gas] +
                           p.hydrate_saturation * params_.hydrate.density);
    }
    return rho;
}

Eigen::VectorXd CoupledSimulator::solve_mechanics(const Eigen::VectorXd& x, const Eigen::VectorXd& phi, double t)
{
    const Eigen::VectorXd e = youngs_moduli(x, stress_mean_);
    const Eigen::VectorXd load = params_.mechanics.biot * effective_pressure(x, phi);
    const Eigen::VectorXd rho = params_.mechanics.gravity ? bulk_density(x, phi) : Eigen::VectorXd();
    return mechanics_->solve(e, load, rho, params_.gravity, t);
}

Eigen::VectorXd CoupledSimulator::mean_compression(const Eigen::VectorXd& u, const Eigen::VectorXd& x,
                                                   const Eigen::VectorXd& phi) const
{
    const ElasticField f = mechanics_->recover(u, youngs_moduli(x, stress_mean_),
                                               params_.mechanics.biot * effective_pressure(x, phi));
    Eigen::VectorXd s(grid_.num_cells());
    for (Index c = 0; c < s.size(); ++c) {
        const SymTensor& t = f.effective_stress[static_cast<std::size_t>(c)];
        s[c] = -(t[0] + t[1] + t[2]) / 3.0;
    }
    return s;
}

StepReport CoupledSimulator::step(double dt)
{
    StepReport rep;
    rep.dt = dt;
    rep.time = state_.time + dt;
    const double t_new = rep.time;
    const bool full = config_.blocks == CouplingBlocks::full;
    const double omega = config_.relaxation;

    Eigen::VectorXd x = state_.flow;
    Eigen::VectorXd phi = state_.porosity;
    Eigen::VectorXd u = state_.displacement;
    Eigen::VectorXd peff_prev = effective_pressure(x, phi);
    Eigen::VectorXd sh_prev = hydrate_saturations(x);
    Eigen::VectorXd excess = excess_;
    const Index n_interior = static_cast<Index>(grid_.interior_faces().size());
    const Index n_boundary = static_cast<Index>(grid_.boundary_faces().size());
    const FaceVelocities still{Eigen::VectorXd::Zero(n_interior), Eigen::VectorXd::Zero(n_boundary)};

    Eigen::VectorXd split_compressibility;
    if (full && config_.fixed_stress)
        split_compressibility = fixed_stress_compressibility(x);

    try {
        for (int k = 1; k <= config_.max_iterations; ++k) {
            FlowCoupling cp;
            cp.porosity = phi;
            cp.porosity_old = state_.porosity;
            if (split_compressibility.size() > 0) {
                cp.porosity_compressibility = split_compressibility;
                cp.pressure_reference = x(Eigen::seqN(var_pressure, grid_.num_cells(), kFlowVars));
            }
            const FaceVelocities v = full ? sediment_velocity(grid_, u, state_.displacement, dt) : still;
            cp.interior_velocity = v.interior;
            cp.boundary_velocity = v.boundary;
            flow_->begin_step(state_.flow, dt, t_new, cp);
            const NewtonReport nr = flow_->solve(x);
            rep.newton_iterations.push_back(nr.iterations);
            rep.newton_history.push_back(nr.residual_history);
            rep.outer_iterations = k;
            if (!nr.converged) {
                rep.message = "flow block: " + nr.message;
                return rep;
            }
            if (config_.blocks == CouplingBlocks::flow) {
                rep.outer_converged = true;
                break;
            }

            const Eigen::VectorXd peff = effective_pressure(x, phi);
            Eigen::VectorXd u_new = u;
            Eigen::VectorXd strain = reference_.volumetric_strain;
            if (full) {
                u_new = u + omega * (solve_mechanics(x, phi, t_new) - u);
                strain = mechanics_->recover(u_new, youngs_moduli(x, stress_mean_), params_.mechanics.biot * peff)
                             .volumetric_strain;
            }
            excess = grain_excess(params_.soil.density_law, params_.mechanics.biot, reference_, peff, strain);
            const FaceVelocities v_new = full ? sediment_velocity(grid_, u_new, state_.displacement, dt) : still;
            const PorosityResult pr = step_porosity(grid_, state_.porosity, excess_, excess, v_new, dt);
            const Eigen::VectorXd phi_new = phi + omega * (pr.porosity - phi);
            const Eigen::VectorXd sh = hydrate_saturations(x);

            const double change = std::max({relative_change(peff, peff_prev, config_.pressure_floor),
                                             relative_change(u_new, u, config_.displacement_floor),
                                             relative_change(phi_new, phi, 1e-12),
                                             relative_change(sh, sh_prev, 1e-12)});
            rep.outer_changes.push_back(change);
            u = u_new;
            phi = phi_new;
            peff_prev = peff;
            sh_prev = sh;
            if (k == config_.max_iterations)
                porosity_clamps_ += pr.clamped;
            if (k >= 2 && change <= config_.tolerance) {
                rep.outer_converged = true;
                porosity_clamps_ += pr.clamped;
                break;
            }
        }
    } catch (const SolverError& e) {
        rep.message = e.what();
        return rep;
    } catch (const DegenerateStateError& e) {
        rep.message = e.what();
        return rep;
    }
    if (!rep.outer_converged)
        rep.message = "outer loop reached max_iterations without meeting the tolerance";

    const StepExchange ex = flow_->exchange(x);
    state_.flow = x;
    state_.porosity = phi;
    state_.displacement = u;
    state_.time = t_new;
    excess_ = excess;
    if (full)
        stress_mean_ = mean_compression(u, x, phi);
    cumulative_outlet_methane_ += ex.outlet_methane * dt;
    outlet_rate_ = ex.outlet_methane;
    generation_rate_ = ex.methane_generation;
    rep.success = true;
    return rep;
}

void CoupledSimulator::advance_to(double t_target, double dt_max, std::vector<StepReport>& reports)
{
    if (!(dt_max > 0.0))
        throw std::invalid_argument("advance_to requires dt_max > 0");
    if (dt_current_ <= 0.0 || dt_current_ > dt_max)
        dt_current_ = dt_max;
    const double eps = 1e-9 * dt_max;
    while (state_.time < t_target - eps) {
        const double remaining = t_target - state_.time;
        const bool clipped = dt_current_ >= remaining - eps;
        double dt = clipped ? remaining : dt_current_;
        int cuts = 0;
        for (;;) {
            StepReport rep = step(dt);
            rep.step_cuts = cuts;
            const bool ok = rep.success;
            reports.push_back(std::move(rep));
            if (ok)
                break;
            if (++cuts > config_.max_step_cuts) {
                throw StepFailure("time step failed after " + std::to_string(config_.max_step_cuts) +
                                  " cuts at t = " + std::to_string(state_.time) + " s: " + reports.back().message);
            }
            dt *= 0.5;
        }
        if (cuts > 0)
            dt_current_ = std::min(dt_max, dt * config_.growth_factor);
        else if (!clipped)
            dt_current_ = std::min(dt_max, dt_current_ * config_.growth_factor);
    }
}

std::vector<CellProperties> CoupledSimulator::cell_properties() const
{
    std::vector<CellProperties> out(static_cast<std::size_t>(grid_.num_cells()));
    for (Index c = 0; c < grid_.num_cells(); ++c)
        out[static_cast<std::size_t>(c)] = flow_->properties(state_.flow, c, state_.porosity[c]);
    return out;
}

Eigen::VectorXd CoupledSimulator::effective_pressure() const
{
    return effective_pressure(state_.flow, state_.porosity);
}

Eigen::VectorXd CoupledSimulator::youngs_moduli() const
{
    return youngs_moduli(state_.flow, stress_mean_);
}

ElasticField CoupledSimulator::elastic_field() const
{
    const Eigen::VectorXd load = params_.mechanics.biot * effective_pressure();
    if (mechanics_)
        return mechanics_->recover(state_.displacement, youngs_moduli(), load);
    MechanicsModel rigid(grid_, {}, params_.mechanics.poisson_ratio);
    return rigid.recover(state_.displacement, youngs_moduli(), load);
}

} // namespace hydrogeo
