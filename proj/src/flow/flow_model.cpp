#include "hydrogeo/flow/flow_model.hpp"

#include "hydrogeo/constitutive/fluid.hpp"
#include "hydrogeo/constitutive/hydraulic.hpp"
#include "hydrogeo/constitutive/mechanics.hpp"
#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/saturation.hpp"
#include "hydrogeo/kinetics/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hydrogeo {

namespace {

const char* kEquationNames[4] = {"methane mass", "water mass", "hydrate mass", "energy"};

// Taper applied to fixed-rate wells so a phase cannot be withdrawn once it is gone.
double well_taper(double saturation)
{
    return 1.0 - std::exp(-std::max(saturation, 0.0) / 0.02);
}

void check_finite(double v, Index cell, const char* field)
{
    if (!std::isfinite(v))
        throw SolverError("non-finite " + std::string(field) + " in cell " + std::to_string(cell));
}

struct FaceGeometry {
    double area;
    double dist_a;     // centre of a to the face
    double dist_b;     // face to centre of b; zero for a boundary ghost
    double z_a;
    double z_b;
    double velocity;   // solid velocity along the a -> b normal
};

FaceFlux pair_flux(const CellProperties& a, const CellProperties& b, const FaceGeometry& g, double gravity,
                   bool diffusion, bool conduction)
{
    FaceFlux f;
    const bool ghost = g.dist_b == 0.0;
    const double trans = g.area / (g.dist_a / a.permeability + (ghost ? 0.0 : g.dist_b / b.permeability));
    for (int ph = 0; ph < 2; ++ph) {
        const double pa = ph == phase_water ? a.water_pressure : a.gas_pressure;
        const double pb = ph == phase_water ? b.water_pressure : b.gas_pressure;
        const double rho_face = 0.5 * (a.transport_density[ph] + b.transport_density[ph]);
        const double dphi = (pb + rho_face * gravity * g.z_b) - (pa + rho_face * gravity * g.z_a);
        const CellProperties& up = dphi <= 0.0 ? a : b;
        const double q = -trans * up.mobility[ph] * dphi;
        f.darcy[ph] = q;
        const double mass = q * up.transport_density[ph];
        f.advective[comp_methane] += mass * up.mass_fraction[ph][comp_methane];
        f.advective[comp_water] += mass * up.mass_fraction[ph][comp_water];
        f.advective[eq_energy] += mass * up.enthalpy[ph];
    }
    const double dist = g.dist_a + g.dist_b;
    if (diffusion && !ghost) {
        for (int ph = 0; ph < 2; ++ph) {
            const double coeff = 0.5 * (a.diffusion[ph] + b.diffusion[ph]);
            const double j = -g.area * coeff *
                             (b.mass_fraction[ph][comp_methane] - a.mass_fraction[ph][comp_methane]) / dist;
            f.diffusive[comp_methane] += j;
            f.diffusive[comp_water] -= j;
        }
    }
    if (conduction) {
        const double k = ghost ? a.conductivity : 0.5 * (a.conductivity + b.conductivity);
        f.conductive = -g.area * k * (b.temperature - a.temperature) / dist;
    }
    if (g.velocity != 0.0) {
        const CellProperties& up = (ghost || g.velocity >= 0.0) ? a : b;
        const double v = g.velocity * g.area;
        f.solid[eq_methane] = v * up.accumulation[eq_methane];
        f.solid[eq_water] = v * up.accumulation[eq_water];
        f.solid[eq_hydrate] = v * up.accumulation[eq_hydrate];
        const double enthalpy = up.porosity * (up.water_saturation * up.density[phase_water] * up.enthalpy[phase_water] +
                                  up.gas_saturation * up.density[phase_gas] * up.enthalpy[phase_gas]) +
                   up.accumulation[eq_hydrate] * up.hydrate_energy;
        f.solid[eq_energy] = v * enthalpy;
    }
    return f;
}

} // namespace

std::array<double, 4> FaceFlux::total() const
{
    std::array<double, 4> t{};
    for (int e = 0; e < 4; ++e)
        t[e] = advective[e] + solid[e];
    t[eq_methane] += diffusive[comp_methane];
    t[eq_water] += diffusive[comp_water];
    t[eq_energy] += conductive;
    return t;
}

FlowModel::FlowModel(const StructuredGrid& grid, const MaterialParameters& params,
                     std::vector<FlowBoundaryCondition> bcs, std::vector<Well> wells, const SimulationState& initial)
    : grid_(grid), params_(params), bcs_(std::move(bcs)), wells_(std::move(wells))
{
    const Index n = grid_.num_cells();
    if (initial.flow.size() != kFlowVars * n || initial.porosity.size() != n)
        throw std::invalid_argument("initial state does not match the grid");

    const auto& faces = grid_.boundary_faces();
    boundary_.resize(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        for (std::size_t b = 0; b < bcs_.size(); ++b) {
            if (bcs_[b].faces.matches(faces[f]))
                boundary_[f].condition = static_cast<int>(b);
        }
        for (int v = 0; v < kFlowVars; ++v)
            boundary_[f].initial[v] = initial.flow[kFlowVars * faces[f].cell + v];
    }
    for (const FlowBoundaryCondition& bc : bcs_) {
        if (bc.type == FlowBcType::dirichlet && !bc.use_initial_state && !std::isfinite(bc.gas_pressure))
            throw ConfigError("Dirichlet flow condition '" + bc.name + "' needs a gas pressure or initial values");
    }
    cell_wells_.resize(static_cast<std::size_t>(n));
    for (std::size_t w = 0; w < wells_.size(); ++w) {
        const Index c = grid_.locate(wells_[w].location);
        well_cells_.push_back({c, static_cast<int>(w)});
        cell_wells_[static_cast<std::size_t>(c)].push_back(static_cast<int>(w));
    }

    coupling_.porosity = initial.porosity;
    coupling_.porosity_old = initial.porosity;
    coupling_.interior_velocity = Eigen::VectorXd::Zero(static_cast<Index>(grid_.interior_faces().size()));
    coupling_.boundary_velocity = Eigen::VectorXd::Zero(static_cast<Index>(faces.size()));
    x_old_ = initial.flow;
    t_new_ = initial.time;

    // Reference magnitudes for residual scaling, taken from the initial state.
    double rho_g = 0.0, rho_w = 0.0, heat = 0.0;
    for (Index c = 0; c < n; ++c) {
        const CellProperties p = properties(initial.flow, c, initial.porosity[c]);
        rho_g += p.density[phase_gas];
        rho_w += p.density[phase_water];
        heat += (1.0 - p.porosity) * params_.soil.density * params_.soil.cv +
                p.porosity * (p.water_saturation * p.density[phase_water] * params_.water.cv +
                              p.gas_saturation * p.density[phase_gas] * params_.gas.cv +
                              p.hydrate_saturation * params_.hydrate.density * params_.hydrate.cv);
    }
    const double inv = 1.0 / static_cast<double>(n);
    scale_ = {std::max(rho_g * inv, 1e-3), std::max(rho_w * inv, 1e-3), params_.hydrate.density,
              std::max(heat * inv, 1.0)};

    props_.resize(static_cast<std::size_t>(n));
    accumulation_old_.resize(static_cast<std::size_t>(n));
    build_pattern();
}

void FlowModel::set_options(const NewtonOptions& options)
{
    options.validate();
    options_ = options;
}

double FlowModel::elevation(const Eigen::Vector3d& p) const
{
    return p[grid_.dimension() - 1];
}

double FlowModel::coupled_porosity(const Eigen::VectorXd& x, Index c) const
{
    if (coupling_.porosity_compressibility.size() == 0)
        return coupling_.porosity[c];
    const double dp = x[kFlowVars * c + var_pressure] - coupling_.pressure_reference[c];
    return coupling_.porosity[c] + coupling_.porosity_compressibility[c] * dp;
}

CellProperties FlowModel::properties(const Eigen::VectorXd& x, Index c, double porosity) const
{
    const MaterialParameters& m = params_;
    CellProperties p;
    const double* xc = x.data() + kFlowVars * c;
    p.gas_pressure = xc[var_pressure];
    p.water_saturation = xc[var_water_saturation];
    p.hydrate_saturation = xc[var_hydrate_saturation];
    p.temperature = xc[var_temperature];
    p.porosity = porosity;
    for (int v = 0; v < kFlowVars; ++v)
        check_finite(xc[v], c, v == 0 ? "gas pressure" : v == 1 ? "water saturation" : v == 2 ? "hydrate saturation"
                                                                                             : "temperature");
    check_finite(porosity, c, "porosity");

    const double sh = p.hydrate_saturation;
    const double t = p.temperature;
    const SaturationSet<double> sat = derived_saturations(p.water_saturation, sh, m.soil.residual_water,
                                                          m.soil.residual_gas, m.soil.saturation_epsilon);
    p.gas_saturation = sat.gas;
    const double sh_safe = std::clamp(sh, 0.0, 1.0 - m.soil.saturation_epsilon);
    p.capillary_pressure = capillary_pressure(sat.effective_water, sh_safe, porosity, m.soil);
    p.water_pressure = p.gas_pressure - p.capillary_pressure;
    p.permeability = intrinsic_permeability(sh_safe, porosity, m.soil);
    const RelativePermeabilities<double> kr = relative_permeabilities(sat.effective_water, m.soil);
    p.mobility[phase_water] = kr.water / phase_viscosity(m.water, t);
    p.mobility[phase_gas] = kr.gas / phase_viscosity(m.gas, t);

    const double mg = m.components.methane_molar_mass;
    const double mw = m.components.water_molar_mass;
    const bool need_pr = m.gas.density_law == DensityLaw::real_gas ||
                         (m.kinetics.enabled && m.kinetics.mode == KineticsMode::full &&
                          m.kinetics.fugacity == FugacityModel::peng_robinson);
    double z = 1.0;
    p.fugacity = p.gas_pressure;
    if (need_pr) {
        const PengRobinsonResult pr = peng_robinson(p.gas_pressure, t, m.peng_robinson);
        z = pr.z;
        if (m.kinetics.fugacity == FugacityModel::peng_robinson)
            p.fugacity = pr.fugacity_coefficient * p.gas_pressure;
    }
    p.density[phase_gas] = phase_density(m.gas, p.gas_pressure, t, mg, z);
    p.transport_density[phase_gas] = phase_transport_density(m.gas, p.gas_pressure, t, mg, z);
    p.density[phase_water] = phase_density(m.water, p.water_pressure, t, mw);
    p.transport_density[phase_water] = phase_transport_density(m.water, p.water_pressure, t, mw);

    VleResult chi;
    if (m.vle.model == VleModel::henry_raoult)
        chi = vle(p.gas_pressure, t, m.vle);
    const auto to_mass = [mg, mw](double methane, double water) {
        const double total = methane * mg + water * mw;
        return std::array<double, 2>{methane * mg / total, water * mw / total};
    };
    p.mass_fraction[phase_gas] = to_mass(chi.gas_methane, chi.gas_water);
    p.mass_fraction[phase_water] = to_mass(chi.water_methane, chi.water_water);

    const double tref = m.thermal.reference_temperature;
    p.enthalpy[phase_water] = specific_enthalpy(m.water.cp, t, tref);
    p.enthalpy[phase_gas] = specific_enthalpy(m.gas.cp, t, tref);
    p.internal_energy[phase_water] = specific_internal_energy(m.water.cv, t, tref);
    p.internal_energy[phase_gas] = specific_internal_energy(m.gas.cv, t, tref);
    p.hydrate_energy = specific_internal_energy(m.hydrate.cv, t, tref);
    p.solid_energy = specific_internal_energy(m.soil.cv, t, tref);
    p.conductivity = effective_conductivity(porosity, p.water_saturation, sh, m.soil.conductivity,
                                            m.hydrate.conductivity, phase_conductivity(m.water, t),
                                            phase_conductivity(m.gas, t));

    if (m.diffusion.enabled && m.vle.model == VleModel::henry_raoult) {
        const double tau = tortuosity(porosity, m.soil.tortuosity_exponent);
        const double dg = diffusion_coefficient(Phase::gas, p.gas_pressure, t, m.diffusion);
        const double dw = diffusion_coefficient(Phase::water, p.gas_pressure, t, m.diffusion,
                                                phase_viscosity(m.water, t), mw);
        p.diffusion[phase_gas] = porosity * std::max(p.gas_saturation, 0.0) * tau * dg * p.density[phase_gas];
        p.diffusion[phase_water] = porosity * std::max(p.water_saturation, 0.0) * tau * dw * p.density[phase_water];
    }

    const double sw = p.water_saturation;
    const double sg = p.gas_saturation;
    const double rw = p.density[phase_water];
    const double rg = p.density[phase_gas];
    const double rh = m.hydrate.density;
    p.accumulation[eq_methane] =
        porosity * (sg * rg * p.mass_fraction[phase_gas][comp_methane] +
                    sw * rw * p.mass_fraction[phase_water][comp_methane]);
    p.accumulation[eq_water] =
        porosity * (sg * rg * p.mass_fraction[phase_gas][comp_water] +
                    sw * rw * p.mass_fraction[phase_water][comp_water]);
    p.accumulation[eq_hydrate] = porosity * sh * rh;
    p.accumulation[eq_energy] =
        (1.0 - porosity) * m.soil.density * p.solid_energy +
        porosity * (sg * rg * p.internal_energy[phase_gas] + sw * rw * p.internal_energy[phase_water] +
                    sh * rh * p.hydrate_energy);

    p.effective_pressure = (sw + sg > 0.0) ? effective_pressure(sw, sg, p.water_pressure, p.gas_pressure)
                                           : p.gas_pressure;

    if (m.kinetics.enabled) {
        KineticState ks{};
        ks.gas_pressure = p.gas_pressure;
        ks.temperature = t;
        ks.water_saturation = sw;
        ks.hydrate_saturation = sh;
        ks.porosity = porosity;
        ks.permeability = p.permeability;
        ks.fugacity = p.fugacity;
        ks.dt = dt_;
        ks.methane_content = p.accumulation[eq_methane];
        const KineticRates rates = kinetic_rates(ks, m);
        p.source = {rates.methane, rates.water, rates.hydrate, rates.heat};
    }
    if (m.thermal.ambient_exchange > 0.0)
        p.source[eq_energy] += m.thermal.ambient_exchange * (m.thermal.ambient_temperature - t);

    for (int e = 0; e < 4; ++e) {
        check_finite(p.accumulation[e], c, kEquationNames[e]);
        check_finite(p.source[e], c, kEquationNames[e]);
    }
    check_finite(p.mobility[0] + p.mobility[1], c, "mobility");
    check_finite(p.permeability, c, "permeability");
    return p;
}

void FlowModel::begin_step(const Eigen::VectorXd& x_old, double dt, double t_new, const FlowCoupling& coupling)
{
    if (!(dt > 0.0))
        throw std::invalid_argument("flow step requires dt > 0");
    x_old_ = x_old;
    dt_ = dt;
    t_new_ = t_new;
    coupling_ = coupling;
    const Index n = grid_.num_cells();
    if (coupling_.interior_velocity.size() == 0)
        coupling_.interior_velocity = Eigen::VectorXd::Zero(static_cast<Index>(grid_.interior_faces().size()));
    if (coupling_.boundary_velocity.size() == 0)
        coupling_.boundary_velocity = Eigen::VectorXd::Zero(static_cast<Index>(grid_.boundary_faces().size()));
    for (Index c = 0; c < n; ++c)
        accumulation_old_[static_cast<std::size_t>(c)] =
            properties(x_old_, c, coupling_.porosity_old[c]).accumulation;
}

CellProperties FlowModel::ghost(const CellProperties& inside, Index face) const
{
    const BoundaryState& bs = boundary_[static_cast<std::size_t>(face)];
    const FlowBoundaryCondition& bc = bcs_[static_cast<std::size_t>(bs.condition)];
    std::array<double, 4> v{inside.gas_pressure, inside.water_saturation, inside.hydrate_saturation,
                            inside.temperature};
    if (bc.use_initial_state)
        v = bs.initial;
    if (std::isfinite(bc.gas_pressure)) {
        double pressure = bc.gas_pressure;
        if (bc.ramp_time > 0.0) {
            const double w = std::min(1.0, t_new_ / bc.ramp_time);
            pressure = bs.initial[var_pressure] + w * (bc.gas_pressure - bs.initial[var_pressure]);
        }
        v[var_pressure] = pressure;
    }
    if (std::isfinite(bc.water_saturation))
        v[var_water_saturation] = bc.water_saturation;
    if (std::isfinite(bc.hydrate_saturation))
        v[var_hydrate_saturation] = bc.hydrate_saturation;
    if (std::isfinite(bc.temperature))
        v[var_temperature] = bc.temperature;
    v[var_water_saturation] = std::min(v[var_water_saturation], 1.0 - v[var_hydrate_saturation]);
    const Eigen::Map<const Eigen::Vector4d> xg(v.data());
    const Eigen::VectorXd xv = xg;
    return properties(xv, 0, inside.porosity);
}

FaceFlux FlowModel::interior_flux(const CellProperties& left, const CellProperties& right, Index face) const
{
    const InteriorFace& f = grid_.interior_faces()[static_cast<std::size_t>(face)];
    FaceGeometry g{};
    g.area = f.area;
    g.dist_a = 0.5 * f.distance;
    g.dist_b = 0.5 * f.distance;
    if (params_.flow_gravity) {
        g.z_a = elevation(grid_.cell_center(f.left));
        g.z_b = elevation(grid_.cell_center(f.right));
    }
    g.velocity = coupling_.interior_velocity[face];
    const bool diffusion = params_.diffusion.enabled && params_.vle.model == VleModel::henry_raoult;
    return pair_flux(left, right, g, params_.flow_gravity ? params_.gravity : 0.0, diffusion, true);
}

FaceFlux FlowModel::boundary_flux(const CellProperties& inside, Index face) const
{
    const BoundaryFace& f = grid_.boundary_faces()[static_cast<std::size_t>(face)];
    const BoundaryState& bs = boundary_[static_cast<std::size_t>(face)];
    const double velocity = coupling_.boundary_velocity[face];
    FaceFlux out;
    if (bs.condition < 0 && velocity == 0.0)
        return out;

    FaceGeometry g{};
    g.area = f.area;
    g.dist_a = f.half_distance;
    g.dist_b = 0.0;
    if (params_.flow_gravity) {
        g.z_a = elevation(grid_.cell_center(f.cell));
        g.z_b = elevation(f.center);
    }
    g.velocity = velocity;
    const double gravity = params_.flow_gravity ? params_.gravity : 0.0;

    if (bs.condition < 0) {
        out = pair_flux(inside, inside, g, gravity, false, false);
        out.darcy = {0.0, 0.0};
        out.advective = {0.0, 0.0, 0.0, 0.0};
        return out;
    }

    const FlowBoundaryCondition& bc = bcs_[static_cast<std::size_t>(bs.condition)];
    const bool thermal = std::isfinite(bc.temperature) || (bc.type == FlowBcType::dirichlet && bc.use_initial_state);
    switch (bc.type) {
    case FlowBcType::dirichlet: {
        const CellProperties outside = ghost(inside, face);
        out = pair_flux(inside, outside, g, gravity, false, thermal);
        break;
    }
    case FlowBcType::mass_flux:
    case FlowBcType::no_flow: {
        CellProperties outside = inside;
        if (std::isfinite(bc.temperature))
            outside.temperature = bc.temperature;
        out = pair_flux(inside, outside, g, gravity, false, std::isfinite(bc.temperature));
        out.darcy = {0.0, 0.0};
        out.advective = {0.0, 0.0, 0.0, 0.0};
        if (bc.type == FlowBcType::mass_flux) {
            const double w = bc.water_mass_flux * f.area;
            const double gm = bc.gas_mass_flux * f.area;
            out.darcy[phase_water] = w / inside.transport_density[phase_water];
            out.darcy[phase_gas] = gm / inside.transport_density[phase_gas];
            for (int k = 0; k < 2; ++k)
                out.advective[k] = w * inside.mass_fraction[phase_water][k] + gm * inside.mass_fraction[phase_gas][k];
            out.advective[eq_energy] = w * inside.enthalpy[phase_water] + gm * inside.enthalpy[phase_gas];
        }
        break;
    }
    }
    return out;
}

void FlowModel::well_terms(const CellProperties& p, const Well& w, double* f) const
{
    const double qw = w.water_rate * well_taper(p.water_saturation);
    const double qg = w.gas_rate * well_taper(p.gas_saturation);
    for (int k = 0; k < 2; ++k)
        f[k] += qw * p.mass_fraction[phase_water][k] + qg * p.mass_fraction[phase_gas][k];
    f[eq_energy] += qw * p.enthalpy[phase_water] + qg * p.enthalpy[phase_gas];
}

void FlowModel::evaluate_all(const Eigen::VectorXd& x)
{
    const Index n = grid_.num_cells();
    for (Index c = 0; c < n; ++c)
        props_[static_cast<std::size_t>(c)] = properties(x, c, coupled_porosity(x, c));
}

void FlowModel::cell_rows(Index c, double* r) const
{
    const CellProperties& p = props_[static_cast<std::size_t>(c)];
    const auto& old = accumulation_old_[static_cast<std::size_t>(c)];
    const double v = grid_.cell_volume();
    for (int e = 0; e < 4; ++e)
        r[e] = v * ((p.accumulation[e] - old[e]) / dt_ - p.source[e]);
    for (const CellFace& cf : grid_.faces_of(c)) {
        if (cf.boundary) {
            // boundary fluxes are already outward
            const std::array<double, 4> t = boundary_flux(p, cf.face).total();
            for (int e = 0; e < 4; ++e)
                r[e] += t[e];
            continue;
        }
        const InteriorFace& f = grid_.interior_faces()[static_cast<std::size_t>(cf.face)];
        const std::array<double, 4> t =
            interior_flux(props_[static_cast<std::size_t>(f.left)], props_[static_cast<std::size_t>(f.right)], cf.face)
                .total();
        for (int e = 0; e < 4; ++e)
            r[e] += cf.sign * t[e];
    }
    for (int w : cell_wells_[static_cast<std::size_t>(c)])
        well_terms(p, wells_[static_cast<std::size_t>(w)], r);
    if (params_.thermal.isothermal)
        r[eq_energy] = (p.temperature - x_old_[kFlowVars * c + var_temperature]) * v * scale_[eq_energy] / dt_;
}

Eigen::VectorXd FlowModel::raw_residual(const Eigen::VectorXd& x)
{
    evaluate_all(x);
    const Index n = grid_.num_cells();
    Eigen::VectorXd r(kFlowVars * n);
    for (Index c = 0; c < n; ++c)
        cell_rows(c, r.data() + kFlowVars * c);
    return r;
}

Eigen::VectorXd FlowModel::scaled_residual(const Eigen::VectorXd& x)
{
    Eigen::VectorXd r = raw_residual(x);
    const double f = dt_ / grid_.cell_volume();
    for (Index i = 0; i < r.size(); ++i)
        r[i] *= f / scale_[static_cast<std::size_t>(i % kFlowVars)];
    return r;
}

void FlowModel::build_pattern()
{
    const Index n = grid_.num_cells();
    std::vector<Eigen::Triplet<double>> entries;
    for (Index c = 0; c < n; ++c) {
        std::vector<Index> rows = grid_.neighbours(c);
        rows.push_back(c);
        for (Index rc : rows) {
            for (int e = 0; e < kFlowVars; ++e)
                for (int v = 0; v < kFlowVars; ++v)
                    entries.emplace_back(static_cast<int>(kFlowVars * rc + e), static_cast<int>(kFlowVars * c + v), 0.0);
        }
    }
    jacobian_.resize(kFlowVars * n, kFlowVars * n);
    jacobian_.setFromTriplets(entries.begin(), entries.end());
    jacobian_.makeCompressed();
    solver_.analyze(jacobian_);
}

void FlowModel::assemble_jacobian(const Eigen::VectorXd& x)
{
    // props_ holds the state at x and r_base the matching scaled residual rows.
    const Index n = grid_.num_cells();
    const double f = dt_ / grid_.cell_volume();
    double* values = jacobian_.valuePtr();
    const int* inner = jacobian_.innerIndexPtr();
    const int* outer = jacobian_.outerIndexPtr();
    std::fill(values, values + jacobian_.nonZeros(), 0.0);

    std::vector<std::array<double, 4>> base(static_cast<std::size_t>(n));
    for (Index c = 0; c < n; ++c)
        cell_rows(c, base[static_cast<std::size_t>(c)].data());

    Eigen::VectorXd xp = x;
    const bool isothermal = params_.thermal.isothermal;
    for (Index c = 0; c < n; ++c) {
        std::vector<Index> rows = grid_.neighbours(c);
        rows.push_back(c);
        const CellProperties saved = props_[static_cast<std::size_t>(c)];
        for (int v = 0; v < kFlowVars; ++v) {
            const Index col = kFlowVars * c + v;
            if (isothermal && v == var_temperature) {
                const int* begin = inner + outer[col];
                const int* end = inner + outer[col + 1];
                const auto pos = std::lower_bound(begin, end, static_cast<int>(col)) - inner;
                values[pos] = 1.0;
                continue;
            }
            const double h = 1e-8 * std::max(std::abs(x[col]), 1.0);
            xp[col] = x[col] + h;
            props_[static_cast<std::size_t>(c)] = properties(xp, c, coupled_porosity(xp, c));
            for (Index rc : rows) {
                std::array<double, 4> rp;
                cell_rows(rc, rp.data());
                const int* begin = inner + outer[col];
                const int* end = inner + outer[col + 1];
                const auto pos =
                    std::lower_bound(begin, end, static_cast<int>(kFlowVars * rc)) - inner;
                for (int e = 0; e < kFlowVars; ++e) {
                    const double d = (rp[e] - base[static_cast<std::size_t>(rc)][e]) / h;
                    values[pos + e] = d * f / scale_[static_cast<std::size_t>(e)];
                }
            }
            xp[col] = x[col];
            props_[static_cast<std::size_t>(c)] = saved;
        }
    }
}

void FlowModel::project(Eigen::VectorXd& x) const
{
    const bool gas_law = params_.gas.density_law == DensityLaw::real_gas ||
                         params_.gas.density_law == DensityLaw::ideal_gas;
    const Index n = grid_.num_cells();
    for (Index c = 0; c < n; ++c) {
        double* xc = x.data() + kFlowVars * c;
        xc[var_hydrate_saturation] = std::clamp(xc[var_hydrate_saturation], 0.0, 1.0);
        xc[var_water_saturation] = std::clamp(xc[var_water_saturation], 0.0, 1.0 - xc[var_hydrate_saturation]);
        if (gas_law)
            xc[var_pressure] = std::max(xc[var_pressure], 1e3);
        xc[var_temperature] = std::clamp(xc[var_temperature], 100.0, 1000.0);
    }
}

double FlowModel::step_limit(const Eigen::VectorXd& x, const Eigen::VectorXd& dx) const
{
    double lambda = 1.0;
    const Index n = grid_.num_cells();
    for (Index c = 0; c < n; ++c) {
        const Index i = kFlowVars * c;
        const double ds = std::max(std::abs(dx[i + var_water_saturation]), std::abs(dx[i + var_hydrate_saturation]));
        if (ds > options_.max_saturation_change)
            lambda = std::min(lambda, options_.max_saturation_change / ds);
        const double dp = std::abs(dx[i + var_pressure]);
        const double pmax = options_.max_relative_pressure_change * std::max(std::abs(x[i + var_pressure]), 1e5);
        if (dp > pmax)
            lambda = std::min(lambda, pmax / dp);
        const double dt = std::abs(dx[i + var_temperature]);
        if (dt > options_.max_temperature_change)
            lambda = std::min(lambda, options_.max_temperature_change / dt);
    }
    return lambda;
}

NewtonReport FlowModel::solve(Eigen::VectorXd& x)
{
    NewtonReport report;
    project(x);
    Eigen::VectorXd r = scaled_residual(x);
    double norm = r.lpNorm<Eigen::Infinity>();
    report.residual_history.push_back(norm);
    const double target = std::max(options_.absolute_tolerance, options_.relative_tolerance * norm);

    for (int it = 0;; ++it) {
        if (norm <= target) {
            report.converged = true;
            break;
        }
        if (it == options_.max_iterations) {
            report.message = "no convergence after " + std::to_string(it) + " iterations";
            break;
        }
        assemble_jacobian(x);
        Eigen::VectorXd dx;
        try {
            solver_.factorize(jacobian_);
            dx = solver_.solve(-r);
        } catch (const SolverError& e) {
            report.message = e.what();
            break;
        }
        double lambda = step_limit(x, dx);
        bool accepted = false;
        Eigen::VectorXd trial;
        Eigen::VectorXd rt;
        double nt = 0.0;
        for (int d = 0; d <= options_.max_damping; ++d) {
            trial = x + lambda * dx;
            project(trial);
            try {
                rt = scaled_residual(trial);
                nt = rt.lpNorm<Eigen::Infinity>();
            } catch (const std::exception&) {
                nt = std::numeric_limits<double>::infinity();
            }
            if (std::isfinite(nt) && nt < norm) {
                accepted = true;
                break;
            }
            lambda *= 0.5;
            ++report.damping_steps;
        }
        if (!accepted) {
            report.message = "line search failed at iteration " + std::to_string(it + 1);
            break;
        }
        x = trial;
        r = rt;
        norm = nt;
        ++report.iterations;
        report.residual_history.push_back(norm);
    }
    return report;
}

ComponentTotals FlowModel::totals(const Eigen::VectorXd& x, const Eigen::VectorXd& porosity) const
{
    ComponentTotals t;
    const double v = grid_.cell_volume();
    const double mh = hydrate_molar_mass(params_);
    const double methane_share = params_.components.methane_molar_mass / mh;
    const double water_share = params_.hydrate.hydration_number * params_.components.water_molar_mass / mh;
    for (Index c = 0; c < grid_.num_cells(); ++c) {
        const CellProperties p = properties(x, c, porosity[c]);
        t.methane += v * (p.accumulation[eq_methane] + methane_share * p.accumulation[eq_hydrate]);
        t.water += v * (p.accumulation[eq_water] + water_share * p.accumulation[eq_hydrate]);
        t.energy += v * p.accumulation[eq_energy];
    }
    return t;
}

StepExchange FlowModel::exchange(const Eigen::VectorXd& x)
{
    evaluate_all(x);
    StepExchange ex;
    const auto& faces = grid_.boundary_faces();
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const FaceFlux flux = boundary_flux(props_[static_cast<std::size_t>(faces[f].cell)], static_cast<Index>(f));
        const std::array<double, 4> t = flux.total();
        ex.methane_out += t[eq_methane];
        ex.water_out += t[eq_water];
        const int b = boundary_[f].condition;
        if (b >= 0 && bcs_[static_cast<std::size_t>(b)].outlet)
            ex.outlet_methane += t[eq_methane];
    }
    for (const WellCell& wc : well_cells_) {
        double f[4] = {0.0, 0.0, 0.0, 0.0};
        well_terms(props_[static_cast<std::size_t>(wc.cell)], wells_[static_cast<std::size_t>(wc.well)], f);
        ex.methane_out += f[eq_methane];
        ex.water_out += f[eq_water];
        if (wells_[static_cast<std::size_t>(wc.well)].outlet)
            ex.outlet_methane += f[eq_methane];
    }
    for (Index c = 0; c < grid_.num_cells(); ++c)
        ex.methane_generation += grid_.cell_volume() * props_[static_cast<std::size_t>(c)].source[eq_methane];
    return ex;
}

} // namespace hydrogeo
