#include "hydrogeo/scenario/config.hpp"

#include "hydrogeo/constitutive/hydraulic.hpp"
#include "hydrogeo/core/errors.hpp"
#include "hydrogeo/core/saturation.hpp"
#include "hydrogeo/core/units.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace hydrogeo {

namespace {

template <typename E>
struct Named {
    E value;
    std::string_view name;
};

constexpr std::array kDensityLaws = {
    Named<DensityLaw>{DensityLaw::constant, "constant"},
    Named<DensityLaw>{DensityLaw::exponential, "exponential"},
    Named<DensityLaw>{DensityLaw::slightly_compressible, "slightly_compressible"},
    Named<DensityLaw>{DensityLaw::real_gas, "real_gas"},
    Named<DensityLaw>{DensityLaw::ideal_gas, "ideal_gas"},
};
constexpr std::array kViscosityLaws = {
    Named<ViscosityLaw>{ViscosityLaw::constant, "constant"},
    Named<ViscosityLaw>{ViscosityLaw::methane_sutherland, "methane_sutherland"},
    Named<ViscosityLaw>{ViscosityLaw::water_exponential, "water_exponential"},
};
constexpr std::array kConductivityLaws = {
    Named<ConductivityLaw>{ConductivityLaw::constant, "constant"},
    Named<ConductivityLaw>{ConductivityLaw::methane_polynomial, "methane_polynomial"},
    Named<ConductivityLaw>{ConductivityLaw::water_logarithmic, "water_logarithmic"},
};
constexpr std::array kCapillaryModels = {
    Named<CapillaryModel>{CapillaryModel::brooks_corey, "brooks_corey"},
    Named<CapillaryModel>{CapillaryModel::none, "none"},
};
constexpr std::array kRelPermModels = {
    Named<RelPermModel>{RelPermModel::burdine, "burdine"},
    Named<RelPermModel>{RelPermModel::constant, "constant"},
};
constexpr std::array kPermeabilityModels = {
    Named<PermeabilityModel>{PermeabilityModel::hydrate_scaled, "hydrate_scaled"},
    Named<PermeabilityModel>{PermeabilityModel::constant, "constant"},
};
constexpr std::array kSolidDensityLaws = {
    Named<SolidDensityLaw>{SolidDensityLaw::constant, "constant"},
    Named<SolidDensityLaw>{SolidDensityLaw::poroelastic, "poroelastic"},
    Named<SolidDensityLaw>{SolidDensityLaw::storage_consistent, "storage_consistent"},
};
constexpr std::array kVleModels = {
    Named<VleModel>{VleModel::henry_raoult, "henry_raoult"},
    Named<VleModel>{VleModel::immiscible, "immiscible"},
};
constexpr std::array kKineticsModes = {
    Named<KineticsMode>{KineticsMode::full, "full"},
    Named<KineticsMode>{KineticsMode::simplified, "simplified"},
};
constexpr std::array kFugacityModels = {
    Named<FugacityModel>{FugacityModel::peng_robinson, "peng_robinson"},
    Named<FugacityModel>{FugacityModel::pressure, "pressure"},
};
constexpr std::array kDrainedModuli = {
    Named<DrainedModulus>{DrainedModulus::automatic, "auto"},
    Named<DrainedModulus>{DrainedModulus::bulk, "bulk"},
    Named<DrainedModulus>{DrainedModulus::constrained, "constrained"},
};
constexpr std::array kAreaRules = {
    Named<ReactionAreaRule>{ReactionAreaRule::constant, "constant"},
    Named<ReactionAreaRule>{ReactionAreaRule::phi_sh, "phi_sh"},
};
constexpr std::array kHeatLaws = {
    Named<HeatLaw>{HeatLaw::per_mole_hydrate, "per_mole_hydrate"},
    Named<HeatLaw>{HeatLaw::per_kg_methane, "per_kg_methane"},
    Named<HeatLaw>{HeatLaw::none, "none"},
};
constexpr std::array kFlowBcTypes = {
    Named<FlowBcType>{FlowBcType::no_flow, "no_flow"},
    Named<FlowBcType>{FlowBcType::dirichlet, "dirichlet"},
    Named<FlowBcType>{FlowBcType::mass_flux, "mass_flux"},
};
constexpr std::array kMechanicsBcTypes = {
    Named<MechanicsBcType>{MechanicsBcType::displacement, "displacement"},
    Named<MechanicsBcType>{MechanicsBcType::traction, "traction"},
};
constexpr std::array kReferenceKinds = {
    Named<ReferenceKind>{ReferenceKind::none, "none"},
    Named<ReferenceKind>{ReferenceKind::kpe, "kpe"},
    Named<ReferenceKind>{ReferenceKind::terzaghi, "terzaghi"},
};
constexpr std::array kSides = {
    Named<Side>{Side::xmin, "xmin"}, Named<Side>{Side::xmax, "xmax"}, Named<Side>{Side::ymin, "ymin"},
    Named<Side>{Side::ymax, "ymax"}, Named<Side>{Side::zmin, "zmin"}, Named<Side>{Side::zmax, "zmax"},
};
constexpr std::array kComponents = {
    Named<int>{0, "x"},
    Named<int>{1, "y"},
    Named<int>{2, "z"},
};

constexpr std::array<std::string_view, 3> kAxisNames = {"x", "y", "z"};

int line_of(const YAML::Node& node)
{
    return node.IsDefined() ? node.Mark().line + 1 : 0;
}

std::string format_number(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc())
        return "nan";
    return std::string(buf, ptr);
}

std::string format_quantity(double v, Dimension d)
{
    const std::string_view unit = si_symbol(d);
    return unit.empty() ? format_number(v) : format_number(v) + " " + std::string(unit);
}

/// Reads one mapping, remembering which keys were used so leftovers can be reported.
class Reader {
public:
    Reader(const YAML::Node& node, std::string path) : node_(node), path_(std::move(path))
    {
        if (node_.IsDefined() && !node_.IsNull() && !node_.IsMap())
            throw ConfigError("'" + path_ + "' must be a mapping", line_of(node_));
    }

    bool has(const std::string& key) const { return node_.IsMap() && node_[key].IsDefined(); }

    YAML::Node take(const std::string& key)
    {
        used_.insert(key);
        if (!node_.IsMap())
            return YAML::Node(YAML::NodeType::Undefined);
        const YAML::Node& n = node_;
        YAML::Node v = n[key];
        if (v.IsDefined() && v.IsNull())
            throw ConfigError("'" + where(key) + "' has no value", line_of(v));
        return v;
    }

    void require(const std::string& key) const
    {
        if (!has(key))
            throw ConfigError("missing required field '" + where(key) + "'", line_of(node_));
    }

    std::string scalar(const YAML::Node& v, const std::string& key) const
    {
        if (!v.IsScalar())
            throw ConfigError("'" + where(key) + "' must be a scalar", line_of(v));
        return v.Scalar();
    }

    double convert(const YAML::Node& v, const std::string& key, Dimension d) const
    {
        try {
            return parse_quantity(scalar(v, key), d);
        } catch (const ConfigError& e) {
            if (e.line() > 0)
                throw;
            throw ConfigError("'" + where(key) + "': " + e.what(), line_of(v));
        }
    }

    void quantity(const std::string& key, double& out, Dimension d)
    {
        const YAML::Node v = take(key);
        if (v.IsDefined())
            out = convert(v, key, d);
    }

    void number(const std::string& key, double& out) { quantity(key, out, Dimension::dimensionless); }

    void integer(const std::string& key, int& out)
    {
        const YAML::Node v = take(key);
        if (!v.IsDefined())
            return;
        const std::string s = scalar(v, key);
        int value = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw ConfigError("'" + where(key) + "' must be an integer, got '" + s + "'", line_of(v));
        out = value;
    }

    void flag(const std::string& key, bool& out)
    {
        const YAML::Node v = take(key);
        if (!v.IsDefined())
            return;
        scalar(v, key);
        try {
            out = v.as<bool>();
        } catch (const YAML::Exception&) {
            throw ConfigError("'" + where(key) + "' must be true or false", line_of(v));
        }
    }

    void text(const std::string& key, std::string& out)
    {
        const YAML::Node v = take(key);
        if (v.IsDefined())
            out = scalar(v, key);
    }

    template <typename E, std::size_t N>
    void enumeration(const std::string& key, E& out, const std::array<Named<E>, N>& table)
    {
        const YAML::Node v = take(key);
        if (!v.IsDefined())
            return;
        const std::string s = scalar(v, key);
        for (const auto& entry : table) {
            if (entry.name == s) {
                out = entry.value;
                return;
            }
        }
        std::string allowed;
        for (const auto& entry : table)
            allowed += (allowed.empty() ? "" : ", ") + std::string(entry.name);
        throw ConfigError("'" + where(key) + "': unknown value '" + s + "' (expected one of " + allowed + ")",
                          line_of(v));
    }

    /// Sequence of up to three quantities; missing trailing components keep their values.
    void vector(const std::string& key, Eigen::Vector3d& out, Dimension d)
    {
        const YAML::Node v = take(key);
        if (!v.IsDefined())
            return;
        if (!v.IsSequence() || v.size() == 0 || v.size() > 3)
            throw ConfigError("'" + where(key) + "' must be a list of 1 to 3 values", line_of(v));
        for (std::size_t i = 0; i < v.size(); ++i)
            out[static_cast<Eigen::Index>(i)] = convert(v[i], key, d);
    }

    template <typename F>
    void section(const std::string& key, F&& body)
    {
        const YAML::Node v = take(key);
        if (!v.IsDefined())
            return;
        Reader sub(v, where(key));
        body(sub);
        sub.finish();
    }

    template <typename F>
    void list(const std::string& key, F&& body)
    {
        const YAML::Node v = take(key);
        if (!v.IsDefined())
            return;
        if (!v.IsSequence())
            throw ConfigError("'" + where(key) + "' must be a list", line_of(v));
        for (std::size_t i = 0; i < v.size(); ++i) {
            Reader item(v[i], where(key) + "[" + std::to_string(i) + "]");
            if (!v[i].IsMap())
                throw ConfigError("'" + item.path_ + "' must be a mapping", line_of(v[i]));
            body(item);
            item.finish();
        }
    }

    void finish() const
    {
        if (!node_.IsMap())
            return;
        for (auto it = node_.begin(); it != node_.end(); ++it) {
            const std::string key = it->first.Scalar();
            if (!used_.count(key))
                throw ConfigError("unknown key '" + where(key) + "'", line_of(it->first));
        }
    }

    std::string where(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
    const YAML::Node& node() const { return node_; }

private:
    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

/// Emits the same schema as Reader; unset (NaN) and infinite values are left out.
class Writer {
public:
    explicit Writer(YAML::Emitter& out) : out_(out) {}

    bool has(const std::string&) const { return true; }

    void quantity(const std::string& key, double v, Dimension d)
    {
        if (std::isfinite(v))
            out_ << YAML::Key << key << YAML::Value << format_quantity(v, d);
    }
    void number(const std::string& key, double v) { quantity(key, v, Dimension::dimensionless); }
    void integer(const std::string& key, int v) { out_ << YAML::Key << key << YAML::Value << v; }
    void flag(const std::string& key, bool v) { out_ << YAML::Key << key << YAML::Value << v; }
    void text(const std::string& key, const std::string& v)
    {
        if (!v.empty())
            out_ << YAML::Key << key << YAML::Value << v;
    }

    template <typename E, std::size_t N>
    void enumeration(const std::string& key, const E& v, const std::array<Named<E>, N>& table)
    {
        for (const auto& entry : table) {
            if (entry.value == v) {
                out_ << YAML::Key << key << YAML::Value << std::string(entry.name);
                return;
            }
        }
    }

    void vector(const std::string& key, const Eigen::Vector3d& v, Dimension d, int count = 3)
    {
        out_ << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (int i = 0; i < count; ++i)
            out_ << format_quantity(v[i], d);
        out_ << YAML::EndSeq;
    }

    template <typename F>
    void section(const std::string& key, F&& body)
    {
        out_ << YAML::Key << key << YAML::Value << YAML::BeginMap;
        body(*this);
        out_ << YAML::EndMap;
    }

    template <typename T, typename F>
    void list(const std::string& key, const std::vector<T>& items, F&& body)
    {
        if (items.empty())
            return;
        out_ << YAML::Key << key << YAML::Value << YAML::BeginSeq;
        for (const T& item : items) {
            out_ << YAML::BeginMap;
            body(*this, item);
            out_ << YAML::EndMap;
        }
        out_ << YAML::EndSeq;
    }

    YAML::Emitter& emitter() { return out_; }

private:
    YAML::Emitter& out_;
};

// Material schema, shared by Reader and Writer. Field names follow the C++ members.

template <typename V, typename P>
void visit_fluid(V& v, P& f)
{
    v.enumeration("density_law", f.density_law, kDensityLaws);
    v.quantity("density", f.density, Dimension::density);
    v.quantity("reference_pressure", f.reference_pressure, Dimension::pressure);
    v.quantity("bulk_modulus", f.bulk_modulus, Dimension::pressure);
    v.enumeration("viscosity_law", f.viscosity_law, kViscosityLaws);
    v.quantity("viscosity", f.viscosity, Dimension::viscosity);
    v.enumeration("conductivity_law", f.conductivity_law, kConductivityLaws);
    v.quantity("conductivity", f.conductivity, Dimension::conductivity);
    v.quantity("cp", f.cp, Dimension::specific_heat);
    v.quantity("cv", f.cv, Dimension::specific_heat);
}

template <typename V, typename P>
void visit_soil(V& v, P& s)
{
    v.quantity("permeability", s.permeability, Dimension::area);
    v.number("porosity", s.porosity);
    v.enumeration("capillary_model", s.capillary_model, kCapillaryModels);
    v.quantity("entry_pressure", s.entry_pressure, Dimension::pressure);
    v.number("brooks_corey_lambda", s.brooks_corey_lambda);
    v.number("residual_water", s.residual_water);
    v.number("residual_gas", s.residual_gas);
    v.number("m", s.m);
    v.number("a", s.a);
    v.number("capillary_cap_factor", s.capillary_cap_factor);
    v.enumeration("relperm_model", s.relperm_model, kRelPermModels);
    v.number("krw", s.krw);
    v.number("krg", s.krg);
    v.enumeration("permeability_model", s.permeability_model, kPermeabilityModels);
    v.quantity("permeability_floor", s.permeability_floor, Dimension::area);
    v.number("tortuosity_exponent", s.tortuosity_exponent);
    v.enumeration("density_law", s.density_law, kSolidDensityLaws);
    v.quantity("density", s.density, Dimension::density);
    v.quantity("cv", s.cv, Dimension::specific_heat);
    v.quantity("conductivity", s.conductivity, Dimension::conductivity);
    v.number("saturation_epsilon", s.saturation_epsilon);
}

template <typename V, typename P>
void visit_hydrate(V& v, P& h)
{
    v.quantity("density", h.density, Dimension::density);
    v.quantity("molar_mass", h.molar_mass, Dimension::molar_mass);
    v.number("hydration_number", h.hydration_number);
    v.quantity("cv", h.cv, Dimension::specific_heat);
    v.quantity("conductivity", h.conductivity, Dimension::conductivity);
    v.flag("stoichiometric_molar_mass", h.stoichiometric_molar_mass);
}

template <typename V, typename P>
void visit_components(V& v, P& c)
{
    v.quantity("methane_molar_mass", c.methane_molar_mass, Dimension::molar_mass);
    v.quantity("water_molar_mass", c.water_molar_mass, Dimension::molar_mass);
}

template <typename V, typename P>
void visit_vle(V& v, P& p)
{
    v.enumeration("model", p.model, kVleModels);
    v.quantity("henry_reference", p.henry_reference, Dimension::henry);
    v.quantity("henry_temperature_coefficient", p.henry_temperature_coefficient, Dimension::temperature);
    v.quantity("henry_reference_temperature", p.henry_reference_temperature, Dimension::temperature);
    v.quantity("water_molar_volume", p.water_molar_volume, Dimension::molar_volume);
    v.number("antoine_a", p.antoine_a);
    v.number("antoine_b", p.antoine_b);
    v.number("antoine_c", p.antoine_c);
    v.quantity("min_temperature", p.min_temperature, Dimension::temperature);
    v.quantity("max_temperature", p.max_temperature, Dimension::temperature);
}

template <typename V, typename P>
void visit_peng_robinson(V& v, P& p)
{
    v.quantity("critical_temperature", p.critical_temperature, Dimension::temperature);
    v.quantity("critical_pressure", p.critical_pressure, Dimension::pressure);
    v.number("acentric_factor", p.acentric_factor);
}

template <typename V, typename P>
void visit_diffusion(V& v, P& d)
{
    v.flag("enabled", d.enabled);
    v.quantity("gas_reference", d.gas_reference, Dimension::diffusivity);
    v.quantity("gas_reference_pressure", d.gas_reference_pressure, Dimension::pressure);
    v.quantity("gas_reference_temperature", d.gas_reference_temperature, Dimension::temperature);
    v.number("gas_temperature_exponent", d.gas_temperature_exponent);
    v.number("association_factor", d.association_factor);
    v.quantity("solute_molar_volume", d.solute_molar_volume, Dimension::molar_volume);
}

template <typename V, typename P>
void visit_kinetics(V& v, P& k)
{
    v.flag("enabled", k.enabled);
    v.enumeration("mode", k.mode, kKineticsModes);
    v.quantity("rate_constant", k.rate_constant, Dimension::rate_constant);
    v.quantity("activation_temperature", k.activation_temperature, Dimension::temperature);
    v.quantity("a1", k.a1, Dimension::pressure);
    v.number("a2", k.a2);
    v.quantity("a3", k.a3, Dimension::temperature);
    v.quantity("equilibrium_pressure", k.equilibrium_pressure_override, Dimension::pressure);
    v.enumeration("fugacity", k.fugacity, kFugacityModels);
    v.enumeration("area_rule", k.area_rule, kAreaRules);
    v.number("area_fraction", k.area_fraction);
    v.quantity("reference_surface_area", k.reference_surface_area, Dimension::inverse_length);
    v.enumeration("heat_law", k.heat_law, kHeatLaws);
    v.quantity("b1", k.b1, Dimension::molar_energy);
    v.number("b2", k.b2);
    v.quantity("heat_slope", k.heat_slope, Dimension::specific_heat);
    v.quantity("heat_intercept", k.heat_intercept, Dimension::specific_energy);
    v.flag("rate_limiting", k.rate_limiting);
    v.number("reformation_ramp", k.reformation_ramp);
}

template <typename V, typename P>
void visit_mechanics(V& v, P& m)
{
    v.quantity("soil_youngs_modulus", m.soil_youngs_modulus, Dimension::pressure);
    v.quantity("hydrate_youngs_modulus", m.hydrate_youngs_modulus, Dimension::pressure);
    v.number("poisson_ratio", m.poisson_ratio);
    v.number("b", m.b);
    v.number("c", m.c);
    v.number("d", m.d);
    v.quantity("reference_stress", m.reference_stress, Dimension::pressure);
    v.number("biot", m.biot);
    v.quantity("grain_modulus", m.grain_modulus, Dimension::pressure);
    v.flag("gravity", m.gravity);
}

template <typename V, typename P>
void visit_thermal(V& v, P& t)
{
    v.flag("isothermal", t.isothermal);
    v.quantity("reference_temperature", t.reference_temperature, Dimension::temperature);
    v.quantity("ambient_exchange", t.ambient_exchange, Dimension::heat_transfer);
    v.quantity("ambient_temperature", t.ambient_temperature, Dimension::temperature);
}

template <typename V, typename P>
void visit_material(V& v, P& m)
{
    v.section("soil", [&](auto& s) { visit_soil(s, m.soil); });
    v.section("gas", [&](auto& s) { visit_fluid(s, m.gas); });
    v.section("water", [&](auto& s) { visit_fluid(s, m.water); });
    v.section("hydrate", [&](auto& s) { visit_hydrate(s, m.hydrate); });
    v.section("components", [&](auto& s) { visit_components(s, m.components); });
    v.section("vle", [&](auto& s) { visit_vle(s, m.vle); });
    v.section("peng_robinson", [&](auto& s) { visit_peng_robinson(s, m.peng_robinson); });
    v.section("diffusion", [&](auto& s) { visit_diffusion(s, m.diffusion); });
    v.section("kinetics", [&](auto& s) { visit_kinetics(s, m.kinetics); });
    v.section("mechanics", [&](auto& s) { visit_mechanics(s, m.mechanics); });
    v.section("thermal", [&](auto& s) { visit_thermal(s, m.thermal); });
    v.quantity("gravity", m.gravity, Dimension::acceleration);
    v.flag("flow_gravity", m.flow_gravity);
}

template <typename V, typename P>
void visit_initial_values(V& v, P& iv)
{
    v.quantity("gas_pressure", iv.gas_pressure, Dimension::pressure);
    v.quantity("effective_pressure", iv.effective_pressure, Dimension::pressure);
    v.number("water_saturation", iv.water_saturation);
    v.number("hydrate_saturation", iv.hydrate_saturation);
    v.quantity("temperature", iv.temperature, Dimension::temperature);
    v.number("porosity", iv.porosity);
    v.number("effective_porosity", iv.effective_porosity);
}

template <typename V, typename P>
void visit_flow_bc_values(V& v, P& bc)
{
    v.enumeration("type", bc.type, kFlowBcTypes);
    v.quantity("gas_pressure", bc.gas_pressure, Dimension::pressure);
    v.number("water_saturation", bc.water_saturation);
    v.number("hydrate_saturation", bc.hydrate_saturation);
    v.quantity("temperature", bc.temperature, Dimension::temperature);
    v.flag("use_initial_state", bc.use_initial_state);
    v.quantity("ramp_time", bc.ramp_time, Dimension::time);
    v.quantity("water_mass_flux", bc.water_mass_flux, Dimension::mass_flux);
    v.quantity("gas_mass_flux", bc.gas_mass_flux, Dimension::mass_flux);
    v.flag("outlet", bc.outlet);
}

template <typename V, typename P>
void visit_well_values(V& v, P& w)
{
    v.quantity("water_rate", w.water_rate, Dimension::mass_rate);
    v.quantity("gas_rate", w.gas_rate, Dimension::mass_rate);
    v.flag("outlet", w.outlet);
}

template <typename V, typename P>
void visit_coupling(V& v, P& c)
{
    v.number("tolerance", c.tolerance);
    v.integer("max_iterations", c.max_iterations);
    v.number("relaxation", c.relaxation);
    v.integer("max_step_cuts", c.max_step_cuts);
    v.number("growth_factor", c.growth_factor);
    v.quantity("pressure_floor", c.pressure_floor, Dimension::pressure);
    v.quantity("displacement_floor", c.displacement_floor, Dimension::length);
    v.flag("fixed_stress", c.fixed_stress);
    v.enumeration("drained_modulus", c.drained_modulus, kDrainedModuli);
}

template <typename V, typename P>
void visit_newton(V& v, P& n)
{
    v.number("relative_tolerance", n.relative_tolerance);
    v.number("absolute_tolerance", n.absolute_tolerance);
    v.integer("max_iterations", n.max_iterations);
    v.integer("max_damping", n.max_damping);
    v.number("max_saturation_change", n.max_saturation_change);
    v.number("max_relative_pressure_change", n.max_relative_pressure_change);
    v.quantity("max_temperature_change", n.max_temperature_change, Dimension::temperature);
}

template <typename V, typename P>
void visit_output(V& v, P& o)
{
    v.flag("probes", o.probes);
    v.flag("series", o.series);
    v.flag("snapshots", o.snapshots);
    v.quantity("standard_pressure", o.standard_pressure, Dimension::pressure);
    v.quantity("standard_temperature", o.standard_temperature, Dimension::temperature);
}

// Face selectors: `side`, an optional box (lower/upper) and an optional anchor {x, y, z}.

void read_selector(Reader& r, FaceSelector& f)
{
    r.require("side");
    r.enumeration("side", f.side, kSides);
    if (r.has("lower") || r.has("upper")) {
        f.restricted = true;
        r.vector("lower", f.lower, Dimension::length);
        r.vector("upper", f.upper, Dimension::length);
    }
    r.section("anchor", [&](Reader& a) {
        for (int i = 0; i < 3; ++i)
            a.quantity(std::string(kAxisNames[static_cast<std::size_t>(i)]), f.anchor[i], Dimension::length);
    });
}

void write_selector(Writer& w, const FaceSelector& f)
{
    w.enumeration("side", f.side, kSides);
    if (f.restricted) {
        w.vector("lower", f.lower, Dimension::length);
        w.vector("upper", f.upper, Dimension::length);
    }
    if (f.anchor.array().isNaN().all())
        return;
    w.section("anchor", [&](Writer& a) {
        for (int i = 0; i < 3; ++i)
            a.quantity(std::string(kAxisNames[static_cast<std::size_t>(i)]), f.anchor[i], Dimension::length);
    });
}

Dimension mechanics_value_dimension(MechanicsBcType t)
{
    return t == MechanicsBcType::traction ? Dimension::pressure : Dimension::length;
}

Dimension mechanics_rate_dimension(MechanicsBcType t)
{
    return t == MechanicsBcType::traction ? Dimension::stress_rate : Dimension::velocity;
}

ScenarioConfig read_config(const YAML::Node& root)
{
    if (root.IsDefined() && !root.IsNull() && !root.IsMap())
        throw ConfigError("a scenario must be a mapping of sections", line_of(root));

    Reader r(root, "");
    std::string missing;
    for (const char* section : {"grid", "initial", "time"}) {
        if (!r.has(section))
            missing += (missing.empty() ? "" : ", ") + std::string(section);
    }
    if (!missing.empty())
        throw ConfigError("missing sections: " + missing, line_of(root));

    ScenarioConfig c;
    r.text("name", c.name);
    r.text("description", c.description);

    r.section("grid", [&](Reader& g) {
        g.require("cells");
        g.require("extents");
        g.integer("dimension", c.grid.dimension);
        if (c.grid.dimension < 1 || c.grid.dimension > 3)
            throw ConfigError("'grid.dimension' must be 1, 2 or 3", line_of(g.node()["dimension"]));
        const YAML::Node cells = g.take("cells");
        const YAML::Node extents = g.take("extents");
        const std::size_t dim = static_cast<std::size_t>(c.grid.dimension);
        if (!cells.IsSequence() || cells.size() != dim)
            throw ConfigError("'grid.cells' must list " + std::to_string(dim) + " counts", line_of(cells));
        if (!extents.IsSequence() || extents.size() != dim)
            throw ConfigError("'grid.extents' must list " + std::to_string(dim) + " lengths", line_of(extents));
        for (std::size_t a = 0; a < dim; ++a) {
            try {
                c.grid.cells[a] = cells[a].as<int>();
            } catch (const YAML::Exception&) {
                throw ConfigError("'grid.cells' entries must be integers", line_of(cells[a]));
            }
            c.grid.extents[a] = g.convert(extents[a], "extents", Dimension::length);
        }
        if (c.grid.dimension == 1)
            g.quantity("cross_section", c.grid.transverse, Dimension::area);
        else if (c.grid.dimension == 2)
            g.quantity("thickness", c.grid.transverse, Dimension::length);
    });

    r.section("material", [&](Reader& m) { visit_material(m, c.material); });

    r.section("initial", [&](Reader& i) {
        visit_initial_values(i, c.initial.values);
        i.list("regions", [&](Reader& item) {
            InitialRegion region;
            item.text("name", region.name);
            item.vector("lower", region.lower, Dimension::length);
            item.vector("upper", region.upper, Dimension::length);
            visit_initial_values(item, region.values);
            c.initial.regions.push_back(region);
        });
    });

    r.list("flow_boundaries", [&](Reader& item) {
        FlowBoundaryCondition bc;
        item.text("name", bc.name);
        read_selector(item, bc.faces);
        visit_flow_bc_values(item, bc);
        c.flow_boundaries.push_back(bc);
    });

    r.list("wells", [&](Reader& item) {
        Well w;
        item.text("name", w.name);
        item.require("location");
        item.vector("location", w.location, Dimension::length);
        visit_well_values(item, w);
        c.wells.push_back(w);
    });

    r.list("mechanics_boundaries", [&](Reader& item) {
        MechanicsBoundaryCondition bc;
        item.text("name", bc.name);
        read_selector(item, bc.faces);
        item.require("type");
        item.enumeration("type", bc.type, kMechanicsBcTypes);
        item.require("component");
        item.enumeration("component", bc.component, kComponents);
        item.quantity("value", bc.value, mechanics_value_dimension(bc.type));
        item.quantity("rate", bc.rate, mechanics_rate_dimension(bc.type));
        item.quantity("limit", bc.limit, mechanics_value_dimension(bc.type));
        c.mechanics_boundaries.push_back(bc);
    });

    r.section("coupling", [&](Reader& s) {
        std::string blocks = blocks_name(c.coupling.blocks);
        s.text("blocks", blocks);
        try {
            c.coupling.blocks = parse_blocks(blocks);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), line_of(s.node()["blocks"]));
        }
        visit_coupling(s, c.coupling);
    });
    r.section("newton", [&](Reader& s) { visit_newton(s, c.newton); });

    r.section("time", [&](Reader& t) {
        t.require("dt");
        t.require("t_end");
        t.quantity("dt", c.time.dt, Dimension::time);
        t.quantity("t_end", c.time.t_end, Dimension::time);
        t.quantity("output_interval", c.time.output_interval, Dimension::time);
        const YAML::Node snaps = t.take("snapshots");
        if (snaps.IsDefined()) {
            if (!snaps.IsSequence())
                throw ConfigError("'time.snapshots' must be a list of times", line_of(snaps));
            for (std::size_t k = 0; k < snaps.size(); ++k)
                c.time.snapshots.push_back(t.convert(snaps[k], "snapshots", Dimension::time));
        }
    });

    r.list("probes", [&](Reader& item) {
        Probe p;
        item.require("name");
        item.require("point");
        item.text("name", p.name);
        item.vector("point", p.point, Dimension::length);
        c.probes.push_back(p);
    });

    r.section("output", [&](Reader& o) { visit_output(o, c.output); });

    r.section("reference", [&](Reader& s) {
        s.enumeration("type", c.reference.kind, kReferenceKinds);
        s.enumeration("drained_side", c.reference.drained_side, kSides);
        s.quantity("load", c.reference.load, Dimension::pressure);
        s.quantity("load_rate", c.reference.load_rate, Dimension::stress_rate);
    });

    r.finish();
    return c;
}

bool inside(const Eigen::Vector3d& p, const Eigen::Vector3d& lower, const Eigen::Vector3d& upper)
{
    return (p.array() >= lower.array()).all() && (p.array() <= upper.array()).all();
}

void overlay(InitialValues& base, const InitialValues& top)
{
    if (std::isfinite(top.gas_pressure) || std::isfinite(top.effective_pressure)) {
        base.gas_pressure = top.gas_pressure;
        base.effective_pressure = top.effective_pressure;
    }
    if (std::isfinite(top.porosity) || std::isfinite(top.effective_porosity)) {
        base.porosity = top.porosity;
        base.effective_porosity = top.effective_porosity;
    }
    if (std::isfinite(top.water_saturation))
        base.water_saturation = top.water_saturation;
    if (std::isfinite(top.hydrate_saturation))
        base.hydrate_saturation = top.hydrate_saturation;
    if (std::isfinite(top.temperature))
        base.temperature = top.temperature;
}

} // namespace

void ScenarioConfig::validate() const
{
    const int dim = grid.dimension;
    if (dim < 1 || dim > 3)
        throw ConfigError("grid dimension must be 1, 2 or 3");
    if (!(grid.transverse > 0.0))
        throw ConfigError("grid transverse size must be positive");
    material.validate();
    coupling.validate();
    newton.validate();
    if (!(time.dt > 0.0) || !(time.t_end > 0.0))
        throw ConfigError("time.dt and time.t_end must be positive");
    if (time.output_interval < 0.0)
        throw ConfigError("time.output_interval must be non-negative");

    for (const auto& bc : flow_boundaries) {
        if (static_cast<int>(bc.faces.side) / 2 >= dim)
            throw ConfigError("flow boundary '" + bc.name + "' uses side " + side_name(bc.faces.side) +
                              " of a " + std::to_string(dim) + "D grid");
        if (bc.type == FlowBcType::dirichlet && !bc.use_initial_state && !std::isfinite(bc.gas_pressure))
            throw ConfigError("Dirichlet flow boundary '" + bc.name + "' needs gas_pressure or use_initial_state");
        if (bc.ramp_time < 0.0)
            throw ConfigError("flow boundary '" + bc.name + "' has a negative ramp time");
    }
    for (const auto& bc : mechanics_boundaries) {
        if (static_cast<int>(bc.faces.side) / 2 >= dim || bc.component >= dim)
            throw ConfigError("mechanics boundary '" + bc.name + "' refers to an axis the grid does not have");
    }

    const StructuredGrid g = make_grid(*this);
    auto in_domain = [&](const Eigen::Vector3d& p) {
        for (int a = 0; a < dim; ++a) {
            if (p[a] < 0.0 || p[a] > grid.extents[static_cast<std::size_t>(a)])
                return false;
        }
        return true;
    };
    for (const auto& w : wells) {
        if (!in_domain(w.location))
            throw ConfigError("well '" + w.name + "' lies outside the domain");
    }
    for (const auto& p : probes) {
        if (!in_domain(p.point))
            throw ConfigError("probe '" + p.name + "' lies outside the domain");
    }
    if (reference.kind != ReferenceKind::none) {
        if (dim != 1)
            throw ConfigError("analytic references need a 1D grid");
        if (static_cast<int>(reference.drained_side) > 1)
            throw ConfigError("reference.drained_side must be xmin or xmax");
        if (reference.kind == ReferenceKind::kpe && !(reference.load > 0.0))
            throw ConfigError("the KPE reference needs a positive load");
        if (reference.kind == ReferenceKind::terzaghi && !(reference.load_rate > 0.0))
            throw ConfigError("the Terzaghi reference needs a positive load_rate");
    }
    initial_state(*this, g);
}

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin)
{
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(e.msg, e.mark.line + 1, origin);
    }
    try {
        ScenarioConfig c = read_config(root);
        c.validate();
        return c;
    } catch (const ConfigError& e) {
        throw ConfigError(e.message(), e.line(), origin);
    }
}

ScenarioConfig load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open scenario file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path);
}

std::string dump_scenario(const ScenarioConfig& c)
{
    YAML::Emitter out;
    out << YAML::BeginMap;
    Writer w(out);
    w.text("name", c.name);
    w.text("description", c.description);

    w.section("grid", [&](Writer& g) {
        const int dim = c.grid.dimension;
        g.integer("dimension", dim);
        out << YAML::Key << "cells" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (int a = 0; a < dim; ++a)
            out << c.grid.cells[static_cast<std::size_t>(a)];
        out << YAML::EndSeq;
        g.vector("extents", Eigen::Vector3d(c.grid.extents[0], c.grid.extents[1], c.grid.extents[2]),
                 Dimension::length, dim);
        if (dim == 1)
            g.quantity("cross_section", c.grid.transverse, Dimension::area);
        else if (dim == 2)
            g.quantity("thickness", c.grid.transverse, Dimension::length);
    });

    w.section("material", [&](Writer& m) { visit_material(m, c.material); });

    w.section("initial", [&](Writer& i) {
        visit_initial_values(i, c.initial.values);
        i.list("regions", c.initial.regions, [&](Writer& item, const InitialRegion& region) {
            item.text("name", region.name);
            item.vector("lower", region.lower, Dimension::length);
            item.vector("upper", region.upper, Dimension::length);
            visit_initial_values(item, region.values);
        });
    });

    w.list("flow_boundaries", c.flow_boundaries, [&](Writer& item, const FlowBoundaryCondition& bc) {
        item.text("name", bc.name);
        write_selector(item, bc.faces);
        visit_flow_bc_values(item, bc);
    });

    w.list("wells", c.wells, [&](Writer& item, const Well& well) {
        item.text("name", well.name);
        item.vector("location", well.location, Dimension::length);
        visit_well_values(item, well);
    });

    w.list("mechanics_boundaries", c.mechanics_boundaries, [&](Writer& item, const MechanicsBoundaryCondition& bc) {
        item.text("name", bc.name);
        write_selector(item, bc.faces);
        item.enumeration("type", bc.type, kMechanicsBcTypes);
        item.enumeration("component", bc.component, kComponents);
        item.quantity("value", bc.value, mechanics_value_dimension(bc.type));
        item.quantity("rate", bc.rate, mechanics_rate_dimension(bc.type));
        item.quantity("limit", bc.limit, mechanics_value_dimension(bc.type));
    });

    w.section("coupling", [&](Writer& s) {
        s.text("blocks", blocks_name(c.coupling.blocks));
        visit_coupling(s, c.coupling);
    });
    w.section("newton", [&](Writer& s) { visit_newton(s, c.newton); });

    w.section("time", [&](Writer& t) {
        t.quantity("dt", c.time.dt, Dimension::time);
        t.quantity("t_end", c.time.t_end, Dimension::time);
        t.quantity("output_interval", c.time.output_interval, Dimension::time);
        if (!c.time.snapshots.empty()) {
            out << YAML::Key << "snapshots" << YAML::Value << YAML::Flow << YAML::BeginSeq;
            for (double s : c.time.snapshots)
                out << format_quantity(s, Dimension::time);
            out << YAML::EndSeq;
        }
    });

    w.list("probes", c.probes, [&](Writer& item, const Probe& p) {
        item.text("name", p.name);
        item.vector("point", p.point, Dimension::length, c.grid.dimension);
    });

    w.section("output", [&](Writer& o) { visit_output(o, c.output); });

    w.section("reference", [&](Writer& s) {
        s.enumeration("type", c.reference.kind, kReferenceKinds);
        s.enumeration("drained_side", c.reference.drained_side, kSides);
        s.quantity("load", c.reference.load, Dimension::pressure);
        s.quantity("load_rate", c.reference.load_rate, Dimension::stress_rate);
    });

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::string preset_directory()
{
    if (const char* env = std::getenv("HYDROGEO_PRESET_DIR"); env != nullptr && *env != '\0')
        return env;
#ifdef HYDROGEO_PRESET_DIR
    return HYDROGEO_PRESET_DIR;
#else
    return "presets";
#endif
}

std::vector<std::string> preset_names()
{
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(preset_directory(), ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".yaml")
            names.push_back(entry.path().stem().string());
    }
    std::sort(names.begin(), names.end());
    return names;
}

ScenarioConfig load_preset(const std::string& name)
{
    const std::filesystem::path path = std::filesystem::path(preset_directory()) / (name + ".yaml");
    if (!std::filesystem::is_regular_file(path)) {
        std::string available;
        for (const auto& n : preset_names())
            available += (available.empty() ? "" : ", ") + n;
        throw ConfigError("unknown preset '" + name + "' (available: " + available + ")");
    }
    return load_scenario(path.string());
}

ScenarioConfig resolve_scenario(const std::string& name_or_path)
{
    if (std::filesystem::is_regular_file(name_or_path))
        return load_scenario(name_or_path);
    return load_preset(name_or_path);
}

StructuredGrid make_grid(const ScenarioConfig& c)
{
    return build_grid(c.grid.dimension, c.grid.cells, c.grid.extents, c.grid.transverse);
}

SimulationState initial_state(const ScenarioConfig& c, const StructuredGrid& grid)
{
    SimulationState s = make_state(grid);
    const SoilParameters& soil = c.material.soil;
    for (Index cell = 0; cell < grid.num_cells(); ++cell) {
        const Eigen::Vector3d x = grid.cell_center(cell);
        InitialValues v = c.initial.values;
        for (const auto& region : c.initial.regions) {
            if (inside(x, region.lower, region.upper))
                overlay(v, region.values);
        }
        auto where = [&] {
            std::ostringstream os;
            os << "cell at (" << x[0] << ", " << x[1] << ", " << x[2] << ")";
            return os.str();
        };
        if (!std::isfinite(v.water_saturation) || !std::isfinite(v.hydrate_saturation))
            throw ConfigError("initial saturations are not defined for the " + where());
        if (!std::isfinite(v.temperature))
            throw ConfigError("initial temperature is not defined for the " + where());

        const double sw = v.water_saturation;
        const double sh = v.hydrate_saturation;
        if (sw < 0.0 || sh < 0.0 || sw + sh > 1.0 + 1e-12)
            throw ConfigError("initial saturations out of range for the " + where());

        double phi = soil.porosity;
        if (std::isfinite(v.porosity))
            phi = v.porosity;
        else if (std::isfinite(v.effective_porosity))
            phi = v.effective_porosity / (1.0 - sh);
        if (!(phi > 0.0 && phi < 1.0))
            throw ConfigError("initial porosity out of range for the " + where());

        double pg = v.gas_pressure;
        if (!std::isfinite(pg) && std::isfinite(v.effective_pressure)) {
            const auto sat = derived_saturations(sw, sh, soil.residual_water, soil.residual_gas,
                                                 soil.saturation_epsilon);
            pg = v.effective_pressure + sat.water_e * capillary_pressure(sat.effective_water, sh, phi, soil);
        }
        if (!std::isfinite(pg))
            throw ConfigError("initial pressure is not defined for the " + where());

        s.flow.segment<kFlowVars>(kFlowVars * cell) << pg, sw, sh, v.temperature;
        s.porosity[cell] = phi;
    }
    return s;
}

ScenarioConfig refined(const ScenarioConfig& c, double factor)
{
    if (!(factor > 0.0))
        throw ConfigError("refinement factor must be positive");
    ScenarioConfig out = c;
    for (int a = 0; a < c.grid.dimension; ++a) {
        const double n = c.grid.cells[static_cast<std::size_t>(a)] * factor;
        const double rounded = std::round(n);
        if (rounded < 1.0 || std::abs(n - rounded) > 1e-9 * n)
            throw ConfigError("refinement by " + format_number(factor) + " gives a non-integral cell count");
        out.grid.cells[static_cast<std::size_t>(a)] = static_cast<int>(rounded);
    }
    return out;
}

} // namespace hydrogeo
