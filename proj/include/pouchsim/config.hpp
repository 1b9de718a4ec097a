#pragma once

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pouchsim/errors.hpp"
#include "pouchsim/scenarios.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Configuration files
//
// A run is described by one JSON document. Parsing is strict: unknown keys are
// rejected, every dimensioned key carries a unit suffix, and every violated
// constraint is reported with the offending key path. All keys except
// scenario.kind have documented defaults. The free-form "metadata" object is
// carried through unvalidated (provenance notes, component masses, ...).
// ---------------------------------------------------------------------------

namespace detail {

using json = nlohmann::json;

inline std::string join_key(const std::string& prefix, const std::string& key) {
    return prefix.empty() ? key : prefix + "." + key;
}

inline const json* find_key(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

inline void expect_object(const json& j, const std::string& path) {
    if (!j.is_object())
        throw config_error("config: " + path + ": expected an object");
}

inline void reject_unknown_keys(const json& obj, std::initializer_list<const char*> known,
                                const std::string& path) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool recognized = false;
        for (const char* k : known)
            if (it.key() == k) {
                recognized = true;
                break;
            }
        if (!recognized)
            throw config_error("config: unknown key '" + join_key(path, it.key()) + "'");
    }
}

inline double get_number(const json& obj, const char* key, double fallback,
                         const std::string& path) {
    const json* v = find_key(obj, key);
    if (!v) return fallback;
    if (!v->is_number())
        throw config_error("config: " + join_key(path, key) + ": expected a number");
    return v->get<double>();
}

inline int get_integer(const json& obj, const char* key, int fallback, const std::string& path) {
    const json* v = find_key(obj, key);
    if (!v) return fallback;
    if (!v->is_number_integer())
        throw config_error("config: " + join_key(path, key) + ": expected an integer");
    return v->get<int>();
}

inline std::string get_string(const json& obj, const char* key, const std::string& fallback,
                              const std::string& path) {
    const json* v = find_key(obj, key);
    if (!v) return fallback;
    if (!v->is_string())
        throw config_error("config: " + join_key(path, key) + ": expected a string");
    return v->get<std::string>();
}

inline double require_positive(double v, const std::string& key) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw config_error("config: " + key + ": must be a finite number > 0");
    return v;
}

inline double require_non_negative(double v, const std::string& key) {
    if (v < 0.0 || !std::isfinite(v))
        throw config_error("config: " + key + ": must be a finite number >= 0");
    return v;
}

inline void parse_fluid(const json& root, FluidProperties& fluid) {
    const json* section = find_key(root, "fluid");
    if (!section) return;
    expect_object(*section, "fluid");
    reject_unknown_keys(*section,
                        {"name", "antoine_a", "antoine_b_k", "molar_mass_kg_per_mol",
                         "liquid_density_kg_per_m3", "latent_heat_j_per_kg", "cp_liquid_j_per_kg_k",
                         "cp_vapor_j_per_kg_k"},
                        "fluid");
    fluid.name = get_string(*section, "name", fluid.name, "fluid");
    fluid.antoine_a = get_number(*section, "antoine_a", fluid.antoine_a, "fluid");
    fluid.antoine_b =
        require_positive(get_number(*section, "antoine_b_k", fluid.antoine_b, "fluid"),
                         "fluid.antoine_b_k");
    fluid.molar_mass = require_positive(
        get_number(*section, "molar_mass_kg_per_mol", fluid.molar_mass, "fluid"),
        "fluid.molar_mass_kg_per_mol");
    fluid.liquid_density = require_positive(
        get_number(*section, "liquid_density_kg_per_m3", fluid.liquid_density, "fluid"),
        "fluid.liquid_density_kg_per_m3");
    fluid.latent_heat =
        require_positive(get_number(*section, "latent_heat_j_per_kg", fluid.latent_heat, "fluid"),
                         "fluid.latent_heat_j_per_kg");
    fluid.cp_liquid =
        require_positive(get_number(*section, "cp_liquid_j_per_kg_k", fluid.cp_liquid, "fluid"),
                         "fluid.cp_liquid_j_per_kg_k");
    fluid.cp_vapor =
        require_positive(get_number(*section, "cp_vapor_j_per_kg_k", fluid.cp_vapor, "fluid"),
                         "fluid.cp_vapor_j_per_kg_k");
}

inline void parse_geometry(const json& root, PouchGeometry& geom) {
    const json* section = find_key(root, "geometry");
    if (!section) return;
    expect_object(*section, "geometry");
    reject_unknown_keys(*section,
                        {"cavity_count", "side_length_m", "depth_m", "seal_length_m",
                         "channel_width_m", "v_min_m3"},
                        "geometry");
    geom.cavity_count = get_integer(*section, "cavity_count", geom.cavity_count, "geometry");
    if (geom.cavity_count < 1)
        throw config_error("config: geometry.cavity_count: must be an integer >= 1");
    geom.side_length =
        require_positive(get_number(*section, "side_length_m", geom.side_length, "geometry"),
                         "geometry.side_length_m");
    geom.depth = require_positive(get_number(*section, "depth_m", geom.depth, "geometry"),
                                  "geometry.depth_m");
    geom.seal_length =
        require_non_negative(get_number(*section, "seal_length_m", geom.seal_length, "geometry"),
                             "geometry.seal_length_m");
    geom.channel_width = require_non_negative(
        get_number(*section, "channel_width_m", geom.channel_width, "geometry"),
        "geometry.channel_width_m");
    geom.v_min = require_non_negative(get_number(*section, "v_min_m3", geom.v_min, "geometry"),
                                      "geometry.v_min_m3");
    if (geom.v_min >= max_cavity_volume(geom))
        throw config_error("config: geometry.v_min_m3: must be below the full cavity volume");
}

inline void parse_peltier(const json& root, PeltierParams& p) {
    const json* section = find_key(root, "peltier");
    if (!section) return;
    expect_object(*section, "peltier");
    reject_unknown_keys(*section,
                        {"couple_count", "seebeck_v_per_k", "internal_resistance_ohm",
                         "thermal_conductance_w_per_k", "rated_delta_t_max_k", "rated_q_max_w",
                         "current_limit_a"},
                        "peltier");
    p.couple_count = get_integer(*section, "couple_count", p.couple_count, "peltier");
    if (p.couple_count < 1)
        throw config_error("config: peltier.couple_count: must be an integer >= 1");
    p.seebeck = require_positive(get_number(*section, "seebeck_v_per_k", p.seebeck, "peltier"),
                                 "peltier.seebeck_v_per_k");
    p.internal_resistance = require_non_negative(
        get_number(*section, "internal_resistance_ohm", p.internal_resistance, "peltier"),
        "peltier.internal_resistance_ohm");
    p.thermal_conductance = require_non_negative(
        get_number(*section, "thermal_conductance_w_per_k", p.thermal_conductance, "peltier"),
        "peltier.thermal_conductance_w_per_k");
    if (find_key(*section, "rated_delta_t_max_k"))
        p.rated_delta_t_max = require_positive(
            get_number(*section, "rated_delta_t_max_k", 0.0, "peltier"), "peltier.rated_delta_t_max_k");
    if (find_key(*section, "rated_q_max_w"))
        p.rated_q_max = require_positive(get_number(*section, "rated_q_max_w", 0.0, "peltier"),
                                         "peltier.rated_q_max_w");
    if (find_key(*section, "current_limit_a"))
        p.current_limit = require_positive(get_number(*section, "current_limit_a", 0.0, "peltier"),
                                           "peltier.current_limit_a");
}

inline void parse_thermal(const json& root, ThermalNetwork& net) {
    const json* section = find_key(root, "thermal");
    double heat_capacity = net.node_a.heat_capacity;
    double convection = net.node_a.convection;
    double ambient = net.ambient;
    if (section) {
        expect_object(*section, "thermal");
        reject_unknown_keys(*section, {"heat_capacity_j_per_k", "convection_w_per_k", "ambient_k"},
                            "thermal");
        heat_capacity = require_positive(
            get_number(*section, "heat_capacity_j_per_k", heat_capacity, "thermal"),
            "thermal.heat_capacity_j_per_k");
        convection =
            require_non_negative(get_number(*section, "convection_w_per_k", convection, "thermal"),
                                 "thermal.convection_w_per_k");
        ambient = require_positive(get_number(*section, "ambient_k", ambient, "thermal"),
                                   "thermal.ambient_k");
    }
    net.ambient = ambient;
    net.node_a = {ambient, heat_capacity, convection};
    net.node_b = {ambient, heat_capacity, convection};
}

inline void parse_actuator(const json& root, ActuatorSetup& setup) {
    const json* section = find_key(root, "actuator");
    if (!section) return;
    expect_object(*section, "actuator");
    reject_unknown_keys(
        *section, {"fill", "fill_mass_kg", "design_temperature_k", "ambient_pressure_pa"},
        "actuator");
    const json* fill = find_key(*section, "fill");
    const json* fill_mass = find_key(*section, "fill_mass_kg");
    if (fill && fill_mass)
        throw config_error(
            "config: actuator: 'fill' and 'fill_mass_kg' are mutually exclusive");
    if (fill) {
        if (!fill->is_string() || fill->get<std::string>() != "auto")
            throw config_error("config: actuator.fill: the only supported mode is \"auto\"");
        setup.fill = FillMode::automatic;
    }
    if (fill_mass) {
        setup.fill = FillMode::explicit_mass;
        setup.fill_mass = require_positive(get_number(*section, "fill_mass_kg", 0.0, "actuator"),
                                           "actuator.fill_mass_kg");
    }
    setup.design_temperature = require_positive(
        get_number(*section, "design_temperature_k", setup.design_temperature, "actuator"),
        "actuator.design_temperature_k");
    setup.ambient_pressure = require_positive(
        get_number(*section, "ambient_pressure_pa", setup.ambient_pressure, "actuator"),
        "actuator.ambient_pressure_pa");
}

inline void parse_scenario(const json& root, ScenarioConfig& cfg) {
    const json* section = find_key(root, "scenario");
    if (!section)
        throw config_error("config: missing required section 'scenario'");
    expect_object(*section, "scenario");
    reject_unknown_keys(*section, {"kind", "muscle", "gripper", "crawler"}, "scenario");
    const json* kind = find_key(*section, "kind");
    if (!kind)
        throw config_error("config: missing required key 'scenario.kind'");
    if (!kind->is_string())
        throw config_error("config: scenario.kind: expected a string");
    const std::string name = kind->get<std::string>();
    if (name == "muscle")
        cfg.kind = ScenarioKind::muscle;
    else if (name == "gripper")
        cfg.kind = ScenarioKind::gripper;
    else if (name == "crawler")
        cfg.kind = ScenarioKind::crawler;
    else
        throw config_error("config: scenario.kind: must be one of \"muscle\", \"gripper\", "
                           "\"crawler\" (got \"" +
                           name + "\")");

    if (const json* muscle = find_key(*section, "muscle")) {
        expect_object(*muscle, "scenario.muscle");
        reject_unknown_keys(*muscle, {"map_gain", "stiffness_gain_nm_per_rad_pa"},
                            "scenario.muscle");
        cfg.joint.map_gain =
            require_positive(get_number(*muscle, "map_gain", cfg.joint.map_gain, "scenario.muscle"),
                             "scenario.muscle.map_gain");
        cfg.joint.stiffness_gain = require_positive(
            get_number(*muscle, "stiffness_gain_nm_per_rad_pa", cfg.joint.stiffness_gain,
                       "scenario.muscle"),
            "scenario.muscle.stiffness_gain_nm_per_rad_pa");
    }
    if (const json* gripper = find_key(*section, "gripper")) {
        expect_object(*gripper, "scenario.gripper");
        reject_unknown_keys(*gripper, {"map_gain", "flex_sign"}, "scenario.gripper");
        cfg.gripper.map_gain = require_positive(
            get_number(*gripper, "map_gain", cfg.gripper.map_gain, "scenario.gripper"),
            "scenario.gripper.map_gain");
        cfg.gripper.flex_sign =
            get_integer(*gripper, "flex_sign", cfg.gripper.flex_sign, "scenario.gripper");
        if (cfg.gripper.flex_sign != 1 && cfg.gripper.flex_sign != -1)
            throw config_error("config: scenario.gripper.flex_sign: must be +1 or -1");
    }
    if (const json* crawler = find_key(*section, "crawler")) {
        expect_object(*crawler, "scenario.crawler");
        reject_unknown_keys(*crawler, {"mu_forward", "mu_backward", "stride_gain_m_per_rad"},
                            "scenario.crawler");
        cfg.crawler.mu_forward = require_non_negative(
            get_number(*crawler, "mu_forward", cfg.crawler.mu_forward, "scenario.crawler"),
            "scenario.crawler.mu_forward");
        cfg.crawler.mu_backward = require_non_negative(
            get_number(*crawler, "mu_backward", cfg.crawler.mu_backward, "scenario.crawler"),
            "scenario.crawler.mu_backward");
        if (!(cfg.crawler.mu_forward + cfg.crawler.mu_backward > 0.0))
            throw config_error(
                "config: scenario.crawler: mu_forward and mu_backward must not both be zero");
        cfg.crawler.stride_gain = require_positive(
            get_number(*crawler, "stride_gain_m_per_rad", cfg.crawler.stride_gain,
                       "scenario.crawler"),
            "scenario.crawler.stride_gain_m_per_rad");
    }
}

inline void parse_schedule(const json& root, CurrentSchedule& schedule) {
    const json* section = find_key(root, "schedule");
    if (!section) return;
    expect_object(*section, "schedule");
    reject_unknown_keys(*section, {"segments"}, "schedule");
    const json* segments = find_key(*section, "segments");
    if (!segments) return;
    if (!segments->is_array())
        throw config_error("config: schedule.segments: expected an array");
    schedule.segments.clear();
    int index = 0;
    for (const json& item : *segments) {
        const std::string path = "schedule.segments." + std::to_string(index);
        expect_object(item, path);
        reject_unknown_keys(item, {"duration_s", "current_a", "power_w"}, path);
        ScheduleSegment seg;
        seg.duration = require_positive(get_number(item, "duration_s", 0.0, path),
                                        path + ".duration_s");
        const json* current = find_key(item, "current_a");
        const json* power = find_key(item, "power_w");
        if ((current != nullptr) == (power != nullptr))
            throw config_error("config: " + path +
                               ": exactly one of 'current_a' or 'power_w' is required");
        if (current) {
            seg.mode = DriveMode::current;
            seg.value = get_number(item, "current_a", 0.0, path);
        } else {
            seg.mode = DriveMode::power;
            seg.value = get_number(item, "power_w", 0.0, path);
        }
        if (!std::isfinite(seg.value))
            throw config_error("config: " + path + ": drive value must be finite");
        schedule.segments.push_back(seg);
        ++index;
    }
}

inline void parse_sim(const json& root, SimParams& sim) {
    const json* section = find_key(root, "sim");
    if (!section) return;
    expect_object(*section, "sim");
    reject_unknown_keys(*section, {"dt_s", "t_end_s", "sample_every"}, "sim");
    sim.dt = require_positive(get_number(*section, "dt_s", sim.dt, "sim"), "sim.dt_s");
    sim.t_end =
        require_positive(get_number(*section, "t_end_s", sim.t_end, "sim"), "sim.t_end_s");
    sim.sample_every = get_integer(*section, "sample_every", sim.sample_every, "sim");
    if (sim.sample_every < 1)
        throw config_error("config: sim.sample_every: must be an integer >= 1");
}

inline void parse_output(const json& root, std::string& output_path) {
    const json* section = find_key(root, "output");
    if (!section) return;
    expect_object(*section, "output");
    reject_unknown_keys(*section, {"path"}, "output");
    output_path = get_string(*section, "path", output_path, "output");
}

} // namespace detail

/// Builds a validated ScenarioConfig from a parsed JSON document.
[[nodiscard]] inline ScenarioConfig parse_config_json(const nlohmann::json& root) {
    detail::expect_object(root, "(top level)");
    detail::reject_unknown_keys(root,
                                {"fluid", "geometry", "peltier", "thermal", "actuator", "scenario",
                                 "schedule", "sim", "output", "metadata"},
                                "");
    if (const nlohmann::json* metadata = detail::find_key(root, "metadata"))
        detail::expect_object(*metadata, "metadata");

    ScenarioConfig cfg;
    detail::parse_fluid(root, cfg.fluid);
    detail::parse_geometry(root, cfg.geometry);
    detail::parse_peltier(root, cfg.peltier);
    detail::parse_thermal(root, cfg.thermal);
    detail::parse_actuator(root, cfg.actuator);
    detail::parse_scenario(root, cfg);
    detail::parse_schedule(root, cfg.schedule);
    detail::parse_sim(root, cfg.sim);
    detail::parse_output(root, cfg.output_path);

    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config: ") + e.what());
    }
    return cfg;
}

/// Parses a JSON config document from text.
[[nodiscard]] inline ScenarioConfig parse_config(const std::string& text) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    return parse_config_json(root);
}

/// Reads and parses a JSON config file. Unreadable files raise io_error.
[[nodiscard]] inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw io_error("cannot read config file: " + path);
    return parse_config(buf.str());
}

/// Reads a JSON config file without building the typed view (used by sweep to
/// rewrite parameters before re-validation).
[[nodiscard]] inline nlohmann::json load_config_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw io_error("cannot read config file: " + path);
    try {
        return nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
}

} // namespace pouchsim
