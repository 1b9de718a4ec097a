#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pouchsim/actuator.hpp"
#include "pouchsim/errors.hpp"
#include "pouchsim/fluid.hpp"
#include "pouchsim/geometry.hpp"
#include "pouchsim/peltier.hpp"
#include "pouchsim/thermal.hpp"
#include "pouchsim/timeseries.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Drive schedule
//
// Piecewise-constant drive. Each segment holds either a signed current or a
// signed electrical power; power is resolved to current at every tick from
// the instantaneous junction temperatures. Positive drive heats node A and
// cools node B; negative drive reverses the roles. Past the last segment the
// drive is zero.
// ---------------------------------------------------------------------------

enum class DriveMode { current, power };

struct ScheduleSegment {
    double duration = 0.0;            ///< [s]
    DriveMode mode = DriveMode::current;
    double value = 0.0;               ///< [A] or [W], signed
};

struct CurrentSchedule {
    std::vector<ScheduleSegment> segments;

    /// Throws std::invalid_argument on non-positive durations or currents
    /// beyond the junction's safety clamp.
    void validate(const PeltierParams& p) const {
        for (const ScheduleSegment& seg : segments) {
            if (!(seg.duration > 0.0) || !std::isfinite(seg.duration))
                throw std::invalid_argument("CurrentSchedule: segment duration must be > 0");
            if (!std::isfinite(seg.value))
                throw std::invalid_argument("CurrentSchedule: segment value must be finite");
            if (seg.mode == DriveMode::current && p.current_limit &&
                std::abs(seg.value) > *p.current_limit)
                throw std::invalid_argument(
                    "CurrentSchedule: segment current exceeds peltier current_limit");
        }
    }

    /// Sum of all segment durations [s].
    [[nodiscard]] double total_duration() const {
        double total = 0.0;
        for (const ScheduleSegment& seg : segments) total += seg.duration;
        return total;
    }
};

/// Drive current in effect at time t_s [A]. Power segments are inverted at the
/// given node temperatures; the result honours the optional current clamp.
[[nodiscard]] inline double drive_current_at(const CurrentSchedule& schedule, double t_s,
                                             const PeltierParams& p, double t_node_a_k,
                                             double t_node_b_k) {
    double current = 0.0;
    double cursor = 0.0;
    for (const ScheduleSegment& seg : schedule.segments) {
        cursor += seg.duration;
        if (t_s < cursor) {
            if (seg.mode == DriveMode::current) {
                current = seg.value;
            } else if (seg.value >= 0.0) {
                current = current_for_power(p, seg.value, t_node_a_k, t_node_b_k);
            } else {
                current = -current_for_power(p, -seg.value, t_node_b_k, t_node_a_k);
            }
            break;
        }
    }
    if (p.current_limit) {
        const double lim = *p.current_limit;
        if (current > lim) current = lim;
        if (current < -lim) current = -lim;
    }
    return current;
}

// ---------------------------------------------------------------------------
// Agonist-antagonist output mappings
// ---------------------------------------------------------------------------

struct JointConfig {
    double map_gain = 1.0;        ///< joint radians per radian of differential bend
    double stiffness_gain = 1e-6; ///< N m/rad per pascal of summed overpressure

    void validate() const {
        if (!(map_gain > 0.0))
            throw std::invalid_argument("JointConfig: map_gain must be > 0");
        if (!(stiffness_gain > 0.0))
            throw std::invalid_argument("JointConfig: stiffness_gain must be > 0");
    }
};

struct GripperConfig {
    double map_gain = 1.0; ///< finger radians per radian of differential bend
    int flex_sign = 1;     ///< +1 closes on positive drive, -1 opens

    void validate() const {
        if (!(map_gain > 0.0))
            throw std::invalid_argument("GripperConfig: map_gain must be > 0");
        if (flex_sign != 1 && flex_sign != -1)
            throw std::invalid_argument("GripperConfig: flex_sign must be +1 or -1");
    }
};

struct CrawlerConfig {
    double mu_forward = 0.2;   ///< friction coefficient against forward slip
    double mu_backward = 0.8;  ///< friction coefficient against backward slip
    double stride_gain = 0.01; ///< body-length change per radian of bend [m/rad]

    void validate() const {
        if (mu_forward < 0.0 || mu_backward < 0.0)
            throw std::invalid_argument("CrawlerConfig: friction coefficients must be >= 0");
        if (!(mu_forward + mu_backward > 0.0))
            throw std::invalid_argument("CrawlerConfig: friction coefficients must not both be zero");
        if (!(stride_gain > 0.0))
            throw std::invalid_argument("CrawlerConfig: stride_gain must be > 0");
    }
};

enum class ScenarioKind { muscle, gripper, crawler };

namespace detail {

inline void check_bend_angle(double theta, const char* func) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!std::isfinite(theta) || theta < 0.0 || theta > half_pi)
        throw std::invalid_argument(std::string(func) + ": bend angle must lie in [0, pi/2]");
}

} // namespace detail

/// Joint deflection from the agonist/antagonist bend angles [rad]:
/// map_gain * (theta_agonist - theta_antagonist). Antisymmetric in its inputs.
[[nodiscard]] inline double joint_angle(double theta_agonist, double theta_antagonist,
                                        const JointConfig& cfg) {
    detail::check_bend_angle(theta_agonist, "joint_angle");
    detail::check_bend_angle(theta_antagonist, "joint_angle");
    return cfg.map_gain * (theta_agonist - theta_antagonist);
}

/// Co-contraction stiffness from summed pouch overpressure [N m/rad],
/// clamped at zero when both pouches are below ambient.
[[nodiscard]] inline double joint_stiffness(double p_a_pa, double p_b_pa, double p_ambient_pa,
                                            const JointConfig& cfg) {
    const double overpressure = p_a_pa + p_b_pa - 2.0 * p_ambient_pa;
    const double k = cfg.stiffness_gain * overpressure;
    return k > 0.0 ? k : 0.0;
}

/// Flexion angles of the two (symmetric) gripper fingers [rad].
struct FingerAngles {
    double finger_a = 0.0;
    double finger_b = 0.0;
};

/// Both fingers share the drive, so they flex identically:
/// flex_sign * map_gain * (theta_a - theta_b) each. Positive = closing.
[[nodiscard]] inline FingerAngles gripper_aperture(double theta_a, double theta_b,
                                                   const GripperConfig& cfg) {
    detail::check_bend_angle(theta_a, "gripper_aperture");
    detail::check_bend_angle(theta_b, "gripper_aperture");
    const double flex = cfg.flex_sign * cfg.map_gain * (theta_a - theta_b);
    return {flex, flex};
}

/// Net body displacement produced by one half-cycle of bend change
/// delta_angle [m]. The body-length change stride_gain * |delta_angle| is
/// partitioned between the two contacts inversely to their direction-dependent
/// friction, advancing the body toward the low-friction direction:
///     dx = |dL| (mu_b - mu_f) / (mu_b + mu_f).
[[nodiscard]] inline double crawler_stride(double delta_angle, const CrawlerConfig& cfg) {
    if (!std::isfinite(delta_angle))
        throw std::invalid_argument("crawler_stride: angle change must be finite");
    if (!(cfg.mu_forward + cfg.mu_backward > 0.0))
        throw std::invalid_argument("crawler_stride: friction coefficients must not both be zero");
    const double length_change = cfg.stride_gain * std::abs(delta_angle);
    return length_change * (cfg.mu_backward - cfg.mu_forward) /
           (cfg.mu_backward + cfg.mu_forward);
}

// ---------------------------------------------------------------------------
// Scenario simulation loop
// ---------------------------------------------------------------------------

enum class FillMode { automatic, explicit_mass };

/// How the pouches are charged and against what ambient they inflate.
struct ActuatorSetup {
    FillMode fill = FillMode::automatic;
    double fill_mass = 0.0;              ///< [kg], used when fill is explicit_mass
    double design_temperature = 307.15;  ///< [K], used when fill is automatic
    double ambient_pressure = 101325.0;  ///< [Pa]

    void validate() const {
        if (fill == FillMode::explicit_mass && (!(fill_mass > 0.0) || !std::isfinite(fill_mass)))
            throw std::invalid_argument("ActuatorSetup: explicit fill_mass must be > 0");
        if (!(design_temperature > 0.0) || !std::isfinite(design_temperature))
            throw std::invalid_argument("ActuatorSetup: design_temperature must be > 0 K");
        if (!(ambient_pressure > 0.0) || !std::isfinite(ambient_pressure))
            throw std::invalid_argument("ActuatorSetup: ambient_pressure must be > 0 Pa");
    }
};

struct SimParams {
    double dt = 1e-3;        ///< integrator step [s]
    double t_end = 60.0;     ///< simulated span [s]
    int sample_every = 100;  ///< record every k-th tick

    void validate() const {
        if (!(dt > 0.0) || !std::isfinite(dt))
            throw std::invalid_argument("SimParams: dt must be > 0");
        if (!(t_end > 0.0) || !std::isfinite(t_end))
            throw std::invalid_argument("SimParams: t_end must be > 0");
        if (sample_every < 1)
            throw std::invalid_argument("SimParams: sample_every must be >= 1");
    }
};

/// Complete typed description of one simulation run.
struct ScenarioConfig {
    FluidProperties fluid;
    PouchGeometry geometry;
    PeltierParams peltier;
    ThermalNetwork thermal;
    ActuatorSetup actuator;
    ScenarioKind kind = ScenarioKind::muscle;
    JointConfig joint;
    GripperConfig gripper;
    CrawlerConfig crawler;
    CurrentSchedule schedule;
    SimParams sim;
    std::string output_path; ///< default trace destination; empty = none

    void validate() const {
        fluid.validate();
        geometry.validate();
        peltier.validate();
        thermal.validate();
        actuator.validate();
        joint.validate();
        gripper.validate();
        crawler.validate();
        schedule.validate(peltier);
        sim.validate();
        if (sim.dt > max_stable_dt(thermal, peltier))
            throw std::invalid_argument(
                "ScenarioConfig: sim.dt exceeds the thermal stability bound "
                "2 C / (hA + 2 n K)");
    }
};

/// Liquid charge per pouch for this configuration [kg].
[[nodiscard]] inline double resolved_fill_mass(const ScenarioConfig& cfg) {
    if (cfg.actuator.fill == FillMode::explicit_mass) return cfg.actuator.fill_mass;
    return fill_mass(cfg.geometry, cfg.fluid, cfg.actuator.design_temperature);
}

/// Full state of one simulation tick, handed to observers.
struct TickState {
    std::int64_t tick = 0; ///< 0 = initial state before any step
    double t = 0.0;
    double current = 0.0;  ///< drive in effect from t onward
    ThermalNetwork thermal;
    ActuatorState pouch_a;
    ActuatorState pouch_b;
    double scenario_out = 0.0;
};

namespace detail {

[[nodiscard]] inline double scenario_output(const ScenarioConfig& cfg, const ActuatorState& a,
                                            const ActuatorState& b, double crawler_position) {
    switch (cfg.kind) {
        case ScenarioKind::muscle:
            return joint_angle(a.bend_angle, b.bend_angle, cfg.joint);
        case ScenarioKind::gripper: {
            const FingerAngles fingers = gripper_aperture(a.bend_angle, b.bend_angle, cfg.gripper);
            return fingers.finger_a + fingers.finger_b;
        }
        case ScenarioKind::crawler:
            return crawler_position;
    }
    throw std::invalid_argument("run_scenario: unknown scenario kind");
}

[[nodiscard]] inline Sample make_sample(const ScenarioConfig& cfg, const TickState& st) {
    const JunctionHeatFlows flows =
        junction_heat_flows(cfg.peltier, st.current, st.thermal.node_a.temperature,
                            st.thermal.node_b.temperature);
    Sample row;
    row.t = st.t;
    row.t_hot = st.thermal.node_a.temperature;
    row.t_cold = st.thermal.node_b.temperature;
    row.current = st.current;
    row.q_hot = flows.q_hot;
    row.q_cold = flows.q_cold;
    row.p_a = st.pouch_a.pressure;
    row.p_b = st.pouch_b.pressure;
    row.v_a = st.pouch_a.volume;
    row.v_b = st.pouch_b.volume;
    row.theta_a = st.pouch_a.bend_angle;
    row.theta_b = st.pouch_b.bend_angle;
    row.scenario_out = st.scenario_out;
    return row;
}

} // namespace detail

/// Runs the configured scenario and returns the sampled trace. The observer is
/// invoked with every tick state (including the initial one), before sampling.
///
/// Per tick: resolve the drive current, advance the thermal network one Euler
/// step (charging the latent powers reported by the previous actuator update),
/// re-equilibrate both pouches at their new node temperatures, then update the
/// scenario output. The trace records the initial state and every
/// sample_every-th tick thereafter.
template <class Observer>
[[nodiscard]] TimeSeries run_scenario(const ScenarioConfig& cfg, Observer&& observe) {
    cfg.validate();

    const double dt = cfg.sim.dt;
    const double p_amb = cfg.actuator.ambient_pressure;
    const double mass = resolved_fill_mass(cfg);
    const auto n_ticks = static_cast<std::int64_t>(std::floor(cfg.sim.t_end / dt + 1e-9));

    ThermalNetwork net = cfg.thermal;
    ActuatorState pouch_a =
        flash_equilibrium(cfg.fluid, cfg.geometry, net.node_a.temperature, mass, p_amb);
    ActuatorState pouch_b =
        flash_equilibrium(cfg.fluid, cfg.geometry, net.node_b.temperature, mass, p_amb);
    double latent_a = 0.0;
    double latent_b = 0.0;
    double crawler_position = 0.0;
    double prev_bend = pouch_a.bend_angle - pouch_b.bend_angle;

    TimeSeries trace;
    trace.samples.reserve(static_cast<std::size_t>(n_ticks / cfg.sim.sample_every) + 1);

    TickState st;
    st.tick = 0;
    st.t = 0.0;
    st.current = drive_current_at(cfg.schedule, 0.0, cfg.peltier, net.node_a.temperature,
                                  net.node_b.temperature);
    st.thermal = net;
    st.pouch_a = pouch_a;
    st.pouch_b = pouch_b;
    st.scenario_out = detail::scenario_output(cfg, pouch_a, pouch_b, crawler_position);
    observe(static_cast<const TickState&>(st));
    trace.samples.push_back(detail::make_sample(cfg, st));

    for (std::int64_t k = 0; k < n_ticks; ++k) {
        const double t = static_cast<double>(k) * dt;
        const double current = drive_current_at(cfg.schedule, t, cfg.peltier,
                                                net.node_a.temperature, net.node_b.temperature);
        net = step_thermal(net, cfg.peltier, current, latent_a, latent_b, dt);

        const ActuatorStep step_a =
            step_actuator(pouch_a, cfg.fluid, cfg.geometry, net.node_a.temperature, p_amb, dt);
        const ActuatorStep step_b =
            step_actuator(pouch_b, cfg.fluid, cfg.geometry, net.node_b.temperature, p_amb, dt);
        pouch_a = step_a.state;
        pouch_b = step_b.state;
        latent_a = step_a.latent_w;
        latent_b = step_b.latent_w;

        if (cfg.kind == ScenarioKind::crawler) {
            const double bend = pouch_a.bend_angle - pouch_b.bend_angle;
            crawler_position += crawler_stride(bend - prev_bend, cfg.crawler);
            prev_bend = bend;
        }

        st.tick = k + 1;
        st.t = static_cast<double>(k + 1) * dt;
        st.current = drive_current_at(cfg.schedule, st.t, cfg.peltier, net.node_a.temperature,
                                      net.node_b.temperature);
        st.thermal = net;
        st.pouch_a = pouch_a;
        st.pouch_b = pouch_b;
        st.scenario_out = detail::scenario_output(cfg, pouch_a, pouch_b, crawler_position);
        observe(static_cast<const TickState&>(st));
        if ((k + 1) % cfg.sim.sample_every == 0)
            trace.samples.push_back(detail::make_sample(cfg, st));
    }
    return trace;
}

/// Runs the configured scenario and returns the sampled trace.
[[nodiscard]] inline TimeSeries run_scenario(const ScenarioConfig& cfg) {
    return run_scenario(cfg, [](const TickState&) {});
}

} // namespace pouchsim
