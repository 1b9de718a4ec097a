#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pouchsim/fluid.hpp"
#include "pouchsim/geometry.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Sealed pouch-chain actuator: two-phase flash equilibrium
//
// A fixed liquid charge m is sealed into the chain. At face temperature T the
// inventory splits into vapor and liquid in one of three quasi-static regimes:
//
//  1. P_sat(T) <= P_amb          pouch flat, all liquid, internal P = P_sat
//  2. membrane slack             vapor at P_amb; all liquid evaporates while
//                                the all-vapor volume fits the chain
//  3. chain full (V = n v_max)   evaporation continues at fixed volume until
//                                P reaches P_sat or the liquid is exhausted
//
// The flash map is memoryless in T: the equilibrium depends only on (T, m).
// ---------------------------------------------------------------------------

struct ActuatorState {
    double mass = 0.0;        ///< sealed inventory [kg]
    double vapor_mass = 0.0;  ///< [kg]
    double liquid_mass = 0.0; ///< [kg]
    double pressure = 0.0;    ///< internal pressure [Pa]
    double volume = 0.0;      ///< total chain volume [m^3]
    double bend_angle = 0.0;  ///< per-cavity arc half-angle [rad]
};

/// Equilibrium state of inventory mass_kg at face temperature t_kelvin against
/// ambient pressure p_ambient_pa.
[[nodiscard]] inline ActuatorState flash_equilibrium(const FluidProperties& fluid,
                                                     const PouchGeometry& geom, double t_kelvin,
                                                     double mass_kg, double p_ambient_pa) {
    if (!std::isfinite(mass_kg) || mass_kg < 0.0)
        throw std::invalid_argument("flash_equilibrium: mass must be finite and >= 0");
    if (!(p_ambient_pa > 0.0) || !std::isfinite(p_ambient_pa))
        throw std::invalid_argument("flash_equilibrium: ambient pressure must be finite and > 0");
    const double p_sat = vapor_pressure(fluid, t_kelvin);

    ActuatorState s;
    s.mass = mass_kg;
    if (mass_kg == 0.0) {
        s.pressure = p_sat;
        return s;
    }
    if (p_sat <= p_ambient_pa) {
        s.liquid_mass = mass_kg;
        s.pressure = p_sat;
        return s;
    }

    const double v_cap = geom.cavity_count * max_cavity_volume(geom);
    const double specific = gas_constant * t_kelvin / fluid.molar_mass; // R T / M [J/kg]
    const double v_all_vapor = mass_kg * specific / p_ambient_pa;
    if (v_all_vapor <= v_cap) {
        s.vapor_mass = mass_kg;
        s.pressure = p_ambient_pa;
        s.volume = v_all_vapor;
        s.bend_angle = bend_angle_from_volume(geom, v_all_vapor / geom.cavity_count);
        return s;
    }

    s.volume = v_cap;
    s.bend_angle = std::numbers::pi / 2.0;
    const double m_sat = p_sat * v_cap / specific; // vapor mass at P_sat in the full chain
    if (mass_kg >= m_sat) {
        s.vapor_mass = m_sat;
        s.liquid_mass = mass_kg - m_sat;
        s.pressure = p_sat;
    } else {
        s.vapor_mass = mass_kg;
        s.pressure = mass_kg * specific / v_cap;
    }
    return s;
}

/// Heat rate consumed by the phase change between two successive states [W];
/// positive while evaporating, negative while condensing.
[[nodiscard]] inline double latent_power(const FluidProperties& fluid, const ActuatorState& prev,
                                         const ActuatorState& next, double dt_s) {
    if (!(dt_s > 0.0) || !std::isfinite(dt_s))
        throw std::invalid_argument("latent_power: dt must be finite and > 0");
    return fluid.latent_heat * (next.vapor_mass - prev.vapor_mass) / dt_s;
}

/// Result of one actuator update: the new equilibrium and the latent power the
/// phase change draws from the attached thermal node over this step.
struct ActuatorStep {
    ActuatorState state;
    double latent_w = 0.0;
};

/// Re-equilibrates the pouch at the new face temperature and reports the
/// latent power to charge against the thermal node on its next step.
[[nodiscard]] inline ActuatorStep step_actuator(const ActuatorState& state,
                                                const FluidProperties& fluid,
                                                const PouchGeometry& geom, double t_node_k,
                                                double p_ambient_pa, double dt_s) {
    ActuatorStep out;
    out.state = flash_equilibrium(fluid, geom, t_node_k, state.mass, p_ambient_pa);
    out.latent_w = latent_power(fluid, state, out.state, dt_s);
    return out;
}

} // namespace pouchsim
