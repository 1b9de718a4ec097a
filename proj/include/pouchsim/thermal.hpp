#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pouchsim/errors.hpp"
#include "pouchsim/peltier.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Lumped two-node thermal network
//
// One node per junction face (face assembly = junction plate + bonded pouch
// stack). Each node exchanges heat with ambient through a convective
// conductance hA and with the other node through the junction model:
//     C dT_a/dt = +q_hot(I, T_a, T_b) - hA_a (T_a - T_amb) - latent_a
//     C dT_b/dt = -q_cold(I, T_a, T_b) - hA_b (T_b - T_amb) - latent_b
// integrated with a fixed-step explicit Euler scheme. Positive current heats
// node A and cools node B; the same expressions hold for reversed current
// because the junction formulas are role-symmetric under (I, T_h, T_c)
// -> (-I, T_c, T_h).
// ---------------------------------------------------------------------------

struct ThermalNode {
    double temperature = 308.15;   ///< T [K]
    double heat_capacity = 12.0;   ///< C [J/K]
    double convection = 0.10;      ///< hA [W/K]

    /// Throws std::invalid_argument if any parameter is out of range.
    void validate() const {
        if (!(temperature > 0.0) || !std::isfinite(temperature))
            throw std::invalid_argument("ThermalNode: temperature must be finite and > 0 K");
        if (!(heat_capacity > 0.0))
            throw std::invalid_argument("ThermalNode: heat_capacity must be > 0");
        if (convection < 0.0 || !std::isfinite(convection))
            throw std::invalid_argument("ThermalNode: convection must be >= 0");
    }
};

struct ThermalNetwork {
    ThermalNode node_a;       ///< heats under positive current
    ThermalNode node_b;       ///< cools under positive current
    double ambient = 308.15;  ///< T_amb [K]

    void validate() const {
        node_a.validate();
        node_b.validate();
        if (!(ambient > 0.0) || !std::isfinite(ambient))
            throw std::invalid_argument("ThermalNetwork: ambient must be finite and > 0 K");
    }
};

/// Largest explicit-Euler step that keeps both node updates stable [s]:
/// dt < 2 C / (hA + 2 n K) evaluated for the stiffer node.
[[nodiscard]] inline double max_stable_dt(const ThermalNetwork& net, const PeltierParams& p) {
    const double coupling = 2.0 * p.couple_count * p.thermal_conductance;
    const double rate_a = (net.node_a.convection + coupling) / net.node_a.heat_capacity;
    const double rate_b = (net.node_b.convection + coupling) / net.node_b.heat_capacity;
    return 2.0 / std::max(rate_a, rate_b);
}

/// Advances the network one explicit-Euler step of length dt_s and returns the
/// successor state. latent_a/latent_b are heat sinks [W] drawn from each node
/// (positive = heat consumed, e.g. by evaporation).
[[nodiscard]] inline ThermalNetwork step_thermal(const ThermalNetwork& net, const PeltierParams& p,
                                                 double current_a, double latent_a_w,
                                                 double latent_b_w, double dt_s) {
    if (!(dt_s > 0.0) || !std::isfinite(dt_s))
        throw std::invalid_argument("step_thermal: dt must be finite and > 0");
    if (dt_s > max_stable_dt(net, p))
        throw std::invalid_argument("step_thermal: dt exceeds the explicit-Euler stability bound");
    if (!std::isfinite(latent_a_w) || !std::isfinite(latent_b_w))
        throw std::invalid_argument("step_thermal: latent powers must be finite");

    const auto flows =
        junction_heat_flows(p, current_a, net.node_a.temperature, net.node_b.temperature);
    ThermalNetwork next = net;
    next.node_a.temperature +=
        dt_s *
        (flows.q_hot - net.node_a.convection * (net.node_a.temperature - net.ambient) - latent_a_w) /
        net.node_a.heat_capacity;
    next.node_b.temperature +=
        dt_s *
        (-flows.q_cold - net.node_b.convection * (net.node_b.temperature - net.ambient) -
         latent_b_w) /
        net.node_b.heat_capacity;
    if (!std::isfinite(next.node_a.temperature) || !std::isfinite(next.node_b.temperature))
        throw numeric_error("step_thermal: node temperature became non-finite");
    return next;
}

/// Equilibrium temperature of a single node absorbing net_power_w against
/// convection to ambient [K]: T_amb + P / hA.
[[nodiscard]] inline double steady_state_temperature(const ThermalNode& node, double net_power_w,
                                                     double ambient_k) {
    if (!std::isfinite(net_power_w))
        throw std::invalid_argument("steady_state_temperature: power must be finite");
    if (node.convection <= 0.0) {
        if (net_power_w == 0.0) return ambient_k;
        throw infeasible_error(
            "steady_state_temperature: no equilibrium with zero convection and nonzero power");
    }
    return ambient_k + net_power_w / node.convection;
}

} // namespace pouchsim
