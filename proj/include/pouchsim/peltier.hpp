#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "pouchsim/errors.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Thermoelectric junction model
//
// A module of n_couples series thermocouples driven with current I between a
// hot face at T_h and a cold face at T_c delivers
//     Q_cold = n [ alpha T_c I - I^2 R / 2 - K (T_h - T_c) ]   (absorbed cold side)
//     Q_hot  = n [ alpha T_h I + I^2 R / 2 - K (T_h - T_c) ]   (delivered hot side)
// so that Q_hot - Q_cold = n (alpha (T_h - T_c) I + I^2 R), the electrical
// input power. With I = 0 both flows reduce to back-conduction -n K (T_h - T_c).
// ---------------------------------------------------------------------------

struct PeltierParams {
    int couple_count = 127;                   ///< n, thermocouples in series
    double seebeck = 4.0e-4;                  ///< alpha [V/K] per couple
    double internal_resistance = 0.02;        ///< R [ohm] per couple
    double thermal_conductance = 0.001;       ///< K [W/K] per couple
    std::optional<double> rated_delta_t_max;  ///< optional datasheet limit [K]
    std::optional<double> rated_q_max;        ///< optional datasheet limit [W]
    std::optional<double> current_limit;      ///< optional safety clamp [A]

    /// Throws std::invalid_argument if any parameter is out of range.
    void validate() const {
        if (couple_count < 1)
            throw std::invalid_argument("PeltierParams: couple_count must be >= 1");
        if (!(seebeck > 0.0))
            throw std::invalid_argument("PeltierParams: seebeck must be > 0");
        if (internal_resistance < 0.0 || !std::isfinite(internal_resistance))
            throw std::invalid_argument("PeltierParams: internal_resistance must be >= 0");
        if (thermal_conductance < 0.0 || !std::isfinite(thermal_conductance))
            throw std::invalid_argument("PeltierParams: thermal_conductance must be >= 0");
        if (rated_delta_t_max && !(*rated_delta_t_max > 0.0))
            throw std::invalid_argument("PeltierParams: rated_delta_t_max must be > 0");
        if (rated_q_max && !(*rated_q_max > 0.0))
            throw std::invalid_argument("PeltierParams: rated_q_max must be > 0");
        if (current_limit && !(*current_limit > 0.0))
            throw std::invalid_argument("PeltierParams: current_limit must be > 0");
    }
};

/// Heat absorbed at the cold junction and delivered at the hot junction [W].
struct JunctionHeatFlows {
    double q_cold = 0.0;
    double q_hot = 0.0;
};

/// Junction heat flows for signed drive current [W].
///
/// Relabeling the junctions while reversing the current swaps the two flows
/// with a sign flip: junction_heat_flows(p, -I, T_c, T_h) = (-q_hot, -q_cold).
[[nodiscard]] inline JunctionHeatFlows junction_heat_flows(const PeltierParams& p, double current_a,
                                                           double t_hot_k, double t_cold_k) {
    if (!std::isfinite(current_a))
        throw std::invalid_argument("junction_heat_flows: current must be finite");
    if (!(t_hot_k > 0.0) || !(t_cold_k > 0.0) || !std::isfinite(t_hot_k) || !std::isfinite(t_cold_k))
        throw std::invalid_argument("junction_heat_flows: temperatures must be finite and > 0 K");
    const double n = static_cast<double>(p.couple_count);
    const double joule = 0.5 * current_a * current_a * p.internal_resistance;
    const double conduction = p.thermal_conductance * (t_hot_k - t_cold_k);
    return {n * (p.seebeck * t_cold_k * current_a - joule - conduction),
            n * (p.seebeck * t_hot_k * current_a + joule - conduction)};
}

/// Electrical input power n (alpha dT I + I^2 R); equals q_hot - q_cold [W].
[[nodiscard]] inline double electrical_power(const PeltierParams& p, double current_a,
                                             double t_hot_k, double t_cold_k) {
    if (!std::isfinite(current_a))
        throw std::invalid_argument("electrical_power: current must be finite");
    const double n = static_cast<double>(p.couple_count);
    return n * (p.seebeck * (t_hot_k - t_cold_k) * current_a +
                current_a * current_a * p.internal_resistance);
}

/// Current that draws the given electrical power at the given junction
/// temperatures [A]. Inverts the power quadratic, returning its non-negative
/// root; throws infeasible_error when none exists.
[[nodiscard]] inline double current_for_power(const PeltierParams& p, double power_w,
                                              double t_hot_k, double t_cold_k) {
    if (!std::isfinite(power_w) || power_w < 0.0)
        throw std::invalid_argument("current_for_power: power must be finite and >= 0");
    if (power_w == 0.0) return 0.0;
    const double n = static_cast<double>(p.couple_count);
    const double a = n * p.internal_resistance;
    const double b = n * p.seebeck * (t_hot_k - t_cold_k);
    if (a == 0.0) {
        if (b <= 0.0)
            throw infeasible_error(
                "current_for_power: no positive-current solution with zero resistance and "
                "non-positive junction temperature difference");
        return power_w / b;
    }
    // a I^2 + b I - P = 0, positive branch; discriminant >= b^2 since P >= 0
    const double disc = b * b + 4.0 * a * power_w;
    return (-b + std::sqrt(disc)) / (2.0 * a);
}

} // namespace pouchsim
