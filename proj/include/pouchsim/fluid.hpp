#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace pouchsim {

// ---------------------------------------------------------------------------
// Working-fluid property model
//
// The fluid is described by an Antoine-form saturation curve
//     P_sat(T) = exp(antoine_a - antoine_b / T)        [Pa], T in kelvin
// plus the bulk constants needed by the fill-volume design formulas and the
// latent-heat bookkeeping. Defaults correspond to a low-boiling-point
// engineered fluid (methoxy-perfluoropropane class).
// ---------------------------------------------------------------------------

/// Universal gas constant [J/(mol K)].
inline constexpr double gas_constant = 8.314;

struct FluidProperties {
    std::string name = "Novec 7000";
    double antoine_a = 22.978;          ///< dimensionless
    double antoine_b = 3548.6;          ///< kelvin
    double molar_mass = 0.200;          ///< kg/mol
    double liquid_density = 1400.0;     ///< kg/m^3
    double latent_heat = 1.42e5;        ///< J/kg
    double cp_liquid = 1300.0;          ///< J/(kg K)
    double cp_vapor = 900.0;            ///< J/(kg K)

    /// Throws std::invalid_argument if any constant is out of range.
    void validate() const {
        if (!(antoine_b > 0.0))
            throw std::invalid_argument("FluidProperties: antoine_b must be > 0");
        if (!(molar_mass > 0.0))
            throw std::invalid_argument("FluidProperties: molar_mass must be > 0");
        if (!(liquid_density > 0.0))
            throw std::invalid_argument("FluidProperties: liquid_density must be > 0");
        if (!(latent_heat > 0.0))
            throw std::invalid_argument("FluidProperties: latent_heat must be > 0");
        if (!(cp_liquid > 0.0) || !(cp_vapor > 0.0))
            throw std::invalid_argument("FluidProperties: heat capacities must be > 0");
        if (!std::isfinite(antoine_a))
            throw std::invalid_argument("FluidProperties: antoine_a must be finite");
    }
};

/// Saturation (vapor) pressure at temperature t_kelvin [Pa].
[[nodiscard]] inline double vapor_pressure(const FluidProperties& fluid, double t_kelvin) {
    if (!std::isfinite(t_kelvin) || t_kelvin <= 0.0)
        throw std::invalid_argument("vapor_pressure: temperature must be finite and > 0 K");
    return std::exp(fluid.antoine_a - fluid.antoine_b / t_kelvin);
}

/// Inverse of vapor_pressure: the boiling temperature at pressure p_pascal [K].
///
/// Closed form T = b / (a - ln P); defined only for 0 < P < exp(a).
[[nodiscard]] inline double saturation_temperature(const FluidProperties& fluid, double p_pascal) {
    if (!std::isfinite(p_pascal) || p_pascal <= 0.0)
        throw std::invalid_argument("saturation_temperature: pressure must be finite and > 0 Pa");
    const double denom = fluid.antoine_a - std::log(p_pascal);
    if (denom <= 0.0)
        throw std::invalid_argument(
            "saturation_temperature: pressure at or above exp(antoine_a) has no finite "
            "saturation temperature");
    return fluid.antoine_b / denom;
}

} // namespace pouchsim
