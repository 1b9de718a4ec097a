#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "pouchsim/fluid.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Pouch-chain geometry
//
// A motor is a serial chain of n square pouch cavities (side length L, seam
// depth D) joined by narrow channels (seal length l, channel width d). An
// inflating cavity bows its two films into circular arcs; the bend angle
// theta is the arc half-angle, theta = pi/2 at full inflation.
// ---------------------------------------------------------------------------

struct PouchGeometry {
    int cavity_count = 4;          ///< n, number of series cavities
    double side_length = 0.02;     ///< L [m]
    double depth = 0.04;           ///< D [m]
    double seal_length = 0.002;    ///< l [m], connecting channel length
    double channel_width = 0.002;  ///< d [m]
    double v_min = 0.0;            ///< residual deflated volume per cavity [m^3]

    /// Throws std::invalid_argument if any dimension is out of range.
    void validate() const {
        if (cavity_count < 1)
            throw std::invalid_argument("PouchGeometry: cavity_count must be >= 1");
        if (!(side_length > 0.0))
            throw std::invalid_argument("PouchGeometry: side_length must be > 0");
        if (!(depth > 0.0))
            throw std::invalid_argument("PouchGeometry: depth must be > 0");
        if (seal_length < 0.0)
            throw std::invalid_argument("PouchGeometry: seal_length must be >= 0");
        if (channel_width < 0.0)
            throw std::invalid_argument("PouchGeometry: channel_width must be >= 0");
        if (v_min < 0.0)
            throw std::invalid_argument("PouchGeometry: v_min must be >= 0");
        if (v_min >= side_length * side_length * depth / std::numbers::pi)
            throw std::invalid_argument("PouchGeometry: v_min must be below the full cavity volume");
    }
};

/// Volume of one fully inflated cavity (bend angle pi/2): L^2 D / pi [m^3].
[[nodiscard]] inline double max_cavity_volume(const PouchGeometry& geom) {
    return geom.side_length * geom.side_length * geom.depth / std::numbers::pi;
}

namespace detail {

/// Dimensionless lens cross-section factor (theta - sin theta cos theta) / (2 theta^2),
/// i.e. cavity volume divided by L^2 D. Uses a series below theta = 0.01 where the
/// direct expression loses precision to cancellation.
[[nodiscard]] inline double lens_volume_factor(double theta) {
    if (theta == 0.0) return 0.0;
    if (theta < 0.01) {
        const double t2 = theta * theta;
        return theta * (1.0 / 3.0 + t2 * (-1.0 / 15.0 + t2 * (2.0 / 315.0 - t2 / 2835.0)));
    }
    return (theta - std::sin(theta) * std::cos(theta)) / (2.0 * theta * theta);
}

} // namespace detail

/// Volume of one cavity at bend angle theta in [0, pi/2] [m^3].
[[nodiscard]] inline double cavity_volume_at_angle(const PouchGeometry& geom, double theta) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (!std::isfinite(theta) || theta < 0.0 || theta > half_pi)
        throw std::invalid_argument("cavity_volume_at_angle: angle must lie in [0, pi/2]");
    return geom.side_length * geom.side_length * geom.depth * detail::lens_volume_factor(theta);
}

/// Bend angle producing cavity volume v [rad]. Inverse of cavity_volume_at_angle,
/// found by bisection on [0, pi/2] run to floating-point fixpoint (well below
/// 1e-9 rad).
[[nodiscard]] inline double bend_angle_from_volume(const PouchGeometry& geom, double v) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    const double v_full = max_cavity_volume(geom);
    if (!std::isfinite(v) || v < 0.0)
        throw std::invalid_argument("bend_angle_from_volume: volume must be finite and >= 0");
    if (v > v_full) {
        // tolerate round-off from callers that derived v from v_full itself
        if (v > v_full * (1.0 + 8.0 * std::numeric_limits<double>::epsilon()))
            throw std::invalid_argument("bend_angle_from_volume: volume exceeds the full cavity volume");
        return half_pi;
    }
    if (v == 0.0) return 0.0;
    if (v == v_full) return half_pi;

    const double scale = geom.side_length * geom.side_length * geom.depth;
    const double target = v / scale;
    double lo = 0.0;
    double hi = half_pi;
    while (true) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (detail::lens_volume_factor(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Fill-volume design formulas
//
// The liquid charge is sized so that, fully vaporized at the design
// temperature, the vapor exactly fills the chain at the saturation pressure:
//     V_fill = M P_sat(T) V_geom / (rho R T)
// applied per cavity (V_geom = L^2 D / pi) and per channel (2 l^2 d / pi).
// ---------------------------------------------------------------------------

/// Liquid volume charged into the n cavities for design temperature t_kelvin [m^3].
[[nodiscard]] inline double cavity_fill_volume(const PouchGeometry& geom,
                                               const FluidProperties& fluid,
                                               double t_kelvin) {
    const double p_sat = vapor_pressure(fluid, t_kelvin);
    return geom.cavity_count * fluid.molar_mass * p_sat * geom.side_length * geom.side_length *
           geom.depth /
           (fluid.liquid_density * gas_constant * t_kelvin * std::numbers::pi);
}

/// Liquid volume charged into the n-1 connecting channels [m^3].
[[nodiscard]] inline double channel_fill_volume(const PouchGeometry& geom,
                                                const FluidProperties& fluid,
                                                double t_kelvin) {
    const double p_sat = vapor_pressure(fluid, t_kelvin);
    return (geom.cavity_count - 1) * 2.0 * fluid.molar_mass * p_sat * geom.seal_length *
           geom.seal_length * geom.channel_width /
           (fluid.liquid_density * gas_constant * t_kelvin * std::numbers::pi);
}

/// Total liquid charge: cavity plus channel volumes [m^3].
[[nodiscard]] inline double total_fill_volume(const PouchGeometry& geom,
                                              const FluidProperties& fluid,
                                              double t_kelvin) {
    return cavity_fill_volume(geom, fluid, t_kelvin) + channel_fill_volume(geom, fluid, t_kelvin);
}

/// Algebraically equivalent single-expression form of total_fill_volume,
/// kept as an independent evaluation route for cross-checking [m^3].
[[nodiscard]] inline double total_fill_volume_factored(const PouchGeometry& geom,
                                                       const FluidProperties& fluid,
                                                       double t_kelvin) {
    const double p_sat = vapor_pressure(fluid, t_kelvin);
    const double chain = geom.cavity_count * geom.side_length * geom.side_length * geom.depth +
                         2.0 * (geom.cavity_count - 1) * geom.seal_length * geom.seal_length *
                             geom.channel_width;
    return fluid.molar_mass * p_sat * chain /
           (fluid.liquid_density * gas_constant * t_kelvin * std::numbers::pi);
}

/// Mass of the total liquid charge [kg].
[[nodiscard]] inline double fill_mass(const PouchGeometry& geom, const FluidProperties& fluid,
                                      double t_kelvin) {
    return total_fill_volume(geom, fluid, t_kelvin) * fluid.liquid_density;
}

} // namespace pouchsim
