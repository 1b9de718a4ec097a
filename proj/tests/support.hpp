#pragma once

/// Shared helpers for the test suite: independent oracles that cross-check
/// library results by a different route than the library itself takes, plus
/// small file utilities used by the CLI round-trip tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "pouchsim/fluid.hpp"
#include "pouchsim/geometry.hpp"
#include "pouchsim/scenarios.hpp"

namespace pouchsim::testing {

/// Result of the brute-force phase-split search.
struct FlashScan {
    double vapor_mass = 0.0;
    double volume = 0.0;
    double pressure = 0.0;
    double score = 0.0;
};

/// Brute-force phase-equilibrium oracle.
///
/// Instead of reasoning about regimes, scan candidate vapor masses on a
/// uniform grid and score each candidate by how badly it violates the
/// equilibrium conditions:
///  - liquid present        -> vapor pressure must equal the fluid's
///                             saturation pressure at this temperature;
///  - vapor only, pouch slack -> vapor sits at ambient pressure, which must
///                             not exceed saturation (else it would condense);
///  - no vapor at all        -> saturation pressure must not exceed ambient
///                             (else the liquid would boil).
/// The candidate with the smallest violation is the physical answer, up to
/// grid resolution.  All scores are normalised by the saturation pressure so
/// they are comparable across temperatures.
inline FlashScan flash_scan_oracle(const FluidProperties& fluid,
                                   const PouchGeometry& geom,
                                   double t_kelvin,
                                   double mass_kg,
                                   double p_ambient_pa,
                                   std::size_t points) {
    const double p_sat = vapor_pressure(fluid, t_kelvin);
    const double v_cap = static_cast<double>(geom.cavity_count) * max_cavity_volume(geom);
    const double specific = gas_constant * t_kelvin / fluid.molar_mass;
    const double inv_psat = 1.0 / p_sat;

    FlashScan best;
    best.score = std::numeric_limits<double>::infinity();
    const double dm = mass_kg / static_cast<double>(points);

    for (std::size_t i = 0; i <= points; ++i) {
        const double m_v = (i == points) ? mass_kg : static_cast<double>(i) * dm;
        double m_l = mass_kg - m_v;
        if (m_l < 0.0) m_l = 0.0;
        const bool liquid = m_l > 0.0;

        double volume = 0.0;
        double pressure = 0.0;
        double score = 0.0;
        if (m_v <= 0.0) {
            volume = 0.0;
            pressure = p_sat;
            score = liquid ? std::max(0.0, (p_sat - p_ambient_pa) * inv_psat) : 0.0;
        } else {
            const double v_ambient = m_v * specific / p_ambient_pa;
            if (v_ambient < v_cap) {
                volume = v_ambient;
                pressure = p_ambient_pa;
                score = liquid ? std::fabs(p_sat - p_ambient_pa) * inv_psat
                               : std::max(0.0, (p_ambient_pa - p_sat) * inv_psat);
            } else {
                volume = v_cap;
                pressure = m_v * specific / v_cap;
                score = liquid ? std::fabs(pressure - p_sat) * inv_psat
                               : std::max(0.0, (pressure - p_sat) * inv_psat);
            }
        }
        if (score < best.score) {
            best = FlashScan{m_v, volume, pressure, score};
        }
        if (mass_kg <= 0.0) break;
    }
    return best;
}

/// Independent crawler displacement oracle.
///
/// Model the crawler as two frictional contacts joined by a body whose length
/// changes by stride_gain * delta_angle during a half-cycle.  Whichever
/// contact slides, it slides against its direction-dependent friction
/// coefficient, and quasi-static force balance splits the length change
/// between the contacts in inverse proportion to the friction each one feels:
/// during lengthening the front contact slides forward (cheap) and the rear
/// contact slides backward (expensive), and vice versa during shortening.
/// The net body displacement is the sum of the two contact displacements.
inline double crawler_force_balance_oracle(double delta_angle,
                                           const CrawlerConfig& cfg) {
    const double mag = std::fabs(cfg.stride_gain * delta_angle);
    if (mag == 0.0) return 0.0;
    const double denom = cfg.mu_forward + cfg.mu_backward;
    if (denom <= 0.0) {
        throw std::invalid_argument(
            "crawler_force_balance_oracle: friction coefficients sum to zero");
    }
    double delta_front = 0.0;
    double delta_rear = 0.0;
    if (delta_angle >= 0.0) {
        delta_front = +mag * cfg.mu_backward / denom;
        delta_rear = -mag * cfg.mu_forward / denom;
    } else {
        delta_front = -mag * cfg.mu_forward / denom;
        delta_rear = +mag * cfg.mu_backward / denom;
    }
    return delta_front + delta_rear;
}

/// Read a whole file into a string; throws on failure.
inline std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("slurp_file: cannot open " + path);
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace pouchsim::testing
