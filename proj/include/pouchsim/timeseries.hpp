#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace pouchsim {

// ---------------------------------------------------------------------------
// Simulation trace
//
// One row per sampled tick. Column order and formatting are part of the
// output contract: values are written with 9 significant digits ("%.9g") and
// Unix line endings so identical configurations produce identical bytes.
// ---------------------------------------------------------------------------

struct Sample {
    double t = 0.0;            ///< [s]
    double t_hot = 0.0;        ///< node A temperature [K]
    double t_cold = 0.0;       ///< node B temperature [K]
    double current = 0.0;      ///< drive current [A]
    double q_hot = 0.0;        ///< heat into node A from the junction [W]
    double q_cold = 0.0;       ///< heat drawn from node B by the junction [W]
    double p_a = 0.0;          ///< pouch A internal pressure [Pa]
    double p_b = 0.0;          ///< pouch B internal pressure [Pa]
    double v_a = 0.0;          ///< pouch A chain volume [m^3]
    double v_b = 0.0;          ///< pouch B chain volume [m^3]
    double theta_a = 0.0;      ///< pouch A bend angle [rad]
    double theta_b = 0.0;      ///< pouch B bend angle [rad]
    double scenario_out = 0.0; ///< joint angle [rad] / aperture [rad] / position [m]
};

struct TimeSeries {
    std::vector<Sample> samples;
};

inline const char* timeseries_csv_header =
    "t,T_hot,T_cold,I,Q_h,Q_c,P_a,P_b,V_a,V_b,theta_a,theta_b,scenario_out";

namespace detail {

/// Fixed 9-significant-digit rendering used for every CSV value.
inline void append_csv_value(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    line += buf;
}

} // namespace detail

/// Serializes one sample as a CSV row (no trailing newline).
[[nodiscard]] inline std::string to_csv_row(const Sample& s) {
    const double cols[] = {s.t,   s.t_hot, s.t_cold,  s.current, s.q_hot,   s.q_cold,     s.p_a,
                           s.p_b, s.v_a,   s.v_b,     s.theta_a, s.theta_b, s.scenario_out};
    std::string line;
    line.reserve(13 * 16);
    bool first = true;
    for (double v : cols) {
        if (!first) line += ',';
        detail::append_csv_value(line, v);
        first = false;
    }
    return line;
}

/// Writes the full trace, header included, with Unix line endings.
inline void write_csv(const TimeSeries& ts, std::ostream& os) {
    os << timeseries_csv_header << '\n';
    for (const Sample& s : ts.samples) os << to_csv_row(s) << '\n';
}

} // namespace pouchsim
