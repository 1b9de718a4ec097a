#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "pouchsim/config.hpp"
#include "pouchsim/errors.hpp"
#include "pouchsim/scenarios.hpp"
#include "pouchsim/timeseries.hpp"

namespace pouchsim {

// ---------------------------------------------------------------------------
// Command implementations behind the pouchsim tool
//
// The executable only parses arguments and maps exceptions to exit codes;
// the work happens here so it stays directly testable.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

inline void report_line(std::string& out, const char* label, const std::string& value) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%-28s%s\n", label, value.c_str());
    out += buf;
}

} // namespace detail

/// Byte-stable text report of the design quantities for one configuration:
/// boiling point against ambient, pouch capacities, and the liquid charge.
[[nodiscard]] inline std::string design_report(const ScenarioConfig& cfg) {
    cfg.validate();
    const double t_design = cfg.actuator.design_temperature;
    const double p_sat = vapor_pressure(cfg.fluid, t_design);
    const double t_boil = saturation_temperature(cfg.fluid, cfg.actuator.ambient_pressure);
    const double v_cavity = max_cavity_volume(cfg.geometry);
    const double v_cav_fill = cavity_fill_volume(cfg.geometry, cfg.fluid, t_design);
    const double v_chan_fill = channel_fill_volume(cfg.geometry, cfg.fluid, t_design);
    const double v_total_fill = total_fill_volume(cfg.geometry, cfg.fluid, t_design);

    std::string out = "pouch motor design report\n";
    detail::report_line(out, "fluid:", cfg.fluid.name);
    detail::report_line(out, "design_temperature_k:", detail::format_g9(t_design));
    detail::report_line(out, "vapor_pressure_pa:", detail::format_g9(p_sat));
    detail::report_line(out, "ambient_pressure_pa:",
                        detail::format_g9(cfg.actuator.ambient_pressure));
    detail::report_line(out, "boiling_temperature_k:", detail::format_g9(t_boil));
    detail::report_line(out, "cavity_count:", std::to_string(cfg.geometry.cavity_count));
    detail::report_line(out, "side_length_m:", detail::format_g9(cfg.geometry.side_length));
    detail::report_line(out, "depth_m:", detail::format_g9(cfg.geometry.depth));
    detail::report_line(out, "max_cavity_volume_m3:", detail::format_g9(v_cavity));
    detail::report_line(out, "chain_capacity_m3:",
                        detail::format_g9(cfg.geometry.cavity_count * v_cavity));
    detail::report_line(out, "cavity_fill_volume_m3:", detail::format_g9(v_cav_fill));
    detail::report_line(out, "channel_fill_volume_m3:", detail::format_g9(v_chan_fill));
    detail::report_line(out, "total_fill_volume_m3:", detail::format_g9(v_total_fill));
    detail::report_line(out, "total_fill_volume_ul:", detail::format_g9(v_total_fill * 1e9));
    detail::report_line(out, "channel_share_percent:",
                        detail::format_g9(100.0 * v_chan_fill / v_total_fill));
    detail::report_line(out, "fill_mass_kg:", detail::format_g9(resolved_fill_mass(cfg)));
    return out;
}

/// Runs the scenario and writes its trace as CSV to out_path. Returns the
/// trace for further inspection.
inline TimeSeries simulate_to_csv(const ScenarioConfig& cfg, const std::string& out_path) {
    const TimeSeries trace = run_scenario(cfg);
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw io_error("cannot open output file: " + out_path);
    write_csv(trace, out);
    out.flush();
    if (!out)
        throw io_error("cannot write output file: " + out_path);
    return trace;
}

// ---------------------------------------------------------------------------
// Parameter sweeps
// ---------------------------------------------------------------------------

/// Rewrites one numeric value addressed by a dotted path inside a raw JSON
/// config. Two broadcast aliases address the drive schedule as a whole:
/// "schedule.power" / "schedule.current" set that drive on every segment.
inline void apply_config_value(nlohmann::json& root, const std::string& dotted_path,
                               double value) {
    if (dotted_path == "schedule.power" || dotted_path == "schedule.current") {
        nlohmann::json* schedule = root.contains("schedule") ? &root["schedule"] : nullptr;
        if (!schedule || !schedule->contains("segments") || !(*schedule)["segments"].is_array() ||
            (*schedule)["segments"].empty())
            throw config_error("sweep: '" + dotted_path +
                               "' requires a schedule with at least one segment");
        const bool power = dotted_path == "schedule.power";
        for (nlohmann::json& seg : (*schedule)["segments"]) {
            if (!seg.is_object())
                throw config_error("sweep: schedule.segments entries must be objects");
            seg.erase("current_a");
            seg.erase("power_w");
            seg[power ? "power_w" : "current_a"] = value;
        }
        return;
    }

    nlohmann::json* node = &root;
    std::size_t begin = 0;
    std::vector<std::string> tokens;
    while (begin <= dotted_path.size()) {
        const std::size_t end = dotted_path.find('.', begin);
        tokens.push_back(dotted_path.substr(
            begin, end == std::string::npos ? std::string::npos : end - begin));
        if (end == std::string::npos) break;
        begin = end + 1;
    }
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& key = tokens[i];
        if (key.empty())
            throw config_error("sweep: invalid parameter path '" + dotted_path + "'");
        if (node->is_array()) {
            std::size_t index = 0;
            try {
                index = std::stoul(key);
            } catch (const std::exception&) {
                throw config_error("sweep: '" + key + "' in path '" + dotted_path +
                                   "' must be an array index");
            }
            if (index >= node->size())
                throw config_error("sweep: index " + key + " in path '" + dotted_path +
                                   "' is out of range");
            node = &(*node)[index];
        } else if (node->is_object()) {
            if (!node->contains(key))
                throw config_error("sweep: parameter path '" + dotted_path +
                                   "' not found in config (missing '" + key + "')");
            node = &(*node)[key];
        } else {
            throw config_error("sweep: parameter path '" + dotted_path +
                               "' descends into a non-container value");
        }
    }
    if (!node->is_number())
        throw config_error("sweep: parameter path '" + dotted_path +
                           "' does not address a numeric value");
    *node = value;
}

/// One sweep summary line. Times are NaN when the trace never meets the
/// corresponding condition.
struct SweepRow {
    double value = 0.0;
    double rise_time_s = std::numeric_limits<double>::quiet_NaN();
    double settle_time_s = std::numeric_limits<double>::quiet_NaN();
};

/// Rise time: first sampled instant with T_hot >= target. Settle time: first
/// sampled instant after the T_hot peak with |T_hot - T_amb| <= band.
[[nodiscard]] inline SweepRow summarize_trace(const TimeSeries& trace, double value,
                                              double ambient_k, double target_temp_k,
                                              double band_k) {
    SweepRow row;
    row.value = value;
    std::size_t peak = 0;
    for (std::size_t i = 0; i < trace.samples.size(); ++i) {
        const Sample& s = trace.samples[i];
        if (std::isnan(row.rise_time_s) && s.t_hot >= target_temp_k) row.rise_time_s = s.t;
        if (s.t_hot > trace.samples[peak].t_hot) peak = i;
    }
    for (std::size_t i = peak; i < trace.samples.size(); ++i) {
        if (std::abs(trace.samples[i].t_hot - ambient_k) <= band_k) {
            row.settle_time_s = trace.samples[i].t;
            break;
        }
    }
    return row;
}

/// Runs the scenario once per value, each time rewriting the addressed
/// parameter in the raw config before re-validation. Rows keep input order.
[[nodiscard]] inline std::vector<SweepRow> run_sweep(const nlohmann::json& base_config,
                                                     const std::string& param_path,
                                                     const std::vector<double>& values,
                                                     double target_temp_k, double band_k) {
    if (values.empty())
        throw config_error("sweep: at least one value is required");
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        nlohmann::json doc = base_config;
        apply_config_value(doc, param_path, value);
        const ScenarioConfig cfg = parse_config_json(doc);
        const TimeSeries trace = run_scenario(cfg);
        rows.push_back(summarize_trace(trace, value, cfg.thermal.ambient, target_temp_k, band_k));
    }
    return rows;
}

/// Writes sweep summaries as CSV (header + one row per value, "%.9g", LF).
inline void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& os) {
    os << "value,rise_time_s,settle_time_s\n";
    for (const SweepRow& row : rows)
        os << detail::format_g9(row.value) << ',' << detail::format_g9(row.rise_time_s) << ','
           << detail::format_g9(row.settle_time_s) << '\n';
}

} // namespace pouchsim
