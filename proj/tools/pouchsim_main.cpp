// pouchsim — design calculator and simulator for phase-change pouch motors.
//
// Subcommands:
//   design    print the fill/geometry design report for a config
//   simulate  integrate the configured scenario and write the CSV trace
//   sweep     repeat the scenario over a list of values for one parameter
//
// Exit codes: 0 success, 2 configuration error, 3 numeric failure, 4 I/O failure.

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pouchsim/pouchsim.hpp"

namespace {

std::vector<double> parse_value_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            values.push_back(v);
        } catch (const std::exception&) {
            throw pouchsim::config_error("sweep: --values must be a comma-separated list of "
                                         "numbers (bad entry: '" +
                                         item + "')");
        }
    }
    if (values.empty())
        throw pouchsim::config_error("sweep: --values must contain at least one number");
    return values;
}

void override_sim(pouchsim::ScenarioConfig& cfg, double dt, double t_end) {
    if (dt > 0.0) cfg.sim.dt = dt;
    if (t_end > 0.0) cfg.sim.t_end = t_end;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw pouchsim::config_error(std::string("config: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pouch motor design calculator and simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string param_path;
    std::string values_csv;
    double dt_override = 0.0;
    double t_end_override = 0.0;
    double target_temp_k = 343.15;
    double band_k = 1.0;
    bool quiet = false;

    CLI::App* design = app.add_subcommand("design", "print the fill design report");
    design->add_option("--config", config_path, "config file (JSON)")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "run the scenario and write a CSV trace");
    simulate->add_option("--config", config_path, "config file (JSON)")->required();
    simulate->add_option("--out", out_path, "output CSV path (default: config output.path)");
    simulate->add_option("--dt", dt_override, "override integrator step [s]");
    simulate->add_option("--t-end", t_end_override, "override simulated span [s]");
    simulate->add_flag("--quiet", quiet, "suppress progress text");

    CLI::App* sweep = app.add_subcommand("sweep", "run the scenario once per parameter value");
    sweep->add_option("--config", config_path, "config file (JSON)")->required();
    sweep->add_option("--param", param_path, "dotted config path (e.g. schedule.power)")
        ->required();
    sweep->add_option("--values", values_csv, "comma-separated list of values")->required();
    sweep->add_option("--out", out_path, "output CSV path")->required();
    sweep->add_option("--dt", dt_override, "override integrator step [s]");
    sweep->add_option("--t-end", t_end_override, "override simulated span [s]");
    sweep->add_option("--target-temp-k", target_temp_k,
                      "rise-time threshold for T_hot [K] (default 343.15)");
    sweep->add_option("--band-k", band_k, "settle band around ambient [K] (default 1)");
    sweep->add_flag("--quiet", quiet, "suppress progress text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (design->parsed()) {
            const pouchsim::ScenarioConfig cfg = pouchsim::load_config(config_path);
            std::cout << pouchsim::design_report(cfg);
        } else if (simulate->parsed()) {
            pouchsim::ScenarioConfig cfg = pouchsim::load_config(config_path);
            override_sim(cfg, dt_override, t_end_override);
            const std::string destination = out_path.empty() ? cfg.output_path : out_path;
            if (destination.empty())
                throw pouchsim::config_error(
                    "config: no output path (set output.path or pass --out)");
            const pouchsim::TimeSeries trace = pouchsim::simulate_to_csv(cfg, destination);
            if (!quiet)
                std::cout << "wrote " << trace.samples.size() << " samples to " << destination
                          << "\n";
        } else if (sweep->parsed()) {
            nlohmann::json doc = pouchsim::load_config_json(config_path);
            if (dt_override > 0.0) doc["sim"]["dt_s"] = dt_override;
            if (t_end_override > 0.0) doc["sim"]["t_end_s"] = t_end_override;
            const std::vector<double> values = parse_value_list(values_csv);
            const std::vector<pouchsim::SweepRow> rows =
                pouchsim::run_sweep(doc, param_path, values, target_temp_k, band_k);
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw pouchsim::io_error("cannot open output file: " + out_path);
            pouchsim::write_sweep_csv(rows, out);
            out.flush();
            if (!out) throw pouchsim::io_error("cannot write output file: " + out_path);
            if (!quiet)
                std::cout << "wrote " << rows.size() << " sweep rows to " << out_path << "\n";
        }
        return 0;
    } catch (const pouchsim::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const pouchsim::io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const pouchsim::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const pouchsim::infeasible_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
