#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "pouchsim/cli.hpp"
#include "pouchsim/config.hpp"
#include "support.hpp"

using Catch::Approx;
using Catch::Matchers::ContainsSubstring;
using namespace pouchsim;

namespace {

namespace fs = std::filesystem;

fs::path test_dir() {
    const fs::path dir = fs::temp_directory_path() / "pouchsim_cli_tests";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& content) {
    const fs::path path = test_dir() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

/// Runs the installed CLI binary; returns its exit code.
int run_cli(const std::string& args) {
    const std::string cmd = std::string(POUCHSIM_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

const char* kMuscleConfig = R"({
    "scenario": {"kind": "muscle"},
    "schedule": {"segments": [
        {"duration_s": 1.0, "current_a": 1.5},
        {"duration_s": 1.0, "current_a": -1.5}
    ]},
    "sim": {"dt_s": 0.01, "t_end_s": 2.0, "sample_every": 10}
})";

}  // namespace

TEST_CASE("design report carries the derived fill quantities", "[cli]") {
    ScenarioConfig cfg;  // defaults
    const std::string report = design_report(cfg);
    CHECK_THAT(report, ContainsSubstring("fluid:"));
    CHECK_THAT(report, ContainsSubstring("Novec 7000"));
    CHECK_THAT(report, ContainsSubstring("design_temperature_k:"));
    CHECK_THAT(report, ContainsSubstring("307.15"));
    CHECK_THAT(report, ContainsSubstring("91554.2788"));       // vapor pressure
    CHECK_THAT(report, ContainsSubstring("309.869665"));       // boiling point
    CHECK_THAT(report, ContainsSubstring("104.418095"));       // microlitres of charge
    CHECK_THAT(report, ContainsSubstring("0.000146185333"));   // fill mass
    CHECK_THAT(report, ContainsSubstring("channel_share_percent:"));
    // byte-stable
    CHECK(report == design_report(cfg));
}

TEST_CASE("simulate_to_csv writes a reproducible trace", "[cli]") {
    const ScenarioConfig cfg = parse_config(kMuscleConfig);
    const fs::path out_a = test_dir() / "trace_a.csv";
    const fs::path out_b = test_dir() / "trace_b.csv";
    const TimeSeries trace = simulate_to_csv(cfg, out_a.string());
    (void)simulate_to_csv(cfg, out_b.string());

    REQUIRE(trace.samples.size() == 21);
    const std::string text_a = pouchsim::testing::slurp_file(out_a.string());
    const std::string text_b = pouchsim::testing::slurp_file(out_b.string());
    CHECK(text_a == text_b);
    CHECK(text_a.rfind(timeseries_csv_header, 0) == 0);
    CHECK(text_a.find('\r') == std::string::npos);

    CHECK_THROWS_AS(simulate_to_csv(cfg, "/nonexistent/dir/trace.csv"), io_error);
}

TEST_CASE("apply_config_value rewrites dotted paths", "[cli]") {
    nlohmann::json doc = nlohmann::json::parse(kMuscleConfig);

    SECTION("plain object path") {
        doc["thermal"] = {{"convection_w_per_k", 0.1}};
        apply_config_value(doc, "thermal.convection_w_per_k", 0.25);
        CHECK(doc["thermal"]["convection_w_per_k"].get<double>() == 0.25);
    }

    SECTION("array index path") {
        apply_config_value(doc, "schedule.segments.1.current_a", -2.0);
        CHECK(doc["schedule"]["segments"][1]["current_a"].get<double>() == -2.0);
        CHECK(doc["schedule"]["segments"][0]["current_a"].get<double>() == 1.5);
    }

    SECTION("schedule.current broadcast alias") {
        apply_config_value(doc, "schedule.current", 0.7);
        for (const auto& seg : doc["schedule"]["segments"]) {
            CHECK(seg["current_a"].get<double>() == 0.7);
            CHECK_FALSE(seg.contains("power_w"));
        }
    }

    SECTION("schedule.power broadcast alias replaces the drive kind") {
        apply_config_value(doc, "schedule.power", 5.0);
        for (const auto& seg : doc["schedule"]["segments"]) {
            CHECK(seg["power_w"].get<double>() == 5.0);
            CHECK_FALSE(seg.contains("current_a"));
        }
    }

    SECTION("path errors") {
        CHECK_THROWS_WITH(apply_config_value(doc, "thermal.bogus", 1.0),
                          ContainsSubstring("thermal.bogus"));
        CHECK_THROWS_WITH(apply_config_value(doc, "schedule.segments.7.current_a", 1.0),
                          ContainsSubstring("out of range"));
        CHECK_THROWS_WITH(apply_config_value(doc, "scenario.kind", 1.0),
                          ContainsSubstring("numeric"));
        CHECK_THROWS_WITH(apply_config_value(doc, "scenario.kind.deeper", 1.0),
                          ContainsSubstring("non-container"));
        nlohmann::json empty = nlohmann::json::object();
        CHECK_THROWS_WITH(apply_config_value(empty, "schedule.power", 1.0),
                          ContainsSubstring("at least one segment"));
    }
}

TEST_CASE("summarize_trace finds rise and settle instants", "[cli]") {
    TimeSeries trace;
    const double temps[] = {308.15, 320.0, 345.0, 350.0, 340.0, 312.0, 308.5, 308.2};
    for (int i = 0; i < 8; ++i) {
        Sample s;
        s.t = static_cast<double>(i);
        s.t_hot = temps[i];
        trace.samples.push_back(s);
    }
    const SweepRow row = summarize_trace(trace, 7.0, 308.15, 343.15, 1.0);
    CHECK(row.value == 7.0);
    CHECK(row.rise_time_s == 2.0);    // first sample at/above 343.15
    CHECK(row.settle_time_s == 6.0);  // first post-peak sample within 1 K of ambient

    const SweepRow never = summarize_trace(trace, 1.0, 308.15, 400.0, 0.01);
    CHECK(std::isnan(never.rise_time_s));
    CHECK(std::isnan(never.settle_time_s));
}

TEST_CASE("sweeping drive power orders the rise times", "[cli]") {
    // 40 s of drive, then free decay; the rise threshold sits 8 K above
    // ambient so every power level crosses it during the drive window
    const nlohmann::json doc = nlohmann::json::parse(R"({
        "scenario": {"kind": "muscle"},
        "schedule": {"segments": [{"duration_s": 40.0, "power_w": 1.0}]},
        "sim": {"dt_s": 0.05, "t_end_s": 1200.0, "sample_every": 10}
    })");
    const std::vector<SweepRow> rows =
        run_sweep(doc, "schedule.power", {2.5, 5.0, 7.0}, 316.15, 1.0);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].value == 2.5);
    CHECK(rows[2].value == 7.0);
    for (const SweepRow& row : rows) {
        REQUIRE_FALSE(std::isnan(row.rise_time_s));
        REQUIRE_FALSE(std::isnan(row.settle_time_s));
        REQUIRE(row.settle_time_s > row.rise_time_s);
    }
    CHECK(rows[0].rise_time_s > rows[1].rise_time_s);
    CHECK(rows[1].rise_time_s > rows[2].rise_time_s);

    std::ostringstream csv;
    write_sweep_csv(rows, csv);
    CHECK(csv.str().rfind("value,rise_time_s,settle_time_s\n", 0) == 0);
    CHECK_THAT(csv.str(), ContainsSubstring("\n2.5,"));
}

TEST_CASE("run_sweep validates inputs", "[cli]") {
    const nlohmann::json doc = nlohmann::json::parse(kMuscleConfig);
    CHECK_THROWS_AS(run_sweep(doc, "schedule.power", {}, 343.15, 1.0), config_error);
    CHECK_THROWS_AS(run_sweep(doc, "no.such.path", {1.0}, 343.15, 1.0), config_error);
    // a value that breaks validation surfaces as config_error
    CHECK_THROWS_AS(run_sweep(doc, "sim.dt_s", {1000.0}, 343.15, 1.0), config_error);
}

TEST_CASE("command-line tool maps failures to exit codes", "[cli]") {
    const fs::path good = write_file("good.json", kMuscleConfig);
    const fs::path bad_json = write_file("bad.json", "{broken");
    const fs::path bad_key =
        write_file("bad_key.json", R"({"scenario": {"kind": "muscle"}, "bogus": 1})");
    const fs::path out_csv = test_dir() / "cli_trace.csv";
    const fs::path sweep_csv = test_dir() / "cli_sweep.csv";

    SECTION("help and usage") {
        CHECK(run_cli("--help") == 0);
        CHECK(run_cli("design --help") == 0);
        CHECK(run_cli("") == 2);                  // missing subcommand
        CHECK(run_cli("frobnicate") == 2);        // unknown subcommand
        CHECK(run_cli("design") == 2);            // missing required --config
    }

    SECTION("design") {
        CHECK(run_cli("design --config " + good.string()) == 0);
        CHECK(run_cli("design --config " + bad_json.string()) == 2);
        CHECK(run_cli("design --config " + bad_key.string()) == 2);
        CHECK(run_cli("design --config /nonexistent/cfg.json") == 4);
    }

    SECTION("simulate") {
        CHECK(run_cli("simulate --config " + good.string() + " --out " + out_csv.string() +
                      " --quiet") == 0);
        REQUIRE(fs::exists(out_csv));
        const std::string text = pouchsim::testing::slurp_file(out_csv.string());
        CHECK(text.rfind(timeseries_csv_header, 0) == 0);

        // no --out and no output.path in the config
        CHECK(run_cli("simulate --config " + good.string()) == 2);
        // unstable dt override
        CHECK(run_cli("simulate --config " + good.string() + " --out " + out_csv.string() +
                      " --dt 100") == 2);
        // unwritable destination
        CHECK(run_cli("simulate --config " + good.string() +
                      " --out /nonexistent/dir/x.csv") == 4);
    }

    SECTION("sweep") {
        CHECK(run_cli("sweep --config " + good.string() +
                      " --param schedule.current --values 0.5,1.0 --t-end 1.0 --out " +
                      sweep_csv.string() + " --quiet") == 0);
        REQUIRE(fs::exists(sweep_csv));
        const std::string text = pouchsim::testing::slurp_file(sweep_csv.string());
        CHECK(text.rfind("value,rise_time_s,settle_time_s\n", 0) == 0);

        CHECK(run_cli("sweep --config " + good.string() +
                      " --param no.such.key --values 1 --out " + sweep_csv.string()) == 2);
        CHECK(run_cli("sweep --config " + good.string() +
                      " --param schedule.current --values 1,oops --out " +
                      sweep_csv.string()) == 2);
        CHECK(run_cli("sweep --config " + good.string() +
                      " --param schedule.current --values 1 --out /nonexistent/dir/s.csv") ==
              4);
    }
}
