#include "cli.hpp"

#include <algorithm>
#include <numeric>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "passim/comfort.hpp"
#include "passim/error.hpp"
#include "passim/json_io.hpp"
#include "passim/solver.hpp"
#include "passim/study.hpp"
#include "passim/weather.hpp"

namespace passim::cli {

namespace fs = std::filesystem;

namespace {

WeatherSeries load_weather(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError(fmt::format("cannot read '{}'", file.string()));
    try {
        return parse_weather_csv(in);
    } catch (const InputError& e) {
        throw InputError(fmt::format("{}: {}", file.string(), e.what()));
    }
}

BuildingModel load_valid_building(const fs::path& file) {
    auto model = load_building(file);
    const auto violations = validate(model);
    if (!violations.empty()) {
        std::string msg = fmt::format("{}: invalid building model", file.string());
        for (const auto& v : violations) msg += fmt::format("\n  {}: {}", v.path, v.message);
        throw InputError(msg);
    }
    return model;
}

WeatherSeries cold_window(const WeatherSeries& series, int window_days) {
    if (window_days <= 0) return series;
    const int available = int(series.records.size() / 24);
    if (available <= window_days) return series;
    return select_cold_sequence(series, window_days).series;
}

template <typename F>
void write_to(const fs::path& file, F&& writer) {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw Error(fmt::format("cannot write '{}'", file.string()));
    writer(out);
    if (!out.flush()) throw Error(fmt::format("failed writing '{}'", file.string()));
}

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw Error(fmt::format("cannot create directory '{}'", dir.string()));
}

std::string optional_temperature(const std::optional<double>& v) {
    return v ? fmt::format("{:.2f}", *v) : std::string("NA");
}

struct Settings {
    SimConfig config;
    ComfortThresholds thresholds;
};

// Flags first, then the config file on top of them.
Settings settings(const std::optional<double>& dt, const std::string& config_file) {
    Settings s;
    if (dt) s.config.dt = *dt;
    if (!config_file.empty()) apply_config_json(read_json_file(config_file), s.config, s.thresholds);
    check_config(s.config);
    return s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Passive-design thermal simulation of multizone dwellings", "passim"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "passim 0.1.0");

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "Check a building model file");
    std::string validate_file;
    validate_cmd->add_option("--building,building", validate_file, "Building JSON file")->required();

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "Simulate a building over a weather file");
    std::string sim_building, sim_weather, sim_config, sim_out;
    std::optional<double> sim_dt;
    int sim_window = 0;
    simulate_cmd->add_option("--building", sim_building, "Building JSON file")->required();
    simulate_cmd->add_option("--weather", sim_weather, "Weather CSV file")->required();
    simulate_cmd->add_option("--config", sim_config, "Simulation settings JSON (overrides flags)");
    simulate_cmd->add_option("--out", sim_out, "Output directory for results.csv and comfort.csv")->required();
    simulate_cmd->add_option("--dt", sim_dt, "Time step in seconds")->check(CLI::PositiveNumber);
    simulate_cmd->add_option("--window-days", sim_window, "Simulate only the coldest window of this many days")
        ->check(CLI::NonNegativeNumber);

    // study
    auto* study_cmd = app.add_subcommand("study", "Run a parametric study against the baseline");
    std::string st_building, st_weather, st_matrix = "builtin", st_config, st_out;
    std::size_t st_threads = 1;
    int st_window = 0;
    std::optional<double> st_dt;
    study_cmd->add_option("--building", st_building, "Building JSON file")->required();
    study_cmd->add_option("--weather", st_weather, "Weather CSV file")->required();
    study_cmd->add_option("--matrix", st_matrix, "'builtin' or a study matrix JSON file")->capture_default_str();
    study_cmd->add_option("--out-dir", st_out, "Output directory for study.csv and SVG charts")->required();
    study_cmd->add_option("--threads", st_threads, "Worker threads")->check(CLI::Range(1, 256))->capture_default_str();
    study_cmd->add_option("--config", st_config, "Simulation settings JSON (overrides flags)");
    study_cmd->add_option("--dt", st_dt, "Time step in seconds")->check(CLI::PositiveNumber);
    study_cmd->add_option("--window-days", st_window, "Simulate only the coldest window of this many days")
        ->check(CLI::NonNegativeNumber);

    // weather
    auto* weather_cmd = app.add_subcommand("weather", "Inspect or synthesise weather files");
    weather_cmd->require_subcommand(1);
    auto* inspect_cmd = weather_cmd->add_subcommand("inspect", "Print statistics and the cold window");
    std::string in_weather;
    int in_window = 7;
    inspect_cmd->add_option("--weather", in_weather, "Weather CSV file")->required();
    inspect_cmd->add_option("--window-days", in_window, "Cold window length in days")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    auto* synth_cmd = weather_cmd->add_subcommand("synth", "Write a synthetic design-week weather CSV");
    SynthParams sp;
    SiteInfo site;
    std::string synth_out, synth_start = sp.start.to_string();
    synth_cmd->add_option("--out", synth_out, "Output CSV file (stdout when omitted)");
    synth_cmd->add_option("--days", sp.days, "Number of days")->check(CLI::Range(1, 3660))->capture_default_str();
    synth_cmd->add_option("--t-min", sp.t_min, "Daily minimum dry-bulb, degC")->capture_default_str();
    synth_cmd->add_option("--t-max", sp.t_max, "Daily maximum dry-bulb, degC")->capture_default_str();
    synth_cmd->add_option("--clearness", sp.clearness, "Clearness factor 0..1")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    synth_cmd->add_option("--start", synth_start, "First timestamp, YYYY-MM-DDTHH:00")->capture_default_str();
    synth_cmd->add_option("--rh", sp.relative_humidity, "Relative humidity, %")
        ->check(CLI::Range(0.0, 100.0))
        ->capture_default_str();
    synth_cmd->add_option("--wind-speed", sp.wind_speed, "Wind speed, m/s")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    synth_cmd->add_option("--wind-dir", sp.wind_direction, "Wind direction, degrees")
        ->check(CLI::Range(0.0, 360.0))
        ->capture_default_str();
    synth_cmd->add_option("--lat", site.latitude, "Site latitude")->check(CLI::Range(-90.0, 90.0))->capture_default_str();
    synth_cmd->add_option("--lon", site.longitude, "Site longitude")
        ->check(CLI::Range(-180.0, 180.0))
        ->capture_default_str();
    synth_cmd->add_option("--utc", site.utc_offset, "UTC offset, hours")->check(CLI::Range(-14.0, 14.0))->capture_default_str();
    synth_cmd->add_option("--albedo", site.ground_albedo, "Ground albedo")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (validate_cmd->parsed()) {
            const auto model = load_building(validate_file);
            const auto violations = validate(model);
            for (const auto& v : violations) fmt::print(err, "{}: {}\n", v.path, v.message);
            if (!violations.empty()) return kInput;
            fmt::print(out, "ok: {} zones, {} surfaces\n", model.zones.size(),
                       std::accumulate(model.zones.begin(), model.zones.end(), std::size_t{0},
                                       [](std::size_t n, const Zone& z) { return n + z.surfaces.size(); }));
            return kOk;
        }

        if (simulate_cmd->parsed()) {
            const auto s = settings(sim_dt, sim_config);
            const auto model = load_valid_building(sim_building);
            const auto weather = cold_window(load_weather(sim_weather), sim_window);
            const auto series = simulate(model, weather, s.config);
            const auto comfort = summarize_comfort(series, s.thresholds);
            ensure_directory(sim_out);
            write_to(fs::path(sim_out) / "results.csv", [&](std::ostream& o) { write_results_csv(o, series); });
            write_to(fs::path(sim_out) / "comfort.csv", [&](std::ostream& o) { write_comfort_csv(o, comfort); });
            fmt::print(out, "{:<14} {:>10} {:>12} {:>14} {:>16}\n", "zone", "t_res_day", "t_res_night",
                       "discomfort_day", "discomfort_night");
            for (const auto& z : comfort.zones) {
                fmt::print(out, "{:<14} {:>10} {:>12} {:>14} {:>16}\n", z.zone, optional_temperature(z.t_res_day),
                           optional_temperature(z.t_res_night), z.discomfort_hours_day, z.discomfort_hours_night);
            }
            fmt::print(out, "max airflow mass residual {:.3g} kg/s\n", series.max_mass_residual);
            return kOk;
        }

        if (study_cmd->parsed()) {
            const auto s = settings(st_dt, st_config);
            const auto model = load_valid_building(st_building);
            const auto weather = cold_window(load_weather(st_weather), st_window);
            const auto scenarios =
                st_matrix == "builtin" ? builtin_scenarios() : scenarios_from_json(read_json_file(st_matrix));
            const auto report = run_study(model, scenarios, weather, {s.config, s.thresholds, st_threads});
            auto files = emit_report(report, ReportFormat::Csv, st_out);
            const auto svgs = emit_report(report, ReportFormat::Svg, st_out);
            files.insert(files.end(), svgs.begin(), svgs.end());
            for (const auto& f : files) fmt::print(out, "wrote {}\n", f.string());
            int failed = 0;
            for (const auto& r : report.scenarios) {
                if (!r.failed) continue;
                ++failed;
                fmt::print(err, "scenario {} failed: {}\n", r.scenario.name, r.error);
            }
            fmt::print(out, "{} scenarios, {} failed\n", report.scenarios.size(), failed);
            return failed == 0 ? kOk : kRuntime;
        }

        if (inspect_cmd->parsed()) {
            const auto series = load_weather(in_weather);
            const auto stats = weather_stats(series);
            fmt::print(out, "records        {}\n", series.records.size());
            fmt::print(out, "first          {}\n", series.records.front().timestamp.to_string());
            fmt::print(out, "last           {}\n", series.records.back().timestamp.to_string());
            fmt::print(out, "dry_bulb_min   {:.2f}\n", stats.min_dry_bulb);
            fmt::print(out, "dry_bulb_mean  {:.2f}\n", stats.mean_dry_bulb);
            fmt::print(out, "dry_bulb_max   {:.2f}\n", stats.max_dry_bulb);
            fmt::print(out, "sunshine_hours {} (GHI > {:g} W/m2)\n", stats.sunshine_hours, kSunshineThreshold);
            if (series.records.size() >= std::size_t(in_window) * 24) {
                const auto seq = select_cold_sequence(series, in_window);
                fmt::print(out, "cold_window    {} + {} days (mean {:.2f} degC)\n",
                           seq.series.records.front().timestamp.to_string(), seq.length_days, seq.score);
            } else {
                fmt::print(out, "cold_window    none (fewer than {} days)\n", in_window);
            }
            return kOk;
        }

        if (synth_cmd->parsed()) {
            try {
                sp.start = LocalDateTime::parse(synth_start);
            } catch (const InputError& e) {
                fmt::print(err, "--start: {}\n", e.what());
                return kUsage;
            }
            if (sp.t_max < sp.t_min) {
                fmt::print(err, "--t-max must not be below --t-min\n");
                return kUsage;
            }
            const auto series = synth_weather(site, sp);
            if (synth_out.empty()) {
                write_weather_csv(out, series);
            } else {
                write_to(synth_out, [&](std::ostream& o) { write_weather_csv(o, series); });
                fmt::print(out, "wrote {} ({} hours)\n", synth_out, series.records.size());
            }
            return kOk;
        }
    } catch (const InputError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kInput;
    } catch (const ConvergenceError& e) {
        fmt::print(err, "error: {}\n", e.what());
        if (!e.residuals().empty()) {
            fmt::print(err, "residuals:");
            for (double r : e.residuals()) fmt::print(err, " {:.3e}", r);
            fmt::print(err, "\n");
        }
        return kRuntime;
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kRuntime;
    }
    return kUsage;
}

}  // namespace passim::cli
