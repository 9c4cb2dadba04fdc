// Python bindings. Models and study matrices cross the boundary as JSON text,
// weather as CSV text, results as plain dicts and lists.

#include <sstream>
#include <string>

#include <fmt/format.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "passim/comfort.hpp"
#include "passim/error.hpp"
#include "passim/json_io.hpp"
#include "passim/solver.hpp"
#include "passim/study.hpp"
#include "passim/weather.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace passim;

namespace {

Json parse_json(const std::string& text, const char* what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(fmt::format("{}: {}", what, e.what()));
    }
}

BuildingModel valid_building(const std::string& text) {
    auto model = building_from_json(parse_json(text, "building"));
    const auto violations = validate(model);
    if (!violations.empty()) {
        std::string msg = "invalid building model";
        for (const auto& v : violations) msg += fmt::format("\n  {}: {}", v.path, v.message);
        throw InputError(msg);
    }
    return model;
}

struct Settings {
    SimConfig config;
    ComfortThresholds thresholds;
};

Settings settings(const std::optional<std::string>& config) {
    Settings s;
    if (config) apply_config_json(parse_json(*config, "config"), s.config, s.thresholds);
    return s;
}

py::dict comfort_dict(const ZoneComfort& z) {
    auto opt = [](const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); };
    return py::dict("zone"_a = z.zone, "t_res_day"_a = opt(z.t_res_day), "t_res_night"_a = opt(z.t_res_night),
                    "discomfort_day_h"_a = z.discomfort_hours_day,
                    "discomfort_night_h"_a = z.discomfort_hours_night);
}

py::list comfort_list(const ComfortSummary& s) {
    py::list out;
    for (const auto& z : s.zones) out.append(comfort_dict(z));
    return out;
}

py::dict simulate_py(const std::string& building, const std::string& weather,
                     const std::optional<std::string>& config) {
    const auto model = valid_building(building);
    const auto series = parse_weather_csv(std::string_view(weather));
    const auto s = settings(config);
    ResultSeries result;
    {
        py::gil_scoped_release release;
        result = simulate(model, series, s.config);
    }
    py::list stamps;
    for (const auto& t : result.timestamps) stamps.append(t.to_string());
    py::dict zones;
    for (std::size_t z = 0; z < result.zones.size(); ++z) {
        std::vector<double> air, mrt, res, ach;
        for (const auto& row : result.hours) {
            air.push_back(row[z].t_air);
            mrt.push_back(row[z].t_mrt);
            res.push_back(row[z].t_res);
            ach.push_back(row[z].ach);
        }
        zones[py::str(result.zones[z])] = py::dict("t_air"_a = air, "t_mrt"_a = mrt, "t_res"_a = res, "ach"_a = ach);
    }
    return py::dict("timestamps"_a = stamps, "zones"_a = zones,
                    "comfort"_a = comfort_list(summarize_comfort(result, s.thresholds)),
                    "max_mass_residual"_a = result.max_mass_residual);
}

py::dict study_py(const std::string& building, const std::string& weather, const std::optional<std::string>& matrix,
                  std::size_t threads, const std::optional<std::string>& config) {
    const auto model = valid_building(building);
    const auto series = parse_weather_csv(std::string_view(weather));
    const auto s = settings(config);
    const auto scenarios = matrix ? scenarios_from_json(parse_json(*matrix, "matrix")) : builtin_scenarios();
    StudyReport report;
    {
        py::gil_scoped_release release;
        report = run_study(model, scenarios, series, {s.config, s.thresholds, threads});
    }
    py::list rows;
    for (const auto& r : report.scenarios) {
        py::list deltas;
        for (const auto& d : r.deltas) deltas.append(py::dict("zone"_a = d.zone, "d_day"_a = d.d_day, "d_night"_a = d.d_night));
        rows.append(py::dict("name"_a = r.scenario.name, "failed"_a = r.failed, "error"_a = r.error,
                             "comfort"_a = r.failed ? py::list() : comfort_list(r.comfort), "deltas"_a = deltas,
                             "max_mass_residual"_a = r.max_mass_residual));
    }
    std::ostringstream csv;
    write_study_csv(csv, report);
    return py::dict("baseline"_a = comfort_list(report.baseline), "scenarios"_a = rows, "csv"_a = csv.str());
}

std::string synth_py(double t_min, double t_max, double clearness, int days, const std::string& start,
                     std::optional<std::string> building) {
    SynthParams p;
    p.t_min = t_min;
    p.t_max = t_max;
    p.clearness = clearness;
    p.days = days;
    p.start = LocalDateTime::parse(start);
    if (t_max < t_min) throw InputError("t_max must not be below t_min");
    const SiteInfo site = building ? building_from_json(parse_json(*building, "building")).site : SiteInfo{};
    std::ostringstream out;
    write_weather_csv(out, synth_weather(site, p));
    return out.str();
}

py::dict inspect_py(const std::string& weather, int window_days) {
    const auto series = parse_weather_csv(std::string_view(weather));
    const auto stats = weather_stats(series);
    py::dict out("records"_a = series.records.size(), "first"_a = series.records.front().timestamp.to_string(),
                 "last"_a = series.records.back().timestamp.to_string(), "dry_bulb_min"_a = stats.min_dry_bulb,
                 "dry_bulb_mean"_a = stats.mean_dry_bulb, "dry_bulb_max"_a = stats.max_dry_bulb,
                 "sunshine_hours"_a = stats.sunshine_hours, "cold_window"_a = py::none());
    if (series.records.size() >= std::size_t(window_days) * 24) {
        const auto seq = select_cold_sequence(series, window_days);
        out["cold_window"] = py::dict("start"_a = seq.series.records.front().timestamp.to_string(),
                                      "days"_a = seq.length_days, "mean_dry_bulb"_a = seq.score);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_passim, m) {
    m.doc() = "Multizone thermal simulation of naturally ventilated houses";

    static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
    static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
    static py::exception<ConvergenceError> convergence_error(m, "ConvergenceError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InputError& e) {
            PyErr_SetString(input_error.ptr(), e.what());
        } catch (const ConvergenceError& e) {
            PyErr_SetString(convergence_error.ptr(), e.what());
        } catch (const Error& e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    m.def("typical_house", [] { return to_json(typical_house()).dump(2); },
          "The reference house as building JSON text.");
    m.def(
        "validate",
        [](const std::string& building) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : validate(building_from_json(parse_json(building, "building")))) {
                out.emplace_back(v.path, v.message);
            }
            return out;
        },
        "building"_a, "List of (field path, message) invariant violations; empty when valid.");
    m.def("simulate", &simulate_py, "building"_a, "weather"_a, "config"_a = py::none(),
          "Simulate a building over weather CSV text; hourly series per zone and the comfort summary.");
    m.def("run_study", &study_py, "building"_a, "weather"_a, "matrix"_a = py::none(), "threads"_a = 1,
          "config"_a = py::none(), "Run a scenario matrix (the builtin one when omitted) against the baseline.");
    m.def("synth_weather", &synth_py, "t_min"_a = 5.6, "t_max"_a = 20.6, "clearness"_a = 0.7, "days"_a = 7,
          "start"_a = "2001-07-01T00:00", "building"_a = py::none(),
          "Synthetic design weather as CSV text, at the building's site when one is given.");
    m.def("inspect_weather", &inspect_py, "weather"_a, "window_days"_a = 7,
          "Summary statistics and the coldest whole-day window of weather CSV text.");
}
