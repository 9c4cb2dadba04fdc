#include "passim/study.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const GlazingFractions& glazing_set(int index) {
    using enum Cardinal;
    static const std::vector<GlazingFractions> sets = {
        {},
        {{North, 0.10}, {East, 0.10}, {South, 0.10}, {West, 0.10}},
        {{North, 0.20}, {East, 0.20}, {South, 0.20}, {West, 0.20}},
        {{North, 0.30}, {East, 0.30}, {South, 0.30}, {West, 0.30}},
        {{North, 0.30}, {East, 0.30}, {South, 0.20}, {West, 0.30}},
        {{North, 0.30}, {East, 0.30}, {South, 0.10}, {West, 0.30}},
        {{North, 0.30}, {East, 0.30}, {South, 0.10}, {West, 0.20}},
    };
    return sets.at(static_cast<std::size_t>(index));
}

constexpr double kSouthward = 180.0;
constexpr double kSweepThicknesses[] = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};

ScenarioResult evaluate(const BuildingModel& base, const Scenario& scenario, const WeatherSeries& weather,
                        const StudyOptions& options) {
    ScenarioResult r;
    r.scenario = scenario;
    try {
        const auto model = apply(base, scenario);
        const auto violations = validate(model);
        if (!violations.empty()) {
            throw InputError(fmt::format("{}: {}", violations.front().path, violations.front().message));
        }
        const auto series = simulate(model, weather, options.config);
        r.comfort = summarize_comfort(series, options.thresholds);
        r.max_mass_residual = series.max_mass_residual;
    } catch (const std::exception& e) {
        r.failed = true;
        r.error = e.what();
    }
    return r;
}

double delta(const std::optional<double>& value, const std::optional<double>& base) {
    if (!value || !base) return 0.0;
    return *value - *base;
}

}  // namespace

BuildingModel apply(const BuildingModel& model, const Transformation& t) {
    return std::visit(
        Overloaded{
            [&](const Rotate& x) { return rotate(model, x.degrees); },
            [&](const SetGlazing& x) { return set_glazing_fractions(model, x.fractions); },
            [&](const AddRoofInsulation& x) { return add_roof_insulation(model, x.material, x.thickness); },
            [&](const AddWallInsulation& x) {
                return add_wall_insulation(model, x.material, x.thickness, x.face);
            },
            [&](const SetFloorAbsorptance& x) { return set_floor_absorptance(model, x.alpha); },
        },
        t);
}

BuildingModel apply(const BuildingModel& model, const Scenario& scenario) {
    BuildingModel out = model;
    for (const auto& t : scenario.transformations) out = passim::apply(out, t);
    return out;
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;
    for (int i = 0; i <= 6; ++i) {
        Scenario s{std::to_string(i), {}, std::nullopt};
        if (i > 0) s.transformations.push_back(SetGlazing{glazing_set(i)});
        out.push_back(std::move(s));
    }
    for (int deg : {0, 90, 180, 270}) {
        out.push_back({fmt::format("orient_{:03d}_g6", deg), {Rotate{double(deg)}, SetGlazing{glazing_set(6)}},
                       std::nullopt});
    }
    for (double alpha : {0.75, 0.9}) {
        out.push_back({fmt::format("south_g6_floor_{:03d}", int(std::lround(alpha * 100))),
                       {Rotate{kSouthward}, SetGlazing{glazing_set(6)}, SetFloorAbsorptance{alpha}},
                       std::nullopt});
    }
    for (double t : kSweepThicknesses) {
        const int cm = int(std::lround(t * 100));
        out.push_back({fmt::format("roof_straw_{:02d}", cm),
                       {AddRoofInsulation{materials::straw(), t}},
                       SweepPoint{"roof_straw", t}});
    }
    for (double t : kSweepThicknesses) {
        const int cm = int(std::lround(t * 100));
        out.push_back({fmt::format("wall_torchi_{:02d}", cm),
                       {AddWallInsulation{materials::torchi(), t, WallFace::Interior}},
                       SweepPoint{"wall_torchi", t}});
    }
    out.push_back({"combined",
                   {Rotate{kSouthward}, SetGlazing{glazing_set(6)}, AddRoofInsulation{materials::straw(), 0.15},
                    AddWallInsulation{materials::torchi(), 0.15, WallFace::Interior}},
                   std::nullopt});
    return out;
}

const ScenarioResult& StudyReport::scenario(const std::string& name) const {
    for (const auto& s : scenarios) {
        if (s.scenario.name == name) return s;
    }
    throw InputError(fmt::format("no scenario named '{}'", name));
}

bool StudyReport::any_failed() const {
    for (const auto& s : scenarios) {
        if (s.failed) return true;
    }
    return false;
}

StudyReport run_study(const BuildingModel& base, const std::vector<Scenario>& scenarios,
                      const WeatherSeries& weather, const StudyOptions& options) {
    std::set<std::string> names;
    for (const auto& s : scenarios) {
        if (s.name.empty()) throw InputError("scenario name must not be empty");
        if (!names.insert(s.name).second) throw InputError(fmt::format("duplicate scenario name '{}'", s.name));
    }
    const auto violations = validate(base);
    if (!violations.empty()) {
        throw InputError(fmt::format("{}: {}", violations.front().path, violations.front().message));
    }

    StudyReport report;
    report.baseline = summarize_comfort(simulate(base, weather, options.config), options.thresholds);
    report.scenarios.resize(scenarios.size());

    std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = std::max<std::size_t>(1, std::min(threads, scenarios.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < scenarios.size(); i = next++) {
            report.scenarios[i] = evaluate(base, scenarios[i], weather, options);
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (auto& r : report.scenarios) {
        if (r.failed) continue;
        for (const auto& z : r.comfort.zones) {
            const auto& b = report.baseline.zone(z.zone);
            r.deltas.push_back({z.zone, delta(z.t_res_day, b.t_res_day), delta(z.t_res_night, b.t_res_night)});
        }
    }
    return report;
}

}  // namespace passim
