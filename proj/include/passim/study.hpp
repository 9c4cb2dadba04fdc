#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "passim/building.hpp"
#include "passim/comfort.hpp"
#include "passim/solver.hpp"
#include "passim/weather.hpp"

namespace passim {

struct Rotate {
    double degrees = 0.0;
};

struct SetGlazing {
    GlazingFractions fractions;
};

struct AddRoofInsulation {
    Material material;
    double thickness = 0.0;
};

struct AddWallInsulation {
    Material material;
    double thickness = 0.0;
    WallFace face = WallFace::Interior;
};

struct SetFloorAbsorptance {
    double alpha = 0.75;
};

using Transformation =
    std::variant<Rotate, SetGlazing, AddRoofInsulation, AddWallInsulation, SetFloorAbsorptance>;

BuildingModel apply(const BuildingModel& model, const Transformation& t);

/// Marks a scenario as one point of a thickness sweep, for charting.
struct SweepPoint {
    std::string group;  ///< e.g. "roof_straw"
    double value = 0.0;
};

struct Scenario {
    std::string name;
    std::vector<Transformation> transformations;
    std::optional<SweepPoint> sweep;
};

BuildingModel apply(const BuildingModel& model, const Scenario& scenario);

/// Glazing sets 0..6, orientations x set 6, floor absorptance on the south-facing
/// set-6 house, straw roof and torchi wall sweeps (0..25 cm), and the combined package.
std::vector<Scenario> builtin_scenarios();

struct ZoneDelta {
    std::string zone;
    double d_day = 0.0;    ///< scenario minus baseline day Tres, K
    double d_night = 0.0;  ///< scenario minus baseline night Tres, K
};

struct ScenarioResult {
    Scenario scenario;
    bool failed = false;
    std::string error;
    ComfortSummary comfort;
    std::vector<ZoneDelta> deltas;
    double max_mass_residual = 0.0;
};

struct StudyReport {
    ComfortSummary baseline;
    std::vector<ScenarioResult> scenarios;  ///< in the order given to run_study

    const ScenarioResult& scenario(const std::string& name) const;  ///< throws InputError if absent
    bool any_failed() const;
};

struct StudyOptions {
    SimConfig config;
    ComfortThresholds thresholds;
    std::size_t threads = 1;  ///< 0 means hardware concurrency
};

/// Simulates the baseline and every scenario independently. Scenario names
/// must be unique (InputError otherwise); a scenario that throws is marked
/// failed and the others proceed. The baseline must simulate.
StudyReport run_study(const BuildingModel& base, const std::vector<Scenario>& scenarios,
                      const WeatherSeries& weather, const StudyOptions& options);

enum class ReportFormat { Csv, Svg };

/// Csv writes `study.csv`; Svg writes `roof_straw.svg`, `wall_torchi.svg`
/// (when those sweeps are present) and `discomfort.svg` into `directory`,
/// creating it if needed. Returns the written paths.
std::vector<std::filesystem::path> emit_report(const StudyReport& report, ReportFormat format,
                                               const std::filesystem::path& directory);

void write_study_csv(std::ostream& out, const StudyReport& report);

}  // namespace passim
