#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "passim/building.hpp"
#include "passim/comfort.hpp"
#include "passim/solver.hpp"
#include "passim/study.hpp"

namespace passim {

using Json = nlohmann::ordered_json;

Json to_json(const Material& material);
Json to_json(const BuildingModel& model);

/// Materials are either a library name ("straw") or a full object.
Material material_from_json(const Json& j, const std::string& path = "material");

/// Reads the building document. Structural problems (missing keys, wrong
/// types, unknown enum names) throw InputError naming the field path; value
/// ranges are left to validate().
BuildingModel building_from_json(const Json& j);

BuildingModel load_building(const std::filesystem::path& file);
void save_building(const std::filesystem::path& file, const BuildingModel& model);

/// Simulation settings document: every SimConfig field plus an optional
/// "thresholds" object; absent keys keep the values already in `config`.
void apply_config_json(const Json& j, SimConfig& config, ComfortThresholds& thresholds);
Json to_json(const SimConfig& config, const ComfortThresholds& thresholds);

/// Study matrix: the string "builtin", an array of scenarios, or an object
/// {"builtin": bool, "scenarios": [...]} where the listed scenarios follow the
/// builtin ones. Unknown transformation names throw InputError.
std::vector<Scenario> scenarios_from_json(const Json& j);
Json to_json(const Scenario& scenario);

/// Parses a JSON file, wrapping syntax errors and unreadable files in InputError.
Json read_json_file(const std::filesystem::path& file);

}  // namespace passim
