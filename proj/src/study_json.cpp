#include <fmt/format.h>

#include "passim/error.hpp"
#include "passim/json_io.hpp"

namespace passim {

namespace {

double number(const Json& j, const char* key, const std::string& path) {
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(fmt::format("{}.{}: missing field", path, key));
    if (!it->is_number()) throw InputError(fmt::format("{}.{}: expected a number", path, key));
    return it->get<double>();
}

const char* cardinal_name(Cardinal c) {
    switch (c) {
        case Cardinal::North: return "N";
        case Cardinal::East: return "E";
        case Cardinal::South: return "S";
        case Cardinal::West: return "W";
    }
    return "N";
}

Cardinal cardinal_from(const std::string& s, const std::string& path) {
    for (auto c : {Cardinal::North, Cardinal::East, Cardinal::South, Cardinal::West}) {
        if (s == cardinal_name(c)) return c;
    }
    throw InputError(fmt::format("{}: unknown direction '{}' (expected N, E, S or W)", path, s));
}

Transformation transformation_from(const Json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("op") || !j["op"].is_string()) {
        throw InputError(fmt::format("{}: expected an object with a string 'op'", path));
    }
    const auto op = j["op"].get<std::string>();
    if (op == "rotate") return Rotate{number(j, "degrees", path)};
    if (op == "set_glazing_fractions") {
        const auto it = j.find("fractions");
        if (it == j.end() || !it->is_object()) throw InputError(path + ".fractions: expected an object");
        SetGlazing g;
        for (const auto& [key, value] : it->items()) {
            const auto fp = fmt::format("{}.fractions.{}", path, key);
            if (!value.is_number()) throw InputError(fp + ": expected a number");
            g.fractions[cardinal_from(key, fp)] = value.get<double>();
        }
        return g;
    }
    if (op == "add_roof_insulation" || op == "add_wall_insulation") {
        if (!j.contains("material")) throw InputError(path + ".material: missing field");
        const auto material = material_from_json(j["material"], path + ".material");
        const double thickness = number(j, "thickness", path);
        if (op == "add_roof_insulation") return AddRoofInsulation{material, thickness};
        WallFace face = WallFace::Interior;
        if (j.contains("face")) {
            const auto f = j["face"].is_string() ? j["face"].get<std::string>() : std::string{};
            if (f == "interior") face = WallFace::Interior;
            else if (f == "exterior") face = WallFace::Exterior;
            else throw InputError(path + ".face: expected \"interior\" or \"exterior\"");
        }
        return AddWallInsulation{material, thickness, face};
    }
    if (op == "set_floor_absorptance") return SetFloorAbsorptance{number(j, "alpha", path)};
    throw InputError(fmt::format("{}.op: unknown transformation '{}'", path, op));
}

Scenario scenario_from(const Json& j, const std::string& path) {
    if (!j.is_object()) throw InputError(path + ": expected an object");
    if (!j.contains("name") || !j["name"].is_string()) throw InputError(path + ".name: expected a string");
    Scenario s;
    s.name = j["name"].get<std::string>();
    if (j.contains("transformations")) {
        const auto& ts = j["transformations"];
        if (!ts.is_array()) throw InputError(path + ".transformations: expected an array");
        for (std::size_t i = 0; i < ts.size(); ++i) {
            s.transformations.push_back(transformation_from(ts[i], fmt::format("{}.transformations[{}]", path, i)));
        }
    }
    if (j.contains("sweep")) {
        const auto& sw = j["sweep"];
        if (!sw.is_object() || !sw.contains("group") || !sw["group"].is_string()) {
            throw InputError(path + ".sweep: expected {\"group\": string, \"value\": number}");
        }
        s.sweep = SweepPoint{sw["group"].get<std::string>(), number(sw, "value", path + ".sweep")};
    }
    return s;
}

std::vector<Scenario> scenario_list(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path + ": expected an array");
    std::vector<Scenario> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(scenario_from(j[i], fmt::format("{}[{}]", path, i)));
    return out;
}

}  // namespace

std::vector<Scenario> scenarios_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "builtin") return builtin_scenarios();
        throw InputError(fmt::format("matrix: unknown shorthand '{}'", j.get<std::string>()));
    }
    if (j.is_array()) return scenario_list(j, "scenarios");
    if (!j.is_object()) throw InputError("matrix: expected \"builtin\", an array or an object");
    for (const auto& [key, value] : j.items()) {
        if (key != "builtin" && key != "scenarios") throw InputError(fmt::format("matrix: unknown key '{}'", key));
    }
    std::vector<Scenario> out;
    if (j.contains("builtin")) {
        if (!j["builtin"].is_boolean()) throw InputError("matrix.builtin: expected a boolean");
        if (j["builtin"].get<bool>()) out = builtin_scenarios();
    }
    if (j.contains("scenarios")) {
        auto extra = scenario_list(j["scenarios"], "scenarios");
        out.insert(out.end(), extra.begin(), extra.end());
    }
    return out;
}

Json to_json(const Scenario& s) {
    Json ts = Json::array();
    for (const auto& t : s.transformations) {
        if (const auto* x = std::get_if<Rotate>(&t)) {
            ts.push_back({{"op", "rotate"}, {"degrees", x->degrees}});
        } else if (const auto* x = std::get_if<SetGlazing>(&t)) {
            Json f = Json::object();
            for (const auto& [c, v] : x->fractions) f[cardinal_name(c)] = v;
            ts.push_back({{"op", "set_glazing_fractions"}, {"fractions", f}});
        } else if (const auto* x = std::get_if<AddRoofInsulation>(&t)) {
            ts.push_back({{"op", "add_roof_insulation"}, {"material", to_json(x->material)}, {"thickness", x->thickness}});
        } else if (const auto* x = std::get_if<AddWallInsulation>(&t)) {
            ts.push_back({{"op", "add_wall_insulation"},
                          {"material", to_json(x->material)},
                          {"thickness", x->thickness},
                          {"face", x->face == WallFace::Interior ? "interior" : "exterior"}});
        } else if (const auto* x = std::get_if<SetFloorAbsorptance>(&t)) {
            ts.push_back({{"op", "set_floor_absorptance"}, {"alpha", x->alpha}});
        }
    }
    Json j{{"name", s.name}, {"transformations", ts}};
    if (s.sweep) j["sweep"] = {{"group", s.sweep->group}, {"value", s.sweep->value}};
    return j;
}

}  // namespace passim
