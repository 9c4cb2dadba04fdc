#include <fmt/format.h>

#include "passim/error.hpp"
#include "passim/json_io.hpp"

namespace passim {

namespace {

template <typename T>
void read(const Json& j, const char* key, T& target) {
    const auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_number()) throw InputError(fmt::format("config.{}: expected a number", key));
    target = it->get<T>();
}

}  // namespace

void apply_config_json(const Json& j, SimConfig& c, ComfortThresholds& t) {
    if (!j.is_object()) throw InputError("config: expected an object");
    static constexpr const char* kKnown[] = {
        "dt", "max_node_thickness", "h_conv_interior", "h_conv_exterior", "h_conv_exterior_wind",
        "h_rad_linearized", "ground_temperature", "sky_temp_depression", "solar_to_floor_fraction",
        "warmup_max_days", "warmup_tol", "thresholds"};
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const char* k : kKnown) known = known || key == k;
        if (!known) throw InputError(fmt::format("config: unknown key '{}'", key));
    }
    read(j, "dt", c.dt);
    read(j, "max_node_thickness", c.max_node_thickness);
    read(j, "h_conv_interior", c.h_conv_interior);
    read(j, "h_conv_exterior", c.h_conv_exterior);
    read(j, "h_conv_exterior_wind", c.h_conv_exterior_wind);
    read(j, "h_rad_linearized", c.h_rad_linearized);
    read(j, "ground_temperature", c.ground_temperature);
    read(j, "sky_temp_depression", c.sky_temp_depression);
    read(j, "solar_to_floor_fraction", c.solar_to_floor_fraction);
    read(j, "warmup_max_days", c.warmup_max_days);
    read(j, "warmup_tol", c.warmup_tol);
    if (j.contains("thresholds")) {
        const auto& th = j["thresholds"];
        if (!th.is_object()) throw InputError("config.thresholds: expected an object");
        read(th, "night_threshold", t.night_threshold);
        read(th, "day_threshold", t.day_threshold);
    }
    check_config(c);
}

Json to_json(const SimConfig& c, const ComfortThresholds& t) {
    return {{"dt", c.dt},
            {"max_node_thickness", c.max_node_thickness},
            {"h_conv_interior", c.h_conv_interior},
            {"h_conv_exterior", c.h_conv_exterior},
            {"h_conv_exterior_wind", c.h_conv_exterior_wind},
            {"h_rad_linearized", c.h_rad_linearized},
            {"ground_temperature", c.ground_temperature},
            {"sky_temp_depression", c.sky_temp_depression},
            {"solar_to_floor_fraction", c.solar_to_floor_fraction},
            {"warmup_max_days", c.warmup_max_days},
            {"warmup_tol", c.warmup_tol},
            {"thresholds", {{"night_threshold", t.night_threshold}, {"day_threshold", t.day_threshold}}}};
}

}  // namespace passim
