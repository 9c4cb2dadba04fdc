#include "passim/building.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <set>

#include <fmt/format.h>

#include "passim/error.hpp"

namespace passim {

double Construction::resistance() const {
    double r = 0.0;
    for (const auto& layer : layers) r += layer.resistance();
    return r;
}

double Surface::glazing_area() const {
    double a = 0.0;
    for (const auto& g : glazings) a += g.area;
    return a;
}

const Surface* Zone::find_surface(const std::string& surface_name) const {
    for (const auto& s : surfaces) {
        if (s.name == surface_name) return &s;
    }
    return nullptr;
}

const Zone* BuildingModel::find_zone(const std::string& zone_name) const {
    for (const auto& z : zones) {
        if (z.name == zone_name) return &z;
    }
    return nullptr;
}

namespace {

bool is_fraction(double v) { return v >= 0.0 && v <= 1.0; }

void validate_construction(const Construction& c, const std::string& path,
                           std::vector<Violation>& out) {
    if (c.layers.empty()) out.push_back({path + ".layers", "construction has no layers"});
    for (std::size_t i = 0; i < c.layers.size(); ++i) {
        const auto& layer = c.layers[i];
        const auto lp = fmt::format("{}.layers[{}]", path, i);
        if (!(layer.thickness > 0.0)) {
            out.push_back({lp + ".thickness", fmt::format("thickness {} must be > 0", layer.thickness)});
        }
        const auto& m = layer.material;
        if (!(m.conductivity > 0.0)) {
            out.push_back({lp + ".material.conductivity",
                           fmt::format("conductivity {} must be > 0", m.conductivity)});
        }
        if (!(m.density > 0.0)) {
            out.push_back({lp + ".material.density", fmt::format("density {} must be > 0", m.density)});
        }
        if (!(m.specific_heat > 0.0)) {
            out.push_back({lp + ".material.specific_heat",
                           fmt::format("specific heat {} must be > 0", m.specific_heat)});
        }
    }
    if (!is_fraction(c.exterior_absorptance)) {
        out.push_back({path + ".exterior_absorptance", "must lie in [0, 1]"});
    }
    if (!is_fraction(c.exterior_emissivity)) {
        out.push_back({path + ".exterior_emissivity", "must lie in [0, 1]"});
    }
    if (!is_fraction(c.interior_emissivity)) {
        out.push_back({path + ".interior_emissivity", "must lie in [0, 1]"});
    }
}

double wrap_degrees(double deg) {
    double r = std::fmod(deg, 360.0);
    if (r < 0.0) r += 360.0;
    if (r >= 360.0) r -= 360.0;
    return r;
}

void check_insulation_args(const Material& material, double thickness) {
    if (!(thickness >= 0.0)) {
        throw InputError(fmt::format("insulation thickness {} must be >= 0", thickness));
    }
    if (!(material.conductivity > 0.0 && material.density > 0.0 && material.specific_heat > 0.0)) {
        throw InputError(fmt::format("insulation material '{}' needs positive properties", material.name));
    }
}

}  // namespace

std::vector<Violation> validate(const BuildingModel& model) {
    std::vector<Violation> out;
    const auto& site = model.site;
    if (!(std::abs(site.latitude) <= 90.0)) out.push_back({"site.latitude", "outside [-90, 90]"});
    if (!(std::abs(site.longitude) <= 180.0)) out.push_back({"site.longitude", "outside [-180, 180]"});
    if (!is_fraction(site.ground_albedo)) out.push_back({"site.ground_albedo", "outside [0, 1]"});
    if (model.zones.empty()) out.push_back({"zones", "model has no zones"});

    std::set<std::string> zone_names;
    for (std::size_t zi = 0; zi < model.zones.size(); ++zi) {
        if (!zone_names.insert(model.zones[zi].name).second) {
            out.push_back({fmt::format("zones[{}].name", zi),
                           fmt::format("duplicate zone name '{}'", model.zones[zi].name)});
        }
        if (model.zones[zi].name == kExteriorNode) {
            out.push_back({fmt::format("zones[{}].name", zi), "zone name is reserved"});
        }
    }
    auto is_node = [&](const std::string& n) { return n == kExteriorNode || zone_names.count(n) > 0; };

    std::set<std::string> surface_names;
    for (std::size_t zi = 0; zi < model.zones.size(); ++zi) {
        const auto& zone = model.zones[zi];
        const auto zp = fmt::format("zones[{}]", zi);
        if (!(zone.volume > 0.0)) out.push_back({zp + ".volume", "volume must be > 0"});

        int ground_count = 0;
        for (std::size_t si = 0; si < zone.surfaces.size(); ++si) {
            const auto& s = zone.surfaces[si];
            const auto sp = fmt::format("{}.surfaces[{}]", zp, si);
            if (!surface_names.insert(s.name).second) {
                out.push_back({sp + ".name", fmt::format("duplicate surface name '{}'", s.name)});
            }
            validate_construction(s.construction, sp + ".construction", out);
            if (!(s.gross_area > 0.0)) out.push_back({sp + ".gross_area", "gross area must be > 0"});
            if (!(s.tilt >= 0.0 && s.tilt <= 180.0)) out.push_back({sp + ".tilt", "tilt outside [0, 180]"});
            for (std::size_t gi = 0; gi < s.glazings.size(); ++gi) {
                const auto& g = s.glazings[gi];
                const auto gp = fmt::format("{}.glazings[{}]", sp, gi);
                if (!(g.area > 0.0)) out.push_back({gp + ".area", "glazing area must be > 0"});
                if (!(g.u_value > 0.0)) out.push_back({gp + ".u_value", "u_value must be > 0"});
                if (!(g.shgc > 0.0 && g.shgc <= 1.0)) out.push_back({gp + ".shgc", "shgc outside (0, 1]"});
            }
            if (!(s.gross_area > s.glazing_area())) {
                out.push_back({sp + ".glazings",
                               fmt::format("surface '{}': glazing area {} does not fit gross area {}",
                                           s.name, s.glazing_area(), s.gross_area)});
            }
            switch (s.boundary.kind) {
                case Boundary::Kind::Ground: ++ground_count; break;
                case Boundary::Kind::Zone:
                    if (s.boundary.zone == zone.name) {
                        out.push_back({sp + ".boundary", "partition refers to its own zone"});
                    } else if (!zone_names.count(s.boundary.zone)) {
                        out.push_back({sp + ".boundary",
                                       fmt::format("unknown neighbouring zone '{}'", s.boundary.zone)});
                    }
                    break;
                default: break;
            }
            if (s.boundary.kind != Boundary::Kind::Exterior && !s.glazings.empty()) {
                out.push_back({sp + ".glazings", "only exterior surfaces may carry glazing"});
            }
        }
        const Surface* floor = zone.find_surface(zone.floor_surface);
        if (ground_count != 1 || floor == nullptr || floor->boundary.kind != Boundary::Kind::Ground) {
            out.push_back({zp + ".floor_surface",
                           fmt::format("zone '{}' needs exactly one floor surface on the ground", zone.name)});
        }

        for (std::size_t oi = 0; oi < zone.openings.size(); ++oi) {
            const auto& o = zone.openings[oi];
            const auto op = fmt::format("{}.openings[{}]", zp, oi);
            if (!(o.flow_coefficient > 0.0)) out.push_back({op + ".flow_coefficient", "must be > 0"});
            if (!(o.exponent >= 0.5 && o.exponent <= 1.0)) {
                out.push_back({op + ".exponent", "exponent outside [0.5, 1.0]"});
            }
            if (!std::isfinite(o.height)) out.push_back({op + ".height", "height must be finite"});
            if (!is_node(o.from)) out.push_back({op + ".from", fmt::format("unknown node '{}'", o.from)});
            if (!is_node(o.to)) out.push_back({op + ".to", fmt::format("unknown node '{}'", o.to)});
            if (o.from == o.to) out.push_back({op, "opening connects a node to itself"});
            if (o.from != zone.name && o.to != zone.name) {
                out.push_back({op, fmt::format("opening does not touch its zone '{}'", zone.name)});
            }
        }
    }

    // Every zone must reach the exterior through openings.
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& zone : model.zones) {
        for (const auto& o : zone.openings) {
            adjacency[o.from].push_back(o.to);
            adjacency[o.to].push_back(o.from);
        }
    }
    std::set<std::string> reached{kExteriorNode};
    std::queue<std::string> frontier;
    frontier.push(kExteriorNode);
    while (!frontier.empty()) {
        const auto node = frontier.front();
        frontier.pop();
        for (const auto& next : adjacency[node]) {
            if (reached.insert(next).second) frontier.push(next);
        }
    }
    for (std::size_t zi = 0; zi < model.zones.size(); ++zi) {
        if (!reached.count(model.zones[zi].name)) {
            out.push_back({fmt::format("zones[{}].openings", zi),
                           fmt::format("zone '{}' has no opening path to the exterior",
                                       model.zones[zi].name)});
        }
    }
    return out;
}

Cardinal nearest_cardinal(double azimuth) {
    const double a = wrap_degrees(azimuth);
    const int idx = static_cast<int>(std::floor((a + 45.0) / 90.0)) % 4;
    return static_cast<Cardinal>(idx);
}

BuildingModel rotate(const BuildingModel& model, double degrees) {
    BuildingModel out = model;
    if (degrees == 0.0) return out;
    out.orientation = wrap_degrees(model.orientation + degrees);
    for (auto& zone : out.zones) {
        for (auto& s : zone.surfaces) s.azimuth = wrap_degrees(s.azimuth + degrees);
        for (auto& o : zone.openings) {
            if (o.facade_azimuth) o.facade_azimuth = wrap_degrees(*o.facade_azimuth + degrees);
        }
    }
    return out;
}

BuildingModel set_glazing_fractions(const BuildingModel& model, const GlazingFractions& fractions) {
    for (const auto& [dir, f] : fractions) {
        if (!(f >= 0.0 && f <= 0.9)) {
            throw InputError(fmt::format("glazing fraction {} outside [0, 0.9]", f));
        }
    }
    BuildingModel out = model;
    for (auto& zone : out.zones) {
        for (auto& s : zone.surfaces) {
            if (s.kind != SurfaceKind::Wall || s.boundary.kind != Boundary::Kind::Exterior) continue;
            const auto it = fractions.find(nearest_cardinal(s.azimuth - model.orientation));
            if (it == fractions.end()) continue;
            const Glazing prototype = s.glazings.empty() ? Glazing{} : s.glazings.front();
            s.glazings.clear();
            if (it->second > 0.0) {
                s.glazings.push_back(Glazing{it->second * s.gross_area, prototype.u_value, prototype.shgc});
            }
        }
    }
    return out;
}

BuildingModel add_roof_insulation(const BuildingModel& model, const Material& material,
                                  double thickness) {
    check_insulation_args(material, thickness);
    BuildingModel out = model;
    if (thickness == 0.0) return out;
    for (auto& zone : out.zones) {
        for (auto& s : zone.surfaces) {
            if (s.kind == SurfaceKind::Roof) s.construction.layers.push_back(Layer{material, thickness});
        }
    }
    return out;
}

BuildingModel add_wall_insulation(const BuildingModel& model, const Material& material,
                                  double thickness, WallFace face) {
    check_insulation_args(material, thickness);
    BuildingModel out = model;
    if (thickness == 0.0) return out;
    for (auto& zone : out.zones) {
        for (auto& s : zone.surfaces) {
            if (s.kind != SurfaceKind::Wall || s.boundary.kind != Boundary::Kind::Exterior) continue;
            auto& layers = s.construction.layers;
            if (face == WallFace::Interior) {
                layers.push_back(Layer{material, thickness});
            } else {
                layers.insert(layers.begin(), Layer{material, thickness});
            }
        }
    }
    return out;
}

BuildingModel set_floor_absorptance(const BuildingModel& model, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw InputError(fmt::format("floor absorptance {} outside (0, 1]", alpha));
    }
    BuildingModel out = model;
    for (auto& zone : out.zones) {
        for (auto& s : zone.surfaces) {
            if (s.boundary.kind == Boundary::Kind::Ground) s.construction.exterior_absorptance = alpha;
        }
    }
    return out;
}

namespace materials {

// Conductivities of brick, pine, tile, air gap and plaster are the tabulated
// values of the typical house; volumetric properties are literature-typical.
Material unburned_brick() { return {"unburned_brick", 0.69, 1700.0, 840.0}; }
Material pine() { return {"pine", 0.16, 500.0, 1600.0}; }
Material tile() { return {"tile", 0.60, 1900.0, 800.0}; }
Material roof_air_gap() { return {"roof_air_gap", 0.85, 1.2, 1005.0, true}; }
Material plaster() { return {"plaster", 0.29, 800.0, 840.0}; }
Material straw() { return {"straw", 0.07, 100.0, 1400.0}; }
Material torchi() { return {"torchi", 0.25, 1200.0, 900.0}; }
Material cement_screed() { return {"cement_screed", 1.15, 2000.0, 880.0}; }
Material compacted_earth() { return {"compacted_earth", 1.0, 1700.0, 1000.0}; }

Material by_name(const std::string& name) {
    for (auto make : {unburned_brick, pine, tile, roof_air_gap, plaster, straw, torchi,
                      cement_screed, compacted_earth}) {
        Material m = make();
        if (m.name == name) return m;
    }
    throw InputError(fmt::format("unknown material '{}'", name));
}

}  // namespace materials

}  // namespace passim
