#include <fstream>

#include <fmt/format.h>

#include "passim/error.hpp"
#include "passim/json_io.hpp"

namespace passim {

namespace {

const Json& field(const Json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw InputError(fmt::format("{}: expected an object", path));
    const auto it = j.find(key);
    if (it == j.end()) throw InputError(fmt::format("{}.{}: missing field", path, key));
    return *it;
}

double number(const Json& j, const char* key, const std::string& path) {
    const auto& v = field(j, key, path);
    if (!v.is_number()) throw InputError(fmt::format("{}.{}: expected a number", path, key));
    return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    return number(j, key, path);
}

std::string text(const Json& j, const char* key, const std::string& path) {
    const auto& v = field(j, key, path);
    if (!v.is_string()) throw InputError(fmt::format("{}.{}: expected a string", path, key));
    return v.get<std::string>();
}

const Json& array(const Json& j, const char* key, const std::string& path) {
    const auto& v = field(j, key, path);
    if (!v.is_array()) throw InputError(fmt::format("{}.{}: expected an array", path, key));
    return v;
}

const char* kind_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::Wall: return "wall";
        case SurfaceKind::Door: return "door";
        case SurfaceKind::Roof: return "roof";
        case SurfaceKind::Floor: return "floor";
        case SurfaceKind::Partition: return "partition";
    }
    return "wall";
}

SurfaceKind kind_from(const std::string& s, const std::string& path) {
    for (auto k : {SurfaceKind::Wall, SurfaceKind::Door, SurfaceKind::Roof, SurfaceKind::Floor,
                   SurfaceKind::Partition}) {
        if (s == kind_name(k)) return k;
    }
    throw InputError(fmt::format("{}: unknown surface kind '{}'", path, s));
}

const char* boundary_name(Boundary::Kind k) {
    switch (k) {
        case Boundary::Kind::Exterior: return "exterior";
        case Boundary::Kind::Zone: return "zone";
        case Boundary::Kind::Ground: return "ground";
        case Boundary::Kind::Adiabatic: return "adiabatic";
    }
    return "exterior";
}

Boundary boundary_from(const Json& j, const std::string& path) {
    const auto kind = text(j, "kind", path);
    for (auto k : {Boundary::Kind::Exterior, Boundary::Kind::Zone, Boundary::Kind::Ground,
                   Boundary::Kind::Adiabatic}) {
        if (kind == boundary_name(k)) {
            Boundary b{k, {}};
            if (k == Boundary::Kind::Zone) b.zone = text(j, "zone", path);
            return b;
        }
    }
    throw InputError(fmt::format("{}.kind: unknown boundary kind '{}'", path, kind));
}

Json to_json(const Construction& c) {
    Json layers = Json::array();
    for (const auto& l : c.layers) layers.push_back({{"material", to_json(l.material)}, {"thickness", l.thickness}});
    return {{"name", c.name},
            {"layers", layers},
            {"exterior_absorptance", c.exterior_absorptance},
            {"exterior_emissivity", c.exterior_emissivity},
            {"interior_emissivity", c.interior_emissivity}};
}

Construction construction_from(const Json& j, const std::string& path) {
    Construction c;
    c.name = j.contains("name") ? text(j, "name", path) : std::string{};
    const auto& layers = array(j, "layers", path);
    for (std::size_t i = 0; i < layers.size(); ++i) {
        const auto lp = fmt::format("{}.layers[{}]", path, i);
        c.layers.push_back(Layer{material_from_json(field(layers[i], "material", lp), lp + ".material"),
                                 number(layers[i], "thickness", lp)});
    }
    c.exterior_absorptance = number_or(j, "exterior_absorptance", c.exterior_absorptance, path);
    c.exterior_emissivity = number_or(j, "exterior_emissivity", c.exterior_emissivity, path);
    c.interior_emissivity = number_or(j, "interior_emissivity", c.interior_emissivity, path);
    return c;
}

}  // namespace

Json to_json(const Material& m) {
    Json j{{"name", m.name},
           {"conductivity", m.conductivity},
           {"density", m.density},
           {"specific_heat", m.specific_heat}};
    if (m.massless) j["massless"] = true;
    return j;
}

Material material_from_json(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return materials::by_name(j.get<std::string>());
        } catch (const InputError& e) {
            throw InputError(fmt::format("{}: {}", path, e.what()));
        }
    }
    Material m;
    m.name = j.contains("name") ? text(j, "name", path) : std::string{};
    m.conductivity = number(j, "conductivity", path);
    m.density = number(j, "density", path);
    m.specific_heat = number(j, "specific_heat", path);
    if (j.contains("massless")) {
        if (!j["massless"].is_boolean()) throw InputError(path + ".massless: expected a boolean");
        m.massless = j["massless"].get<bool>();
    }
    return m;
}

Json to_json(const BuildingModel& model) {
    Json zones = Json::array();
    for (const auto& z : model.zones) {
        Json surfaces = Json::array();
        for (const auto& s : z.surfaces) {
            Json boundary{{"kind", boundary_name(s.boundary.kind)}};
            if (s.boundary.kind == Boundary::Kind::Zone) boundary["zone"] = s.boundary.zone;
            Json glazings = Json::array();
            for (const auto& g : s.glazings) {
                glazings.push_back({{"area", g.area}, {"u_value", g.u_value}, {"shgc", g.shgc}});
            }
            surfaces.push_back({{"name", s.name},
                                {"kind", kind_name(s.kind)},
                                {"gross_area", s.gross_area},
                                {"tilt", s.tilt},
                                {"azimuth", s.azimuth},
                                {"construction", to_json(s.construction)},
                                {"boundary", boundary},
                                {"glazings", glazings}});
        }
        Json openings = Json::array();
        for (const auto& o : z.openings) {
            Json oj{{"name", o.name},
                    {"from", o.from},
                    {"to", o.to},
                    {"flow_coefficient", o.flow_coefficient},
                    {"exponent", o.exponent},
                    {"height", o.height}};
            if (o.facade_azimuth) oj["facade_azimuth"] = *o.facade_azimuth;
            openings.push_back(oj);
        }
        zones.push_back({{"name", z.name},
                         {"volume", z.volume},
                         {"floor_surface", z.floor_surface},
                         {"surfaces", surfaces},
                         {"openings", openings}});
    }
    return {{"site",
             {{"latitude", model.site.latitude},
              {"longitude", model.site.longitude},
              {"utc_offset", model.site.utc_offset},
              {"ground_albedo", model.site.ground_albedo}}},
            {"orientation", model.orientation},
            {"zones", zones}};
}

BuildingModel building_from_json(const Json& j) {
    const std::string root = "building";
    BuildingModel model;
    const auto& site = field(j, "site", root);
    model.site.latitude = number(site, "latitude", "site");
    model.site.longitude = number(site, "longitude", "site");
    model.site.utc_offset = number_or(site, "utc_offset", model.site.utc_offset, "site");
    model.site.ground_albedo = number_or(site, "ground_albedo", model.site.ground_albedo, "site");
    model.orientation = number_or(j, "orientation", 0.0, root);

    const auto& zones = array(j, "zones", root);
    for (std::size_t zi = 0; zi < zones.size(); ++zi) {
        const auto zp = fmt::format("zones[{}]", zi);
        const auto& zj = zones[zi];
        Zone zone;
        zone.name = text(zj, "name", zp);
        zone.volume = number(zj, "volume", zp);
        zone.floor_surface = text(zj, "floor_surface", zp);
        const auto& surfaces = array(zj, "surfaces", zp);
        for (std::size_t si = 0; si < surfaces.size(); ++si) {
            const auto sp = fmt::format("{}.surfaces[{}]", zp, si);
            const auto& sj = surfaces[si];
            Surface s;
            s.name = text(sj, "name", sp);
            s.kind = kind_from(text(sj, "kind", sp), sp + ".kind");
            s.gross_area = number(sj, "gross_area", sp);
            s.tilt = number(sj, "tilt", sp);
            s.azimuth = number(sj, "azimuth", sp);
            s.construction = construction_from(field(sj, "construction", sp), sp + ".construction");
            s.boundary = boundary_from(field(sj, "boundary", sp), sp + ".boundary");
            if (sj.contains("glazings")) {
                const auto& gl = array(sj, "glazings", sp);
                for (std::size_t gi = 0; gi < gl.size(); ++gi) {
                    const auto gp = fmt::format("{}.glazings[{}]", sp, gi);
                    Glazing g;
                    g.area = number(gl[gi], "area", gp);
                    g.u_value = number_or(gl[gi], "u_value", g.u_value, gp);
                    g.shgc = number_or(gl[gi], "shgc", g.shgc, gp);
                    s.glazings.push_back(g);
                }
            }
            zone.surfaces.push_back(std::move(s));
        }
        if (zj.contains("openings")) {
            const auto& openings = array(zj, "openings", zp);
            for (std::size_t oi = 0; oi < openings.size(); ++oi) {
                const auto op = fmt::format("{}.openings[{}]", zp, oi);
                const auto& oj = openings[oi];
                Opening o;
                o.name = text(oj, "name", op);
                o.from = text(oj, "from", op);
                o.to = text(oj, "to", op);
                o.flow_coefficient = number(oj, "flow_coefficient", op);
                o.exponent = number(oj, "exponent", op);
                o.height = number(oj, "height", op);
                if (oj.contains("facade_azimuth")) o.facade_azimuth = number(oj, "facade_azimuth", op);
                zone.openings.push_back(std::move(o));
            }
        }
        model.zones.push_back(std::move(zone));
    }
    return model;
}

Json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw InputError(fmt::format("cannot read '{}'", file.string()));
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(fmt::format("'{}' is not valid JSON: {}", file.string(), e.what()));
    }
}

BuildingModel load_building(const std::filesystem::path& file) {
    return building_from_json(read_json_file(file));
}

void save_building(const std::filesystem::path& file, const BuildingModel& model) {
    std::ofstream out(file);
    if (!out) throw Error(fmt::format("cannot write '{}'", file.string()));
    out << to_json(model).dump(2) << '\n';
}

}  // namespace passim
