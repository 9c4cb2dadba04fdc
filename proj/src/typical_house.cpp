#include <cmath>
#include <numbers>

#include "passim/building.hpp"

namespace passim {

// Reconstructed plan (x east, y north, metres), ceiling height 2.6 m.
//
// Fixed by the survey data: bedroom 1 east facade 7.308 m2 and south facade
// 12.58 m2 with 1.26 m2 glazing, bedroom 2 south facade 12.58 m2 with 1.26 m2
// glazing, living room west facade 10.43 m2 and north facade 19.12 m2 with
// 1.26 m2 glazing, living room facing north. With the ceiling height these
// give the room widths and depths below; kitchen, bathroom and toilet fill
// the remaining rectangle and their windows and doors are assumptions.
//
//   y=6.82 +----------------------+-----------+
//          |     living_room      |  kitchen  |
//   y=2.81 +------+---------------+--+--------+
//          |toilet|               |           |
//   y=1.60 +------+   bedroom2    | bedroom1  |
//          | bath |               |           |
//   y=0    +------+---------------+-----------+
//          x=0   2.0            6.84        11.68
//
// Partitions between rooms are half-brick. Every exterior facade carries a
// crack pair at 0.1 m and 2.0 m sized for the target air-change rate at 4 Pa;
// interior doors are single large openings.

namespace {

struct Geometry {
    double south_depth;   // bedroom1 east facade / height
    double north_depth;   // living west facade / height
    double living_width;  // living north facade / height
    double bedroom_width; // bedroom south facade / height
    double wet_width = 2.0;
    double bath_depth = 1.6;
};

Construction wall_construction(double absorptance) {
    return {"exterior_wall", {{materials::unburned_brick(), 0.22}}, absorptance, 0.9, 0.9};
}

Construction partition_construction(double thickness) {
    return {"partition", {{materials::unburned_brick(), thickness}}, 0.6, 0.9, 0.9};
}

Construction door_construction() { return {"door", {{materials::pine(), 0.035}}, 0.6, 0.9, 0.9}; }

Construction roof_construction(double absorptance) {
    return {"roof",
            {{materials::tile(), 0.015}, {materials::roof_air_gap(), 0.17}, {materials::plaster(), 0.005}},
            absorptance,
            0.9,
            0.9};
}

Construction floor_construction(double earth_depth, double absorptance) {
    return {"floor",
            {{materials::compacted_earth(), earth_depth}, {materials::cement_screed(), 0.05}},
            absorptance,
            0.9,
            0.9};
}

Surface facade(std::string name, double area, double azimuth, const Construction& c,
               double glazing = 0.0, SurfaceKind kind = SurfaceKind::Wall) {
    Surface s{std::move(name), kind, area, 90.0, azimuth, c, Boundary::exterior(), {}};
    if (glazing > 0.0) s.glazings.push_back(Glazing{glazing, 5.8, 0.85});
    return s;
}

Surface partition(std::string name, double area, std::string neighbour, double thickness) {
    return {std::move(name), SurfaceKind::Partition, area, 90.0, 0.0,
            partition_construction(thickness), Boundary::adjacent(std::move(neighbour)), {}};
}

}  // namespace

BuildingModel typical_house(const TypicalHouseOptions& opt) {
    const double h = opt.ceiling_height;
    Geometry g{7.308 / h, 10.43 / h, 19.12 / h, 12.58 / h};
    const double x_bed2 = g.wet_width;
    const double x_bed1 = x_bed2 + g.bedroom_width;
    const double x_east = x_bed1 + g.bedroom_width;
    const double kitchen_width = x_east - g.living_width;
    const double toilet_depth = g.south_depth - g.bath_depth;
    const double pitch_factor = 1.0 / std::cos(opt.roof_pitch * std::numbers::pi / 180.0);

    const auto wall = wall_construction(opt.wall_absorptance);
    const auto roof = roof_construction(opt.roof_absorptance);
    const auto floor = floor_construction(opt.earth_depth, opt.floor_absorptance);
    const double pt = opt.partition_thickness;
    constexpr double kDoorArea = 1.8;

    auto make_zone = [&](std::string name, double width, double depth, double roof_azimuth) {
        Zone z;
        z.name = name;
        z.volume = width * depth * h;
        z.floor_surface = name + ".floor";
        z.surfaces.push_back({name + ".floor", SurfaceKind::Floor, width * depth, 180.0, 0.0, floor,
                              Boundary::ground(), {}});
        z.surfaces.push_back({name + ".roof", SurfaceKind::Roof, width * depth * pitch_factor,
                              opt.roof_pitch, roof_azimuth, roof, Boundary::exterior(), {}});
        return z;
    };

    Zone living = make_zone("living_room", g.living_width, g.north_depth, 0.0);
    living.surfaces.push_back(facade("living_room.north", 19.12, 0.0, wall, 1.26));
    living.surfaces.push_back(facade("living_room.west", 10.43, 270.0, wall));
    living.surfaces.push_back(
        facade("living_room.entrance", kDoorArea, 0.0, door_construction(), 0.0, SurfaceKind::Door));
    living.surfaces.push_back(partition("living_room|kitchen", g.north_depth * h, "kitchen", pt));
    living.surfaces.push_back(partition("living_room|toilet", g.wet_width * h, "toilet", pt));

    Zone kitchen = make_zone("kitchen", kitchen_width, g.north_depth, 0.0);
    // the service door is cut out of the north facade
    kitchen.surfaces.push_back(facade("kitchen.north", kitchen_width * h - kDoorArea, 0.0, wall, 0.9));
    kitchen.surfaces.push_back(facade("kitchen.east", g.north_depth * h, 90.0, wall));
    kitchen.surfaces.push_back(
        facade("kitchen.door", kDoorArea, 0.0, door_construction(), 0.0, SurfaceKind::Door));
    kitchen.surfaces.push_back(partition("kitchen|bedroom1", kitchen_width * h, "bedroom1", pt));

    Zone bed1 = make_zone("bedroom1", g.bedroom_width, g.south_depth, 180.0);
    bed1.surfaces.push_back(facade("bedroom1.east", 7.308, 90.0, wall, 1.26));
    bed1.surfaces.push_back(facade("bedroom1.south", 12.58, 180.0, wall));
    bed1.surfaces.push_back(
        partition("bedroom1|living_room", (g.living_width - x_bed1) * h, "living_room", pt));
    bed1.surfaces.push_back(partition("bedroom1|bedroom2", g.south_depth * h, "bedroom2", pt));

    Zone bed2 = make_zone("bedroom2", g.bedroom_width, g.south_depth, 180.0);
    bed2.surfaces.push_back(facade("bedroom2.south", 12.58, 180.0, wall, 1.26));
    bed2.surfaces.push_back(partition("bedroom2|living_room", g.bedroom_width * h, "living_room", pt));

    Zone bath = make_zone("bathroom", g.wet_width, g.bath_depth, 180.0);
    bath.surfaces.push_back(facade("bathroom.south", g.wet_width * h, 180.0, wall));
    bath.surfaces.push_back(facade("bathroom.west", g.bath_depth * h, 270.0, wall, 0.36));
    bath.surfaces.push_back(partition("bathroom|bedroom2", g.bath_depth * h, "bedroom2", pt));
    bath.surfaces.push_back(partition("bathroom|toilet", g.wet_width * h, "toilet", pt));

    Zone toilet = make_zone("toilet", g.wet_width, toilet_depth, 180.0);
    toilet.surfaces.push_back(facade("toilet.west", toilet_depth * h, 270.0, wall, 0.25));
    toilet.surfaces.push_back(partition("toilet|bedroom2", toilet_depth * h, "bedroom2", pt));

    BuildingModel model;
    model.site = opt.site;
    model.zones = {std::move(living), std::move(kitchen), std::move(bed1),
                   std::move(bed2),   std::move(bath),    std::move(toilet)};

    // Crack pairs on every exterior facade, coefficient proportional to area.
    constexpr double kCrackExponent = 0.65;
    constexpr double kTestPressure = 4.0;
    constexpr double kAirDensity = 1.2;
    double total_volume = 0.0;
    double facade_area = 0.0;
    for (const auto& z : model.zones) {
        total_volume += z.volume;
        for (const auto& s : z.surfaces) {
            if (s.boundary.kind == Boundary::Kind::Exterior && s.tilt == 90.0) facade_area += s.gross_area;
        }
    }
    const double target_flow = opt.target_ach * total_volume * kAirDensity / 3600.0;
    const double coeff_per_area = target_flow / (std::pow(kTestPressure, kCrackExponent) * facade_area);
    for (auto& z : model.zones) {
        for (const auto& s : z.surfaces) {
            if (s.boundary.kind != Boundary::Kind::Exterior || s.tilt != 90.0) continue;
            const double c = coeff_per_area * s.gross_area / 2.0;
            z.openings.push_back({s.name + ".crack_low", z.name, kExteriorNode, c, kCrackExponent, 0.1, s.azimuth});
            z.openings.push_back({s.name + ".crack_high", z.name, kExteriorNode, c, kCrackExponent, 2.0, s.azimuth});
        }
    }

    // Closed interior doors: undercut and jamb gaps as one orifice each.
    constexpr double kDoorCoefficient = 0.01;
    auto door = [&](const std::string& a, const std::string& b) {
        for (auto& z : model.zones) {
            if (z.name == a) {
                z.openings.push_back({"door:" + a + "|" + b, a, b, kDoorCoefficient, 0.5, 1.0, std::nullopt});
            }
        }
    };
    door("living_room", "kitchen");
    door("living_room", "bedroom2");
    door("living_room", "bedroom1");
    door("living_room", "toilet");
    door("toilet", "bathroom");
    return model;
}

}  // namespace passim
