#pragma once

#include <string>
#include <vector>

#include "passim/building.hpp"
#include "passim/weather.hpp"

// Small hand-built models shared by the unit and acceptance tests.
namespace fixture {

inline passim::Material massless(double conductivity) {
    passim::Material m{"board", conductivity, 1.0, 1.0, true};
    return m;
}

// One zone whose only surface is a massless wall of `area` m2 and resistance
// `resistance` m2K/W on `boundary`. The zone air is then the single capacity
// of the network.
inline passim::BuildingModel single_node_zone(double volume, double area, double resistance,
                                              passim::Boundary boundary = passim::Boundary::exterior()) {
    using namespace passim;
    Construction c{"board_wall", {{massless(0.1), 0.1 * resistance}}, 0.0, 0.9, 0.9};
    Surface wall{"box.wall", SurfaceKind::Wall, area, 90.0, 0.0, c, boundary, {}};
    Zone z{"box", volume, {wall}, {}, "box.wall"};
    BuildingModel m;
    m.zones.push_back(z);
    return m;
}

// A closed zone with one brick wall to the exterior, a ground floor and two
// crack openings at 0.1 m and 2.0 m.
inline passim::BuildingModel cell(double glazing = 0.0) {
    using namespace passim;
    Construction wall{"wall", {{materials::unburned_brick(), 0.22}}, 0.7, 0.9, 0.9};
    Construction floor{"floor", {{materials::compacted_earth(), 0.5}, {materials::cement_screed(), 0.05}}, 0.75,
                       0.9, 0.9};
    Surface facade{"cell.south", SurfaceKind::Wall, 10.0, 90.0, 180.0, wall, Boundary::exterior(), {}};
    if (glazing > 0.0) facade.glazings.push_back({glazing, 5.8, 0.85});
    Surface ground{"cell.floor", SurfaceKind::Floor, 9.0, 180.0, 0.0, floor, Boundary::ground(), {}};
    Surface roof{"cell.roof", SurfaceKind::Roof, 9.0, 0.0, 0.0, wall, Boundary::exterior(), {}};
    Zone z{"cell", 27.0, {facade, ground, roof}, {}, "cell.floor"};
    z.openings.push_back({"low", "cell", kExteriorNode, 0.002, 0.65, 0.1, 180.0});
    z.openings.push_back({"high", "cell", kExteriorNode, 0.002, 0.65, 2.0, 180.0});
    BuildingModel m;
    m.zones.push_back(z);
    return m;
}

// Hourly series of constant conditions starting at midnight.
inline passim::WeatherSeries constant_weather(int hours, double dry_bulb, double ghi = 0.0, double wind = 0.0) {
    passim::WeatherSeries w;
    passim::LocalDateTime t{2001, 7, 1, 0};
    for (int i = 0; i < hours; ++i) {
        w.records.push_back({t.plus_hours(i), dry_bulb, 60.0, ghi, ghi * 0.25, wind, 90.0});
    }
    return w;
}

}  // namespace fixture
