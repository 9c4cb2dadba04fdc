#include <algorithm>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "passim/error.hpp"
#include "passim/json_io.hpp"

using namespace passim;

namespace {

const Surface& surface(const BuildingModel& m, const std::string& name) {
    for (const auto& z : m.zones) {
        if (const auto* s = z.find_surface(name)) return *s;
    }
    throw std::runtime_error("no surface " + name);
}

bool mentions(const std::vector<Violation>& v, const std::string& needle) {
    return std::any_of(v.begin(), v.end(), [&](const Violation& x) {
        return x.path.find(needle) != std::string::npos || x.message.find(needle) != std::string::npos;
    });
}

std::vector<const Surface*> exterior_walls(const BuildingModel& m) {
    std::vector<const Surface*> out;
    for (const auto& z : m.zones) {
        for (const auto& s : z.surfaces) {
            if (s.kind == SurfaceKind::Wall && s.boundary.kind == Boundary::Kind::Exterior) out.push_back(&s);
        }
    }
    return out;
}

const GlazingFractions kRow6{{Cardinal::North, 0.30}, {Cardinal::East, 0.30}, {Cardinal::South, 0.10},
                             {Cardinal::West, 0.20}};

}  // namespace

TEST(TypicalHouse, HasTheSixSurveyedRooms) {
    const auto m = typical_house();
    std::vector<std::string> names;
    for (const auto& z : m.zones) names.push_back(z.name);
    std::sort(names.begin(), names.end());
    EXPECT_EQ(names, (std::vector<std::string>{"bathroom", "bedroom1", "bedroom2", "kitchen", "living_room", "toilet"}));
    EXPECT_TRUE(validate(m).empty());
}

TEST(TypicalHouse, SurveyedFacadesAndGlazing) {
    const auto m = typical_house();
    const auto& east = surface(m, "bedroom1.east");
    EXPECT_DOUBLE_EQ(east.gross_area, 7.308);
    EXPECT_DOUBLE_EQ(east.glazing_area(), 1.26);
    EXPECT_DOUBLE_EQ(surface(m, "living_room.north").gross_area, 19.12);
    EXPECT_DOUBLE_EQ(surface(m, "living_room.north").azimuth, 0.0);
    EXPECT_DOUBLE_EQ(surface(m, "living_room.west").gross_area, 10.43);
    EXPECT_DOUBLE_EQ(surface(m, "bedroom2.south").gross_area, 12.58);
}

TEST(TypicalHouse, ConstructionResistancesMatchHandSums) {
    const auto m = typical_house();
    EXPECT_NEAR(surface(m, "bedroom1.east").construction.resistance(), 0.22 / 0.69, 1e-12);
    EXPECT_NEAR(surface(m, "bedroom1.roof").construction.resistance(), 0.015 / 0.60 + 0.17 / 0.85 + 0.005 / 0.29,
                1e-12);
    EXPECT_NEAR(surface(m, "bedroom1.roof").construction.resistance(), 0.2422, 1e-4);
    EXPECT_NEAR(surface(m, "living_room.entrance").construction.resistance(), 0.035 / 0.16, 1e-12);
}

TEST(TypicalHouse, EveryZoneHasCracksToTheExteriorAndDoors) {
    const auto m = typical_house();
    for (const auto& z : m.zones) {
        const bool cracked = std::any_of(z.openings.begin(), z.openings.end(),
                                         [](const Opening& o) { return o.to == kExteriorNode; });
        EXPECT_TRUE(cracked) << z.name;
        for (const auto& o : z.openings) {
            EXPECT_GE(o.exponent, 0.5);
            EXPECT_LE(o.exponent, 1.0);
        }
    }
}

TEST(Rotate, IdentityInvolutionAndArithmetic) {
    const auto m = typical_house();
    EXPECT_EQ(rotate(m, 0.0), m);
    EXPECT_EQ(rotate(rotate(m, 180.0), 180.0), m);
    const auto r = rotate(m, 180.0);
    EXPECT_DOUBLE_EQ(surface(r, "living_room.north").azimuth, 180.0);
    EXPECT_DOUBLE_EQ(r.orientation, 180.0);
    EXPECT_DOUBLE_EQ(surface(rotate(m, 270.0), "kitchen.east").azimuth, 0.0);
}

TEST(Rotate, PreservesEverythingButAzimuths) {
    const auto m = typical_house();
    auto r = rotate(m, 90.0);
    ASSERT_EQ(r.zones.size(), m.zones.size());
    for (std::size_t z = 0; z < m.zones.size(); ++z) {
        EXPECT_EQ(r.zones[z].volume, m.zones[z].volume);
        for (std::size_t s = 0; s < m.zones[z].surfaces.size(); ++s) {
            const auto &a = m.zones[z].surfaces[s], &b = r.zones[z].surfaces[s];
            EXPECT_EQ(a.gross_area, b.gross_area);
            EXPECT_EQ(a.construction, b.construction);
            EXPECT_EQ(a.glazings, b.glazings);
            EXPECT_EQ(a.tilt, b.tilt);
            EXPECT_NEAR(std::fmod(a.azimuth + 90.0, 360.0), b.azimuth, 1e-12);
        }
    }
}

TEST(Glazing, TableRowSixOnTheEastFacade) {
    const auto g = set_glazing_fractions(typical_house(), kRow6);
    EXPECT_NEAR(surface(g, "bedroom1.east").glazing_area(), 0.30 * 7.308, 1e-12);
    EXPECT_NEAR(surface(g, "bedroom1.south").glazing_area(), 0.10 * 12.58, 1e-12);
    EXPECT_NEAR(surface(g, "living_room.west").glazing_area(), 0.20 * 10.43, 1e-12);
    EXPECT_TRUE(validate(g).empty());
}

TEST(Glazing, ZeroFractionsRemoveAllGlazing) {
    const auto g = set_glazing_fractions(typical_house(), {{Cardinal::North, 0.0},
                                                           {Cardinal::East, 0.0},
                                                           {Cardinal::South, 0.0},
                                                           {Cardinal::West, 0.0}});
    for (const auto& z : g.zones) {
        for (const auto& s : z.surfaces) EXPECT_EQ(s.glazing_area(), 0.0) << s.name;
    }
}

TEST(Glazing, FractionAboveLimitIsAnError) {
    EXPECT_THROW(set_glazing_fractions(typical_house(), {{Cardinal::North, 0.95}}), InputError);
    EXPECT_THROW(set_glazing_fractions(typical_house(), {{Cardinal::North, -0.1}}), InputError);
}

TEST(Glazing, ClassifiesOnTheUnrotatedFacade) {
    const auto direct = set_glazing_fractions(typical_house(), kRow6);
    const auto rotated = set_glazing_fractions(rotate(typical_house(), 90.0), kRow6);
    EXPECT_NEAR(surface(rotated, "bedroom1.east").glazing_area(), surface(direct, "bedroom1.east").glazing_area(),
                1e-12);
}

TEST(Glazing, IsIdempotent) {
    const auto once = set_glazing_fractions(typical_house(), kRow6);
    EXPECT_EQ(set_glazing_fractions(once, kRow6), once);
}

TEST(Insulation, ZeroThicknessIsANoOp) {
    const auto m = typical_house();
    EXPECT_EQ(add_roof_insulation(m, materials::straw(), 0.0), m);
    EXPECT_EQ(add_wall_insulation(m, materials::torchi(), 0.0, WallFace::Interior), m);
    EXPECT_THROW(add_roof_insulation(m, materials::straw(), -0.01), InputError);
    EXPECT_THROW(add_wall_insulation(m, materials::torchi(), -0.01, WallFace::Exterior), InputError);
}

TEST(Insulation, StrawBecomesTheInnermostRoofLayer) {
    const auto r = add_roof_insulation(typical_house(), materials::straw(), 0.15);
    for (const auto& z : r.zones) {
        for (const auto& s : z.surfaces) {
            if (s.kind != SurfaceKind::Roof) continue;
            ASSERT_EQ(s.construction.layers.size(), 4u);
            EXPECT_EQ(s.construction.layers.back().material.name, "straw");
            EXPECT_NEAR(s.construction.resistance(), 0.015 / 0.60 + 0.17 / 0.85 + 0.005 / 0.29 + 0.15 / 0.07, 1e-12);
        }
    }
}

TEST(Insulation, TorchiOnTheChosenWallFace) {
    const auto base = typical_house();
    const auto inner = add_wall_insulation(base, materials::torchi(), 0.15, WallFace::Interior);
    const auto outer = add_wall_insulation(base, materials::torchi(), 0.15, WallFace::Exterior);
    const auto walls = exterior_walls(base);
    const auto in_walls = exterior_walls(inner);
    const auto out_walls = exterior_walls(outer);
    ASSERT_FALSE(walls.empty());
    for (std::size_t i = 0; i < walls.size(); ++i) {
        EXPECT_EQ(in_walls[i]->construction.layers.back().material.name, "torchi");
        EXPECT_DOUBLE_EQ(in_walls[i]->construction.layers.back().thickness, 0.15);
        EXPECT_EQ(out_walls[i]->construction.layers.front().material.name, "torchi");
        EXPECT_NEAR(in_walls[i]->construction.resistance() - walls[i]->construction.resistance(), 0.15 / 0.25,
                    1e-12);
    }
    // doors and partitions are left alone
    EXPECT_EQ(surface(inner, "living_room.entrance"), surface(base, "living_room.entrance"));
    EXPECT_EQ(surface(inner, "bedroom1|bedroom2"), surface(base, "bedroom1|bedroom2"));
}

TEST(Insulation, CommutesWithRotate) {
    const auto m = typical_house();
    EXPECT_EQ(rotate(add_roof_insulation(m, materials::straw(), 0.1), 90.0),
              add_roof_insulation(rotate(m, 90.0), materials::straw(), 0.1));
    EXPECT_EQ(rotate(add_wall_insulation(m, materials::torchi(), 0.1, WallFace::Interior), 270.0),
              add_wall_insulation(rotate(m, 270.0), materials::torchi(), 0.1, WallFace::Interior));
}

TEST(FloorAbsorptance, StoredExactly) {
    for (double a : {0.75, 0.9}) {
        const auto m = set_floor_absorptance(typical_house(), a);
        for (const auto& z : m.zones) EXPECT_EQ(z.find_surface(z.floor_surface)->construction.exterior_absorptance, a);
    }
    EXPECT_THROW(set_floor_absorptance(typical_house(), 0.0), InputError);
    EXPECT_THROW(set_floor_absorptance(typical_house(), 1.1), InputError);
}

TEST(Transformations, ArePureAndKeepTheModelValid) {
    const auto m = typical_house();
    const auto copy = m;
    const std::vector<BuildingModel> outs = {
        rotate(m, 37.0),
        set_glazing_fractions(m, kRow6),
        add_roof_insulation(m, materials::straw(), 0.25),
        add_wall_insulation(m, materials::torchi(), 0.25, WallFace::Interior),
        add_wall_insulation(m, materials::torchi(), 0.05, WallFace::Exterior),
        set_floor_absorptance(m, 0.9),
    };
    EXPECT_EQ(m, copy);
    for (const auto& o : outs) EXPECT_TRUE(validate(o).empty());
}

TEST(Validate, GlazingLargerThanTheFacadeIsNamed) {
    auto m = typical_house();
    m.zones[2].surfaces[2].glazings = {{20.0, 5.8, 0.85}};
    const auto v = validate(m);
    ASSERT_FALSE(v.empty());
    EXPECT_TRUE(mentions(v, "zones[2].surfaces[2]"));
}

TEST(Validate, ZoneWithoutAPathOutsideIsFlagged) {
    auto m = typical_house();
    for (auto& z : m.zones) {
        std::erase_if(z.openings, [](const Opening& o) { return o.from == "toilet" || o.to == "toilet"; });
    }
    const auto v = validate(m);
    ASSERT_FALSE(v.empty());
    EXPECT_TRUE(mentions(v, "toilet"));
}

TEST(Validate, FieldLevelViolations) {
    auto m = typical_house();
    m.zones[0].surfaces[0].construction.layers[0].thickness = -0.1;
    m.zones[1].volume = 0.0;
    m.zones[1].openings[0].exponent = 0.3;
    m.zones[3].floor_surface = "nowhere";
    const auto v = validate(m);
    EXPECT_TRUE(mentions(v, "zones[0].surfaces[0].construction.layers[0].thickness"));
    EXPECT_TRUE(mentions(v, "zones[1].volume"));
    EXPECT_TRUE(mentions(v, "zones[1].openings[0].exponent"));
    EXPECT_TRUE(mentions(v, "zones[3].floor_surface"));
}

TEST(Validate, PartitionMustPointAtAKnownZone) {
    auto m = typical_house();
    for (auto& s : m.zones[0].surfaces) {
        if (s.boundary.kind == Boundary::Kind::Zone) s.boundary.zone = "attic";
    }
    EXPECT_FALSE(validate(m).empty());
}

TEST(Materials, LookupByName) {
    EXPECT_EQ(materials::by_name("straw"), materials::straw());
    EXPECT_DOUBLE_EQ(materials::straw().conductivity, 0.07);
    EXPECT_DOUBLE_EQ(materials::torchi().conductivity, 0.25);
    EXPECT_DOUBLE_EQ(materials::unburned_brick().conductivity, 0.69);
    EXPECT_THROW(materials::by_name("concrete"), InputError);
}

TEST(NearestCardinal, TiesResolveClockwise) {
    EXPECT_EQ(nearest_cardinal(0.0), Cardinal::North);
    EXPECT_EQ(nearest_cardinal(44.9), Cardinal::North);
    EXPECT_EQ(nearest_cardinal(45.0), Cardinal::East);
    EXPECT_EQ(nearest_cardinal(200.0), Cardinal::South);
    EXPECT_EQ(nearest_cardinal(359.0), Cardinal::North);
}

TEST(BuildingJson, TypicalHouseRoundTrips) {
    const auto m = typical_house();
    const auto j = to_json(m);
    EXPECT_EQ(building_from_json(Json::parse(j.dump())), m);
}

TEST(BuildingJson, ShippedExampleIsTheCanonicalHouse) {
    const auto path = std::filesystem::path(PASSIM_SOURCE_DIR) / "data" / "typical_house.json";
    EXPECT_EQ(load_building(path), typical_house());
}

TEST(BuildingJson, ErrorsCarryTheFieldPath) {
    auto j = to_json(typical_house());
    j["zones"][1]["surfaces"][2]["kind"] = "window";
    try {
        building_from_json(j);
        FAIL() << "expected an error";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("zones[1].surfaces[2].kind"), std::string::npos) << e.what();
    }
    EXPECT_THROW(load_building("/nonexistent/house.json"), InputError);
}

TEST(BuildingJson, MaterialsMayBeNamed) {
    auto j = to_json(typical_house());
    j["zones"][0]["surfaces"][0]["construction"]["layers"][0]["material"] = "compacted_earth";
    EXPECT_EQ(building_from_json(j), typical_house());
}
