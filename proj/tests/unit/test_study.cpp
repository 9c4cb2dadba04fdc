#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <gtest/gtest.h>

#include "passim/error.hpp"
#include "passim/json_io.hpp"
#include "passim/study.hpp"

using namespace passim;
namespace fs = std::filesystem;

namespace {

WeatherSeries short_week(int days = 2) {
    SynthParams p;
    p.days = days;
    return synth_weather(typical_house().site, p);
}

const Scenario& named(const std::vector<Scenario>& list, const std::string& name) {
    for (const auto& s : list) {
        if (s.name == name) return s;
    }
    throw std::runtime_error("missing " + name);
}

std::string csv_of(const StudyReport& r) {
    std::ostringstream out;
    write_study_csv(out, r);
    return out.str();
}

std::vector<std::string> rows_of(const std::string& csv, const std::string& scenario) {
    std::vector<std::string> out;
    std::istringstream in(csv);
    for (std::string line; std::getline(in, line);) {
        if (line.rfind(scenario + ",", 0) == 0) out.push_back(line);
    }
    return out;
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("passim_study_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Builtin, MatrixContent) {
    const auto all = builtin_scenarios();
    EXPECT_EQ(all.size(), 26u);
    std::set<std::string> names;
    for (const auto& s : all) names.insert(s.name);
    EXPECT_EQ(names.size(), all.size());

    EXPECT_TRUE(named(all, "0").transformations.empty());

    const auto& six = named(all, "6");
    ASSERT_EQ(six.transformations.size(), 1u);
    const auto& g = std::get<SetGlazing>(six.transformations[0]).fractions;
    EXPECT_EQ(g.at(Cardinal::North), 0.30);
    EXPECT_EQ(g.at(Cardinal::East), 0.30);
    EXPECT_EQ(g.at(Cardinal::South), 0.10);
    EXPECT_EQ(g.at(Cardinal::West), 0.20);

    const auto& combined = named(all, "combined");
    bool straw = false, torchi = false;
    for (const auto& t : combined.transformations) {
        if (const auto* r = std::get_if<AddRoofInsulation>(&t)) straw = r->material.name == "straw" && r->thickness == 0.15;
        if (const auto* w = std::get_if<AddWallInsulation>(&t)) torchi = w->material.name == "torchi" && w->thickness == 0.15;
    }
    EXPECT_TRUE(straw);
    EXPECT_TRUE(torchi);

    for (const std::string group : {"roof_straw", "wall_torchi"}) {
        std::vector<double> grid;
        for (const auto& s : all) {
            if (s.sweep && s.sweep->group == group) grid.push_back(s.sweep->value);
        }
        EXPECT_EQ(grid, (std::vector<double>{0.0, 0.05, 0.10, 0.15, 0.20, 0.25})) << group;
    }
    for (int deg : {0, 90, 180, 270}) {
        const auto& s = named(all, fmt::format("orient_{:03d}_g6", deg));
        EXPECT_EQ(std::get<Rotate>(s.transformations[0]).degrees, deg);
    }
    for (double a : {0.75, 0.9}) {
        const auto& s = named(all, fmt::format("south_g6_floor_{:03d}", int(std::lround(a * 100))));
        EXPECT_EQ(std::get<SetFloorAbsorptance>(s.transformations.back()).alpha, a);
    }
}

TEST(Builtin, EveryScenarioYieldsAValidModel) {
    for (const auto& s : builtin_scenarios()) EXPECT_TRUE(validate(apply(typical_house(), s)).empty()) << s.name;
}

TEST(RunStudy, EmptyListGivesBaselineOnly) {
    const auto r = run_study(typical_house(), {}, short_week(1), {});
    EXPECT_TRUE(r.scenarios.empty());
    EXPECT_EQ(r.baseline.zones.size(), 6u);
    EXPECT_FALSE(r.any_failed());
}

TEST(RunStudy, IdenticalScenarioHasZeroDeltas) {
    const auto r = run_study(typical_house(), {{"same", {}, std::nullopt}, {"turned", {Rotate{360.0}}, std::nullopt}},
                             short_week(), {});
    for (const auto& s : r.scenarios) {
        ASSERT_FALSE(s.failed) << s.error;
        for (const auto& d : s.deltas) {
            EXPECT_NEAR(d.d_day, 0.0, 1e-9);
            EXPECT_NEAR(d.d_night, 0.0, 1e-9);
        }
    }
}

TEST(RunStudy, DeltasAreRecomputedDifferences) {
    const auto r = run_study(typical_house(), {named(builtin_scenarios(), "roof_straw_10")}, short_week(), {});
    const auto& s = r.scenarios[0];
    for (std::size_t i = 0; i < s.comfort.zones.size(); ++i) {
        const auto& z = s.comfort.zones[i];
        const auto& b = r.baseline.zone(z.zone);
        EXPECT_EQ(s.deltas[i].d_day, *z.t_res_day - *b.t_res_day);
        EXPECT_EQ(s.deltas[i].d_night, *z.t_res_night - *b.t_res_night);
    }
}

TEST(RunStudy, FailedScenarioIsReportedAndOthersProceed) {
    const std::vector<Scenario> list = {
        {"ok", {SetFloorAbsorptance{0.9}}, std::nullopt},
        {"too_much_glass", {SetGlazing{{{Cardinal::North, 0.95}}}}, std::nullopt},
    };
    const auto r = run_study(typical_house(), list, short_week(1), {});
    EXPECT_TRUE(r.any_failed());
    EXPECT_FALSE(r.scenario("ok").failed);
    EXPECT_TRUE(r.scenario("too_much_glass").failed);
    EXPECT_NE(r.scenario("too_much_glass").error.find("0.95"), std::string::npos);
    const auto rows = rows_of(csv_of(r), "too_much_glass");
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_NE(rows[0].find(",NA,NA,NA,NA,NA,NA"), std::string::npos);
}

TEST(RunStudy, DuplicateOrEmptyNamesAreRejected) {
    EXPECT_THROW(run_study(typical_house(), {{"a", {}, std::nullopt}, {"a", {}, std::nullopt}}, short_week(1), {}),
                 InputError);
    EXPECT_THROW(run_study(typical_house(), {{"", {}, std::nullopt}}, short_week(1), {}), InputError);
}

TEST(RunStudy, ThreadCountDoesNotChangeTheBytes) {
    std::vector<Scenario> list;
    for (const auto& s : builtin_scenarios()) {
        if (s.name == "3" || s.name == "orient_090_g6" || s.name == "roof_straw_05" || s.name == "wall_torchi_20" ||
            s.name == "combined")
            list.push_back(s);
    }
    const auto w = short_week();
    StudyOptions one, four;
    four.threads = 4;
    EXPECT_EQ(csv_of(run_study(typical_house(), list, w, one)), csv_of(run_study(typical_house(), list, w, four)));
}

TEST(RunStudy, RemovingAScenarioLeavesTheOthersUntouched) {
    const auto all = builtin_scenarios();
    const std::vector<Scenario> full = {named(all, "1"), named(all, "roof_straw_05"), named(all, "orient_180_g6")};
    const std::vector<Scenario> fewer = {named(all, "1"), named(all, "orient_180_g6")};
    const auto w = short_week();
    const auto a = csv_of(run_study(typical_house(), full, w, {}));
    const auto b = csv_of(run_study(typical_house(), fewer, w, {}));
    for (const std::string name : {"baseline", "1", "orient_180_g6"}) EXPECT_EQ(rows_of(a, name), rows_of(b, name));
    EXPECT_TRUE(rows_of(b, "roof_straw_05").empty());
}

TEST(Report, CsvHeaderAndBaselineRows) {
    const auto r = run_study(typical_house(), {{"same", {}, std::nullopt}}, short_week(1), {});
    const auto csv = csv_of(r);
    EXPECT_EQ(csv.substr(0, csv.find('\n')),
              "scenario,zone,t_res_day_c,t_res_night_c,d_day_c,d_night_c,discomfort_day_h,discomfort_night_h");
    const auto base = rows_of(csv, "baseline");
    ASSERT_EQ(base.size(), 6u);
    const std::regex zero_deltas(R"(^baseline,[a-z_0-9]+,[-0-9.]+,[-0-9.]+,0\.000,0\.000,\d+,\d+$)");
    for (const auto& row : base) EXPECT_TRUE(std::regex_match(row, zero_deltas)) << row;
    EXPECT_EQ(rows_of(csv, "same").size(), 6u);
}

TEST(Report, EmitsCsvAndSvgFiles) {
    std::vector<Scenario> list;
    for (const auto& s : builtin_scenarios()) {
        if (s.sweep && s.sweep->group == "roof_straw") list.push_back(s);
    }
    const auto r = run_study(typical_house(), list, short_week(1), {});
    const auto dir = scratch("emit");
    const auto csv = emit_report(r, ReportFormat::Csv, dir);
    ASSERT_EQ(csv.size(), 1u);
    EXPECT_EQ(csv[0].filename(), "study.csv");
    const auto svg = emit_report(r, ReportFormat::Svg, dir);
    std::vector<std::string> names;
    for (const auto& p : svg) names.push_back(p.filename().string());
    EXPECT_EQ(names, (std::vector<std::string>{"roof_straw.svg", "discomfort.svg"}));

    std::ifstream in(dir / "roof_straw.svg");
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    const std::regex polyline(R"re(<polyline data-zone="([a-z_0-9]+)"[^>]*points="([^"]*)")re");
    int lines = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), polyline); it != std::sregex_iterator(); ++it) {
        const std::string pts = (*it)[2];
        EXPECT_EQ(std::count(pts.begin(), pts.end(), ','), 6) << (*it)[1];
        ++lines;
    }
    EXPECT_EQ(lines, 6);

    std::ifstream bars(dir / "discomfort.svg");
    const std::string bar_text((std::istreambuf_iterator<char>(bars)), {});
    EXPECT_NE(bar_text.find("data-zone=\"bedroom1\""), std::string::npos);
    fs::remove_all(dir);
}

TEST(Report, UnwritableDestinationIsAnError) {
    const auto r = run_study(typical_house(), {}, short_week(1), {});
    const auto file = scratch("blocker");
    std::ofstream(file) << "not a directory";
    EXPECT_THROW(emit_report(r, ReportFormat::Csv, file / "out"), Error);
    fs::remove_all(file);
}

TEST(MatrixJson, BuiltinShorthandAndLists) {
    EXPECT_EQ(scenarios_from_json(Json("builtin")).size(), 26u);
    const auto j = Json::parse(R"({"builtin": true, "scenarios": [
        {"name": "thin_straw", "transformations": [{"op": "add_roof_insulation", "material": "straw", "thickness": 0.02}]}]})");
    const auto list = scenarios_from_json(j);
    ASSERT_EQ(list.size(), 27u);
    EXPECT_EQ(list.back().name, "thin_straw");
    EXPECT_EQ(std::get<AddRoofInsulation>(list.back().transformations[0]).material, materials::straw());
}

TEST(MatrixJson, RoundTripsEveryBuiltinScenario) {
    Json arr = Json::array();
    for (const auto& s : builtin_scenarios()) arr.push_back(to_json(s));
    const auto back = scenarios_from_json(Json::parse(arr.dump()));
    const auto orig = builtin_scenarios();
    ASSERT_EQ(back.size(), orig.size());
    const auto house = typical_house();
    for (std::size_t i = 0; i < orig.size(); ++i) {
        EXPECT_EQ(back[i].name, orig[i].name);
        EXPECT_EQ(apply(house, back[i]), apply(house, orig[i])) << orig[i].name;
        EXPECT_EQ(back[i].sweep.has_value(), orig[i].sweep.has_value());
    }
}

TEST(MatrixJson, UnknownOperationIsAnInputError) {
    const auto j = Json::parse(R"([{"name": "x", "transformations": [{"op": "paint_walls", "colour": "white"}]}])");
    try {
        scenarios_from_json(j);
        FAIL() << "expected an error";
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("paint_walls"), std::string::npos);
    }
    EXPECT_THROW(scenarios_from_json(Json("everything")), InputError);
    EXPECT_THROW(scenarios_from_json(Json::parse(R"({"builtins": true})")), InputError);
    EXPECT_THROW(scenarios_from_json(Json::parse(R"([{"name": "x", "transformations": [{"op": "rotate"}]}])")),
                 InputError);
}

// The insulation sweeps over the full synthetic week, run once for the suite.
class Sweeps : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        std::vector<Scenario> list;
        for (const auto& s : builtin_scenarios()) {
            if (s.sweep) list.push_back(s);
        }
        const auto house = typical_house();
        report_ = new StudyReport(run_study(house, list, synth_weather(house.site, {}), {}));
        // minimum night Tres per scenario and zone needs the hourly series
        for (const auto& s : list) {
            const auto series = simulate(apply(house, s), synth_weather(house.site, {}), {});
            auto& mins = min_night_[s.name];
            for (std::size_t z = 0; z < series.zones.size(); ++z) {
                double m = 1e9;
                for (std::size_t h = 0; h < series.hours.size(); ++h) {
                    if (!is_day_hour(series.timestamps[h].hour)) m = std::min(m, series.hours[h][z].t_res);
                }
                mins[series.zones[z]] = m;
            }
        }
    }
    static void TearDownTestSuite() {
        delete report_;
        report_ = nullptr;
    }

    static std::vector<const ScenarioResult*> sweep(const std::string& group) {
        std::vector<const ScenarioResult*> out;
        for (const auto& r : report_->scenarios) {
            if (r.scenario.sweep->group == group) out.push_back(&r);
        }
        return out;
    }

    static StudyReport* report_;
    static inline std::map<std::string, std::map<std::string, double>> min_night_;
};

StudyReport* Sweeps::report_ = nullptr;

TEST_F(Sweeps, StrawRaisesBedroomNightsMonotonically) {
    for (const std::string zone : {"bedroom1", "bedroom2"}) {
        double prev = -1e9;
        for (const auto* r : sweep("roof_straw")) {
            const auto& z = r->comfort.zone(zone);
            EXPECT_GE(*z.t_res_night, prev - 1e-9) << r->scenario.name << " " << zone;
            prev = *z.t_res_night;
        }
    }
}

TEST_F(Sweeps, InsulationNeverLowersTheColdestNight) {
    for (const std::string group : {"roof_straw", "wall_torchi"}) {
        const auto points = sweep(group);
        for (const auto& zone : report_->baseline.zones) {
            for (std::size_t i = 1; i < points.size(); ++i) {
                const double before = min_night_[points[i - 1]->scenario.name][zone.zone];
                const double after = min_night_[points[i]->scenario.name][zone.zone];
                EXPECT_GE(after, before - 1e-9) << points[i]->scenario.name << " " << zone.zone;
            }
        }
    }
}
