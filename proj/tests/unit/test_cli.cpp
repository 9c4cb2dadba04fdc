#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "passim/json_io.hpp"
#include "passim/weather.hpp"

using namespace passim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("passim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
        save_building(path("house.json"), typical_house());
        SynthParams p;
        p.days = 2;
        std::ofstream(path("week.csv")) << [&] {
            std::ostringstream s;
            write_weather_csv(s, synth_weather(typical_house().site, p));
            return s.str();
        }();
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(Cli, ValidateCanonicalHouse) {
    const auto r = run({"validate", path("house.json")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("6 zones"), std::string::npos);
    EXPECT_EQ(run({"validate", "--building", (fs::path(PASSIM_SOURCE_DIR) / "data/typical_house.json").string()}).code,
              0);
}

TEST_F(Cli, ValidateNegativeThicknessNamesTheField) {
    auto j = read_json_file(path("house.json"));
    j["zones"][2]["surfaces"][3]["construction"]["layers"][0]["thickness"] = -0.22;
    std::ofstream(path("bad.json")) << j.dump(2);
    const auto r = run({"validate", path("bad.json")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("zones[2].surfaces[3].construction.layers[0].thickness"), std::string::npos) << r.err;
}

TEST_F(Cli, ValidateMissingOrBrokenFile) {
    EXPECT_EQ(run({"validate", path("nope.json")}).code, 2);
    std::ofstream(path("broken.json")) << "{ zones: ";
    EXPECT_EQ(run({"validate", path("broken.json")}).code, 2);
}

TEST_F(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"frobnicate"}).code, 1);
    EXPECT_EQ(run({"simulate", "--building", path("house.json")}).code, 1);
    EXPECT_EQ(run({"weather"}).code, 1);
    EXPECT_EQ(run({"study", "--building", path("house.json"), "--weather", path("week.csv"), "--out-dir",
                   path("s"), "--threads", "0"})
                  .code,
              1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, SimulateWritesBothCsvs) {
    const auto r = run({"simulate", "--building", path("house.json"), "--weather", path("week.csv"), "--out",
                        path("sim")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto results = slurp(dir_ / "sim/results.csv");
    const auto comfort = slurp(dir_ / "sim/comfort.csv");
    EXPECT_EQ(results.substr(0, results.find('\n')), "timestamp,zone,t_air_c,t_mrt_c,t_res_c,ach");
    EXPECT_EQ(comfort.substr(0, comfort.find('\n')),
              "zone,t_res_day_c,t_res_night_c,discomfort_day_h,discomfort_night_h");
    EXPECT_EQ(std::count(results.begin(), results.end(), '\n'), 1 + 48 * 6);
    EXPECT_NE(r.out.find("living_room"), std::string::npos);

    // reruns overwrite byte-identically and leave the inputs alone
    const auto house = slurp(path("house.json"));
    ASSERT_EQ(run({"simulate", "--building", path("house.json"), "--weather", path("week.csv"), "--out",
                   path("sim")})
                  .code,
              0);
    EXPECT_EQ(slurp(dir_ / "sim/results.csv"), results);
    EXPECT_EQ(slurp(path("house.json")), house);
}

TEST_F(Cli, SimulateWithHourStepFromConfig) {
    std::ofstream(path("cfg.json")) << R"({"dt": 3600})";
    const auto r = run({"simulate", "--building", path("house.json"), "--weather", path("week.csv"), "--config",
                        path("cfg.json"), "--out", path("sim")});
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, SimulateRejectsBadConfigAndSiteMismatch) {
    std::ofstream(path("cfg.json")) << R"({"dt": 600, "colour": "blue"})";
    EXPECT_EQ(run({"simulate", "--building", path("house.json"), "--weather", path("week.csv"), "--config",
                   path("cfg.json"), "--out", path("sim")})
                  .code,
              2);

    SiteInfo other = typical_house().site;
    other.longitude = 10.0;
    SynthParams p;
    p.days = 1;
    {
        std::ofstream out(path("elsewhere.csv"));
        write_weather_csv(out, synth_weather(other, p));
    }
    const auto r = run({"simulate", "--building", path("house.json"), "--weather", path("elsewhere.csv"), "--out",
                        path("sim")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("site"), std::string::npos);
}

TEST_F(Cli, StudyThreadsGiveIdenticalBytes) {
    std::ofstream(path("matrix.json")) << R"([
        {"name": "glass", "transformations": [{"op": "set_glazing_fractions", "fractions": {"N": 0.3, "S": 0.1}}]},
        {"name": "straw", "transformations": [{"op": "add_roof_insulation", "material": "straw", "thickness": 0.1}],
         "sweep": {"group": "roof_straw", "value": 0.1}},
        {"name": "south", "transformations": [{"op": "rotate", "degrees": 180}]}
    ])";
    auto study = [&](const std::string& threads, const std::string& out) {
        return run({"study", "--building", path("house.json"), "--weather", path("week.csv"), "--matrix",
                    path("matrix.json"), "--out-dir", path(out), "--threads", threads});
    };
    const auto a = study("1", "one");
    const auto b = study("8", "eight");
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    for (const char* f : {"study.csv", "roof_straw.svg", "discomfort.svg"}) {
        EXPECT_EQ(slurp(dir_ / "one" / f), slurp(dir_ / "eight" / f)) << f;
    }
    EXPECT_FALSE(fs::exists(dir_ / "one/wall_torchi.svg"));
}

TEST_F(Cli, StudyUnknownTransformationIsAnInputError) {
    std::ofstream(path("matrix.json")) << R"([{"name": "x", "transformations": [{"op": "demolish"}]}])";
    const auto r = run({"study", "--building", path("house.json"), "--weather", path("week.csv"), "--matrix",
                        path("matrix.json"), "--out-dir", path("s")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("demolish"), std::string::npos);
}

TEST_F(Cli, StudyWithAFailedScenarioStillWritesTheReport) {
    std::ofstream(path("matrix.json")) << R"([
        {"name": "fine", "transformations": [{"op": "set_floor_absorptance", "alpha": 0.9}]},
        {"name": "glasshouse", "transformations": [{"op": "set_glazing_fractions", "fractions": {"N": 0.95}}]}
    ])";
    const auto r = run({"study", "--building", path("house.json"), "--weather", path("week.csv"), "--matrix",
                        path("matrix.json"), "--out-dir", path("s")});
    EXPECT_EQ(r.code, 3);
    EXPECT_TRUE(fs::exists(dir_ / "s/study.csv"));
    EXPECT_NE(r.err.find("glasshouse"), std::string::npos);
}

TEST_F(Cli, WeatherSynthAndInspect) {
    const auto s = run({"weather", "synth", "--t-min", "5.6", "--t-max", "20.6", "--clearness", "0.7", "--days", "7",
                        "--out", path("synth.csv")});
    ASSERT_EQ(s.code, 0) << s.err;
    const auto i = run({"weather", "inspect", "--weather", path("synth.csv")});
    ASSERT_EQ(i.code, 0) << i.err;
    EXPECT_NE(i.out.find("dry_bulb_min   5.60"), std::string::npos) << i.out;
    EXPECT_NE(i.out.find("cold_window    2001-07-01T00:00 + 7 days"), std::string::npos) << i.out;

    const auto stdout_synth = run({"weather", "synth", "--days", "1"});
    EXPECT_EQ(stdout_synth.code, 0);
    EXPECT_EQ(std::count(stdout_synth.out.begin(), stdout_synth.out.end(), '\n'), 2 + 24);
}

TEST_F(Cli, WeatherBadFlagsAndEmptyFile) {
    EXPECT_EQ(run({"weather", "synth", "--days", "0"}).code, 1);
    EXPECT_EQ(run({"weather", "synth", "--t-min", "20", "--t-max", "10"}).code, 1);
    EXPECT_EQ(run({"weather", "synth", "--start", "July"}).code, 1);
    EXPECT_EQ(run({"weather", "synth", "--clearness", "2"}).code, 1);
    std::ofstream(path("empty.csv")).flush();
    EXPECT_EQ(run({"weather", "inspect", "--weather", path("empty.csv")}).code, 2);
    EXPECT_EQ(run({"weather", "inspect", "--weather", path("missing.csv")}).code, 2);
}
