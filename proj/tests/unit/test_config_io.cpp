#include <gtest/gtest.h>

#include <filesystem>

#include "lpai/config.hpp"
#include "lpai/error.hpp"
#include "lpai/io/format.hpp"

using namespace lpai;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "lpai_unit_io";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(Config, EmptyDocumentIsReference) {
    const auto cfg = config_from_json(json::object());
    EXPECT_EQ(config_to_json(cfg).dump(), config_to_json(CycleConfig::reference()).dump());
}

TEST(Config, RoundTripPreservesEveryField) {
    auto cfg = CycleConfig::case_study_100hz();
    cfg.noise.disturbances.push_back({2.0, 0.01, 0.3});
    cfg.detection.electronics_noise = 12.5;
    cfg.mot.capture_radius = 4.1e-3;
    const auto text = config_to_json(cfg).dump();
    const auto back = config_from_json(json::parse(text));
    EXPECT_EQ(config_to_json(back).dump(), text);
    EXPECT_EQ(back.noise.disturbances.size(), 1u);
    EXPECT_EQ(back.mot.capture_radius, 4.1e-3);
    EXPECT_EQ(back.noise.rate_rolloff, 0.0);
}

TEST(Config, PartialSectionsKeepDefaults) {
    const auto cfg = config_from_json(json::parse(R"({"timing": {"data_rate": 50}, "noise": {"raman": 0.01}})"));
    EXPECT_EQ(cfg.data_rate, 50.0);
    EXPECT_EQ(cfg.noise.raman_phase_noise, 0.01);
    EXPECT_EQ(cfg.noise.magnetic_noise, NoiseBudget{}.magnetic_noise);
    // Overheads follow the schedule at the configured rate.
    EXPECT_NEAR(cfg.timing().interrogation_time(), 7.5e-3, 40e-9);
}

TEST(Config, ErrorsAreActionable) {
    try {
        config_from_json(json::parse(R"({"noise": {"ramen": 0.01}})"));
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("noise.ramen"), std::string::npos);
    }
    EXPECT_THROW(config_from_json(json::parse(R"({"fringe": {"contrast": "high"}})")), ConfigError);
    EXPECT_THROW(config_from_json(json::parse(R"({"fringe": {"contrast": 2.0}})")), ConfigError);
    EXPECT_THROW(config_from_json(json::parse(R"({"schema_version": 2})")), ConfigError);
    EXPECT_THROW(config_from_json(json::parse(R"([1, 2])")), ConfigError);
    EXPECT_THROW(config_from_json(json::parse(R"({"timing": {"detect": [1]}})")), ConfigError);
    EXPECT_THROW(config_from_json(json::parse(R"({"timing": {"data_rate": 5000}})")), InfeasibleRateError);
}

TEST(Config, FileRoundTrip) {
    const auto path = scratch("cfg.json");
    save_config(CycleConfig::reference(), path);
    EXPECT_EQ(config_to_json(load_config(path)).dump(), config_to_json(CycleConfig::reference()).dump());
    io::write_text(path, "{ not json");
    EXPECT_THROW(load_config(path), ConfigError);
    EXPECT_THROW(load_config(scratch("missing.json")), IoError);
}

TEST(Format, ShortestRoundTrip) {
    for (double v : {0.1, 1.0 / 3.0, 9.7916378, 1e-300, -2.5e17, 0.0}) {
        const auto s = io::format_double(v);
        EXPECT_EQ(std::stod(s), v) << s;
        EXPECT_EQ(s.find(','), std::string::npos);
    }
    EXPECT_EQ(io::format_double(0.5), "0.5");
    EXPECT_EQ(io::format_double(12000), "12000");
}

TEST(Csv, WriteAndRead) {
    const auto path = scratch("t.csv");
    {
        io::CsvWriter w(path, {"timestamp_s", "population"});
        w.row(std::vector<double>{0.0, 0.5});
        w.row(std::vector<double>{0.01, 0.25});
    }
    EXPECT_EQ(io::read_text(path), "timestamp_s,population\n0,0.5\n0.01,0.25\n");
    const auto t = io::read_csv(path);
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.column({"population"}), 1u);
    EXPECT_EQ(t.rows[1][0], 0.01);
    EXPECT_THROW(t.column({"nope"}), ConfigError);
}

TEST(Csv, MalformedInput) {
    const auto path = scratch("bad.csv");
    io::write_text(path, "a,b\n1,2\n3\n");
    EXPECT_THROW(io::read_csv(path), ConfigError);
    io::write_text(path, "a,b\n1,x\n");
    EXPECT_THROW(io::read_csv(path), ConfigError);
    io::write_text(path, "a,b\r\n1,2\r\n");
    EXPECT_EQ(io::read_csv(path).rows.at(0).at(1), 2.0);
    EXPECT_THROW(io::read_csv(scratch("absent.csv")), IoError);
}

TEST(Config, ShippedConfigsLoad) {
    const fs::path dir = LPAI_SOURCE_DIR "/configs";
    EXPECT_EQ(config_to_json(load_config(dir / "default.json")).dump(),
              config_to_json(CycleConfig::reference()).dump());
    EXPECT_EQ(config_to_json(load_config(dir / "case_100hz.json")).dump(),
              config_to_json(CycleConfig::case_study_100hz()).dump());
    const auto d = load_config(dir / "disturbance_50hz.json");
    EXPECT_EQ(d.data_rate, 50.0);
    EXPECT_EQ(d.noise.disturbances.size(), 1u);
}
