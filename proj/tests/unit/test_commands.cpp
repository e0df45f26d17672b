#include <gtest/gtest.h>

#include <filesystem>

#include "lpai/app/commands.hpp"
#include "lpai/config.hpp"
#include "lpai/error.hpp"
#include "lpai/interferometer.hpp"
#include "lpai/io/format.hpp"
#include "lpai/noise.hpp"

using namespace lpai;
using namespace lpai::app;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "lpai_unit_cmd" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

RunContext context(const std::string& name, std::uint64_t seed = 11) {
    RunContext ctx;
    ctx.seed = seed;
    ctx.out_dir = fresh_dir(name);
    return ctx;
}

void expect_same_files(const fs::path& a, const fs::path& b, const std::vector<std::string>& files) {
    for (const auto& f : files) EXPECT_EQ(io::read_text(a / f), io::read_text(b / f)) << f;
}

}  // namespace

TEST(Commands, NamesAreRegistered) {
    const auto& names = command_names();
    for (const char* c : {"simulate", "gravity", "allan", "sweep", "noise-report"}) {
        EXPECT_NE(std::find(names.begin(), names.end(), c), names.end()) << c;
    }
    EXPECT_THROW(run_command("bogus", json::object(), RunContext{}), InvalidArgumentError);
    EXPECT_THROW(run_command("simulate", json{{"shotz", 3}}, context("bad_arg")), InvalidArgumentError);
    EXPECT_THROW(run_command("simulate", json{{"mode", "sideways"}}, context("bad_mode")), InvalidArgumentError);
}

TEST(Commands, NoiselessFringeScanCsvMatchesModel) {
    auto ctx = context("fringe");
    ctx.config.noise.raman_phase_noise = ctx.config.noise.magnetic_noise = ctx.config.noise.residual_noise = 0.0;
    ctx.config.detection.counting_noise = false;
    const auto r = run_command("simulate", json{{"mode", "fringe-scan"}}, ctx);
    EXPECT_EQ(r.arguments["shots"], 400);
    const auto table = io::read_csv(ctx.out_dir / "simulate.csv");
    ASSERT_EQ(table.rows.size(), 400u);
    EXPECT_EQ(table.header.front(), "shot");
    const auto cp = table.column({"population"}), ca = table.column({"applied_phase_rad"});
    for (const auto& row : table.rows) {
        EXPECT_NEAR(row[cp], transition_probability(row[ca], ctx.config.fringe), 1e-12);
    }
}

TEST(Commands, MidFringeCaseStudyNoise) {
    auto ctx = context("mid");
    ctx.config = CycleConfig::case_study_100hz();
    const auto r = run_command("simulate", json::object(), ctx);
    EXPECT_EQ(r.arguments["shots"], 12000);
    EXPECT_NEAR(r.summary["phase_noise_rad"].get<double>(), 31.1e-3, 0.05 * 31.1e-3);
}

TEST(Commands, SimulateJsonFormat) {
    auto ctx = context("json");
    ctx.format = OutputFormat::Json;
    run_command("simulate", json{{"shots", 10}}, ctx);
    const auto doc = json::parse(io::read_text(ctx.out_dir / "simulate.json"));
    ASSERT_EQ(doc.size(), 10u);
    EXPECT_TRUE(doc[0].contains("population"));
}

TEST(Commands, SameSeedSameFiles) {
    auto a = context("seed_a", 5), b = context("seed_b", 5);
    run_command("simulate", json{{"shots", 3000}}, a);
    run_command("simulate", json{{"shots", 3000}}, b);
    expect_same_files(a.out_dir, b.out_dir, {"simulate.csv", "manifest.json"});
}

TEST(Commands, ReplayIsByteIdentical) {
    struct Case {
        std::string command;
        json args;
    };
    const std::vector<Case> cases{
        {"simulate", json{{"shots", 2000}}},
        {"gravity", json::object()},
        {"allan", json{{"shots", 4000}, {"overlapping", true}}},
        {"sweep", json{{"rates", {50, 330}}, {"shots", 10000}}},
        {"noise-report", json::object()},
    };
    for (const auto& c : cases) {
        auto ctx = context("replay_" + c.command, 1234);
        ctx.config.physical.rabi_frequency = constants::two_pi * 161.3e3;  // not exactly representable in Hz
        const auto first = run_command(c.command, c.args, ctx);
        const auto out2 = fresh_dir("replay_" + c.command + "_again");
        const auto second = replay_manifest(ctx.out_dir / "manifest.json", out2);
        EXPECT_EQ(first.outputs, second.outputs);
        expect_same_files(ctx.out_dir, out2, first.outputs);
        const auto manifest = json::parse(io::read_text(ctx.out_dir / "manifest.json"));
        EXPECT_EQ(manifest["seed"], 1234);
        EXPECT_EQ(manifest["command"], c.command);
        EXPECT_TRUE(manifest.contains("version"));
    }
}

TEST(Commands, GravityReportsFitWithResiduals) {
    auto ctx = context("gravity");
    const auto r = run_command("gravity", json::object(), ctx);
    const double g = r.summary["g_hat"], sigma = r.summary["sigma_g_hat"];
    EXPECT_LT(std::abs(g - 9.7916378), 3 * sigma);
    const auto residuals = io::read_csv(ctx.out_dir / "gravity_residuals.csv");
    EXPECT_EQ(residuals.header, (std::vector<std::string>{"t_s", "population", "model", "residual"}));
    EXPECT_EQ(residuals.rows.size(), 701u);
}

TEST(Commands, AllanFromCsvInput) {
    auto sim = context("allan_src");
    sim.config = CycleConfig::case_study_100hz();
    run_command("simulate", json{{"shots", 5000}}, sim);
    auto ctx = context("allan_in");
    ctx.config = sim.config;
    const auto r = run_command("allan", json{{"input", (sim.out_dir / "simulate.csv").string()}}, ctx);
    EXPECT_EQ(r.summary["samples"], 5000);
    const auto curve = io::read_csv(ctx.out_dir / "allan.csv");
    EXPECT_EQ(curve.header, (std::vector<std::string>{"tau_s", "adev", "adev_lo", "adev_hi", "n_pairs"}));
    EXPECT_NEAR(curve.rows.front()[0], 0.01, 1e-15);
}

TEST(Commands, AllanConstantInputAndShortInput) {
    auto ctx = context("allan_const");
    const auto path = ctx.out_dir / "const.csv";
    {
        io::CsvWriter w(path, {"timestamp_s", "population"});
        for (int i = 0; i < 500; ++i) w.row(std::vector<double>{i * 0.01, 0.5});
    }
    run_command("allan", json{{"input", path.string()}}, ctx);
    for (const auto& row : io::read_csv(ctx.out_dir / "allan.csv").rows) EXPECT_EQ(row[1], 0.0);

    const auto short_path = ctx.out_dir / "short.csv";
    {
        io::CsvWriter w(short_path, {"timestamp_s", "population"});
        for (int i = 0; i < 50; ++i) w.row(std::vector<double>{i * 0.01, 0.5});
    }
    EXPECT_THROW(run_command("allan", json{{"input", short_path.string()}}, ctx), InsufficientDataError);
}

TEST(Commands, SweepListsInfeasibleRatesAndContinues) {
    auto ctx = context("sweep");
    const auto r = run_command("sweep", json{{"rates", {100, 5000, 330}}, {"shots", 10000}}, ctx);
    EXPECT_EQ(r.summary["rows"].size(), 2u);
    ASSERT_EQ(r.summary["infeasible"].size(), 1u);
    EXPECT_EQ(r.summary["infeasible"][0]["rate_hz"], 5000.0);
    EXPECT_EQ(io::read_csv(ctx.out_dir / "sweep.csv").rows.size(), 2u);
}

TEST(Commands, NoiseReport) {
    auto ctx = context("noise");
    const auto r = run_command("noise-report", json::object(), ctx);
    EXPECT_NEAR(r.summary["quadrature_subtotal_rad"].get<double>(), 26e-3, 1e-3);
    EXPECT_NEAR(r.summary["total_rad"].get<double>(), 31.1e-3, 0.05e-3);
    const double ratio = r.summary["ratio_to_floor"];
    EXPECT_GE(ratio, 5.0);
    EXPECT_LE(ratio, 15.0);
    // Projected sensitivity once technical noise is removed, against 100 ng/sqrt(Hz) within x3.
    const double projected = r.summary["what_if"][1]["sigma_s_g_per_rthz"];
    EXPECT_GE(projected, 100e-9 / 3);
    EXPECT_LE(projected, 100e-9 * 3);
}

TEST(Commands, ZeroedBudgetLeavesOnlyProjectionFloor) {
    auto ctx = context("noise_zero");
    ctx.config.noise.raman_phase_noise = ctx.config.noise.magnetic_noise = ctx.config.noise.residual_noise = 0.0;
    const auto r = run_command("noise-report", json::object(), ctx);
    EXPECT_EQ(r.summary["total_rad"].get<double>(), 0.0);
    const double floor = r.summary["projection_floor_rad"];
    EXPECT_GT(floor, 0.0);
    EXPECT_DOUBLE_EQ(r.summary["what_if"][0]["phase_noise_rad"].get<double>(), floor);
}

TEST(Commands, CanonicalConfigIsAFixedPoint) {
    auto cfg = CycleConfig::reference();
    cfg.physical.rabi_frequency = constants::two_pi * 123.456789e3;
    const auto c = canonical_config(cfg);
    EXPECT_EQ(config_to_json(config_from_json(config_to_json(c))).dump(), config_to_json(c).dump());
}
