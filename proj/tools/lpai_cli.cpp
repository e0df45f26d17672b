// Command-line front end: lpai <command> [options].
#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "lpai/app/commands.hpp"
#include "lpai/config.hpp"
#include "lpai/error.hpp"

namespace {

void print_summary(const lpai::app::CommandResult& r, const std::string& out_dir) {
    std::cout << r.command << ": wrote";
    for (const auto& f : r.outputs) std::cout << ' ' << out_dir << '/' << f;
    std::cout << '\n' << r.summary.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Compact atom-interferometer gravimeter simulator"};
    cli.set_version_flag("--version", lpai::app::tool_version());
    cli.require_subcommand(1);
    cli.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = "out";
    std::string format = "csv";
    cli.add_option("--config", config_path, "JSON config (defaults to the built-in 100 Hz reference)");
    cli.add_option("--seed", seed, "RNG seed; drawn from entropy and recorded when omitted");
    cli.add_option("--out-dir", out_dir, "Directory for result files and manifest.json");
    cli.add_option("--format", format, "Format of the main data file")->check(CLI::IsMember({"csv", "json"}));

    nlohmann::json args = nlohmann::json::object();

    auto* simulate = cli.add_subcommand("simulate", "Simulate a fringe scan or a mid-fringe time series");
    std::string mode = "mid-fringe";
    std::optional<std::size_t> shots;
    simulate->add_option("--mode", mode, "fringe-scan | mid-fringe")->check(CLI::IsMember({"fringe-scan", "mid-fringe"}));
    simulate->add_option("--shots", shots, "Shot count (400 fringe-scan, 12000 mid-fringe)");

    auto* gravity = cli.add_subcommand("gravity", "T-scan without chirp compensation and chirped gravity fit");
    double t_min = 0.0, t_max = 7e-3, t_step = 10e-6, g_prior = 9.8, g_window = 0.05;
    std::size_t per_point = 1;
    bool no_linear = false;
    gravity->add_option("--t-min", t_min, "Shortest interrogation time, s");
    gravity->add_option("--t-max", t_max, "Longest interrogation time, s");
    gravity->add_option("--t-step", t_step, "Interrogation time step, s");
    gravity->add_option("--shots-per-point", per_point, "Shots at each T");
    gravity->add_option("--g-prior", g_prior, "Centre of the g search window, m/s^2");
    gravity->add_option("--g-window", g_window, "Half width of the g search window, m/s^2");
    gravity->add_flag("--no-linear-term", no_linear, "Fit without the finite-pulse linear phase term");

    auto* allan = cli.add_subcommand("allan", "Allan deviation of a mid-fringe series");
    std::string input;
    std::size_t allan_shots = 12000;
    bool overlapping = false;
    double dist_period = 0.0, dist_amplitude = 0.0;
    allan->add_option("--input", input, "CSV with timestamp_s and population columns (simulates when omitted)")
        ->check(CLI::ExistingFile);
    allan->add_option("--shots", allan_shots, "Shots to simulate when no input is given");
    allan->add_flag("--overlapping", overlapping, "Also write the overlapping estimator");
    allan->add_option("--disturbance-period", dist_period, "Injected sinusoidal phase disturbance period, s");
    allan->add_option("--disturbance-amplitude", dist_amplitude, "Injected disturbance amplitude, rad");

    auto* sweep = cli.add_subcommand("sweep", "Sensitivity and duty cycle versus data rate");
    std::vector<double> rates;
    std::size_t sweep_shots = 20000;
    sweep->add_option("--rates", rates, "Data rates, Hz (default 50 75 100 150 200 250 300 330)");
    sweep->add_option("--shots", sweep_shots, "Monte-Carlo shots per rate (>= 10000)");

    auto* noise = cli.add_subcommand("noise-report", "Phase-noise budget and projection-noise floor");

    auto* replay = cli.add_subcommand("replay", "Re-run a manifest.json");
    std::string manifest;
    replay->add_option("manifest", manifest, "Manifest written by a previous run")->required()->check(CLI::ExistingFile);

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = cli.exit(e);
        return code == 0 ? 0 : static_cast<int>(lpai::ErrorCategory::InvalidArgument);
    }

    try {
        lpai::app::CommandResult result;
        if (replay->parsed()) {
            result = lpai::app::replay_manifest(manifest, out_dir);
            print_summary(result, out_dir);
            return 0;
        }

        lpai::app::RunContext ctx;
        ctx.config = config_path.empty() ? lpai::CycleConfig::reference() : lpai::load_config(config_path);
        ctx.seed = seed ? *seed : lpai::app::entropy_seed();
        ctx.out_dir = out_dir;
        ctx.format = format == "json" ? lpai::app::OutputFormat::Json : lpai::app::OutputFormat::Csv;

        std::string command;
        if (simulate->parsed()) {
            command = "simulate";
            args["mode"] = mode;
            if (shots) args["shots"] = *shots;
        } else if (gravity->parsed()) {
            command = "gravity";
            args = {{"t_min", t_min},   {"t_max", t_max},       {"t_step", t_step}, {"shots_per_point", per_point},
                    {"g_prior", g_prior}, {"g_window", g_window}, {"linear_term", !no_linear}};
        } else if (allan->parsed()) {
            command = "allan";
            args = {{"input", input},
                    {"shots", allan_shots},
                    {"overlapping", overlapping},
                    {"disturbance_period", dist_period},
                    {"disturbance_amplitude", dist_amplitude}};
        } else if (sweep->parsed()) {
            command = "sweep";
            args["shots"] = sweep_shots;
            if (!rates.empty()) args["rates"] = rates;
        } else if (noise->parsed()) {
            command = "noise-report";
        }
        result = lpai::app::run_command(command, args, ctx);
        print_summary(result, out_dir);
        return 0;
    } catch (const lpai::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
