#include "lpai/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "lpai/analysis/allan.hpp"
#include "lpai/analysis/gravity_fit.hpp"
#include "lpai/analysis/sensitivity.hpp"
#include "lpai/analysis/sweep.hpp"
#include "lpai/config.hpp"
#include "lpai/ensemble.hpp"
#include "lpai/error.hpp"
#include "lpai/io/format.hpp"
#include "lpai/noise.hpp"
#include "lpai/random.hpp"
#include "lpai/simulation.hpp"

#ifndef LPAI_VERSION
#define LPAI_VERSION "0.0.0"
#endif

namespace lpai::app {

using nlohmann::json;
namespace fs = std::filesystem;

const char* tool_version() noexcept { return LPAI_VERSION; }

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

CycleConfig canonical_config(const CycleConfig& cfg) {
    CycleConfig out = cfg;
    std::string text = config_to_json(out).dump();
    for (int i = 0; i < 8; ++i) {
        out = config_from_json(json::parse(text));
        std::string next = config_to_json(out).dump();
        if (next == text) return out;
        text = std::move(next);
    }
    return out;
}

namespace {

// Fills defaults into the caller's arguments and rejects unknown keys.
json merge_arguments(const std::string& command, const json& given, const json& defaults) {
    if (!given.is_null() && !given.is_object()) throw InvalidArgumentError(command + ": arguments must be an object");
    json out = defaults;
    if (given.is_object()) {
        for (auto it = given.begin(); it != given.end(); ++it) {
            if (!defaults.contains(it.key())) throw InvalidArgumentError(command + ": unknown argument '" + it.key() + "'");
            if (!it->is_null()) out[it.key()] = *it;
        }
    }
    return out;
}

template <typename T>
T arg(const json& args, const char* key) {
    try {
        return args.at(key).get<T>();
    } catch (const json::exception&) {
        throw InvalidArgumentError(std::string("argument '") + key + "' has the wrong type");
    }
}

std::size_t count_arg(const json& args, const char* key) {
    const auto& v = args.at(key);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
        throw InvalidArgumentError(std::string("argument '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string extension(OutputFormat f) { return f == OutputFormat::Json ? ".json" : ".csv"; }

void write_json(const fs::path& path, const json& doc) { io::write_text(path, doc.dump(2) + "\n"); }

void write_shots(const fs::path& path, OutputFormat format, const std::vector<ShotRecord>& shots) {
    if (format == OutputFormat::Json) {
        json rows = json::array();
        for (const auto& s : shots) {
            rows.push_back({{"shot", s.index},
                            {"timestamp_s", s.timestamp},
                            {"applied_phase_rad", s.applied_phase},
                            {"true_phase_rad", s.true_phase},
                            {"signal_f2", s.signal_f2},
                            {"signal_total", s.signal_total},
                            {"population", s.population},
                            {"atom_number", s.atom_number}});
        }
        write_json(path, rows);
        return;
    }
    io::CsvWriter csv(path, {"shot", "timestamp_s", "applied_phase_rad", "true_phase_rad", "signal_f2", "signal_total",
                             "population", "atom_number"});
    for (const auto& s : shots) {
        csv.row({static_cast<double>(s.index), s.timestamp, s.applied_phase, s.true_phase, s.signal_f2,
                 s.signal_total, s.population, s.atom_number});
    }
}

json allan_json(const analysis::AllanCurve& curve) {
    json rows = json::array();
    for (const auto& p : curve.points) {
        rows.push_back({{"tau_s", p.tau}, {"adev", p.deviation}, {"adev_lo", p.lower}, {"adev_hi", p.upper},
                        {"n_pairs", p.pairs}});
    }
    return rows;
}

void write_allan(const fs::path& path, OutputFormat format, const analysis::AllanCurve& curve) {
    if (format == OutputFormat::Json) {
        write_json(path, allan_json(curve));
        return;
    }
    io::CsvWriter csv(path, {"tau_s", "adev", "adev_lo", "adev_hi", "n_pairs"});
    for (const auto& p : curve.points) csv.row({p.tau, p.deviation, p.lower, p.upper, static_cast<double>(p.pairs)});
}

struct Outcome {
    std::vector<std::string> outputs;
    json summary;
};

// simulate ------------------------------------------------------------------

json simulate_defaults() { return {{"mode", "mid-fringe"}, {"shots", nullptr}}; }

Outcome run_simulate(const json& args, const RunContext& ctx) {
    const auto mode_name = arg<std::string>(args, "mode");
    ScanMode mode;
    if (mode_name == "fringe-scan") {
        mode = ScanMode::FringeScan;
    } else if (mode_name == "mid-fringe") {
        mode = ScanMode::MidFringe;
    } else {
        throw InvalidArgumentError("simulate: mode must be fringe-scan or mid-fringe, got '" + mode_name + "'");
    }
    const std::size_t shots = count_arg(args, "shots");
    if (shots == 0) throw InvalidArgumentError("simulate: shots must be > 0");

    const auto records = simulate_shots(ctx.config, mode, shots, ctx.seed);
    const std::string name = "simulate" + extension(ctx.format);
    write_shots(ctx.out_dir / name, ctx.format, records);

    json summary{{"shots", shots}, {"mode", mode_name}};
    if (mode == ScanMode::MidFringe && shots >= 100) {
        const auto est = estimate_sensitivity(records, ctx.config);
        summary["phase_noise_rad"] = est.phase_noise;
        summary["sigma_g_per_shot"] = est.sigma_g;
        summary["sigma_s_g_per_rthz"] = est.sigma_s;
    }
    return {{name}, summary};
}

// gravity ---------------------------------------------------------------------

json gravity_defaults() {
    const GravityScan scan;
    const analysis::GravityFitOptions fit;
    return {{"t_min", scan.t_min},         {"t_max", scan.t_max},     {"t_step", scan.t_step},
            {"shots_per_point", scan.shots_per_point}, {"g_prior", fit.g_prior}, {"g_window", fit.g_window},
            {"envelope_time_guess", fit.envelope_time_guess}, {"linear_term", fit.include_linear_term}};
}

analysis::GravityFitOptions gravity_options(const json& args) {
    analysis::GravityFitOptions fit;
    fit.g_prior = arg<double>(args, "g_prior");
    fit.g_window = arg<double>(args, "g_window");
    fit.envelope_time_guess = arg<double>(args, "envelope_time_guess");
    fit.include_linear_term = arg<bool>(args, "linear_term");
    return fit;
}

Outcome run_gravity(const json& args, const RunContext& ctx) {
    GravityScan scan;
    scan.t_min = arg<double>(args, "t_min");
    scan.t_max = arg<double>(args, "t_max");
    scan.t_step = arg<double>(args, "t_step");
    scan.shots_per_point = count_arg(args, "shots_per_point");
    const auto fit_options = gravity_options(args);

    const auto shots = simulate_gravity_scan(ctx.config, scan, ctx.seed);
    std::vector<double> t(shots.size()), p(shots.size());
    for (std::size_t i = 0; i < shots.size(); ++i) {
        t[i] = shots[i].interrogation_time;
        p[i] = shots[i].population;
    }
    const auto fit = analysis::fit_chirped_gravity(t, p, ctx.config.physical, fit_options);

    {
        io::CsvWriter csv(ctx.out_dir / "gravity_residuals.csv", {"t_s", "population", "model", "residual"});
        for (std::size_t i = 0; i < t.size(); ++i) {
            csv.row({t[i], p[i], p[i] - fit.residuals[i], fit.residuals[i]});
        }
    }
    json cov = json::array();
    for (int r = 0; r < 5; ++r) {
        json row = json::array();
        for (int c = 0; c < 5; ++c) row.push_back(fit.covariance(r, c));
        cov.push_back(row);
    }
    const double g_true = ctx.config.physical.gravity;
    json result{{"g_hat", fit.g_hat},
                {"sigma_g_hat", fit.sigma_g_hat},
                {"g_true", g_true},
                {"deviation_sigmas", fit.sigma_g_hat > 0 ? (fit.g_hat - g_true) / fit.sigma_g_hat : 0.0},
                {"phase_origin", fit.phase_origin},
                {"amplitude", fit.amplitude},
                {"envelope_time", fit.envelope_time},
                {"offset", fit.offset},
                {"covariance_order", {"g", "phase_origin", "amplitude", "envelope_time", "offset"}},
                {"covariance", cov},
                {"residual_rms", fit.residual_rms},
                {"iterations", fit.iterations},
                {"grid_points", fit.grid_points},
                {"ambiguity_margin", std::isfinite(fit.ambiguity_margin) ? json(fit.ambiguity_margin) : json(nullptr)},
                {"samples", t.size()}};
    write_json(ctx.out_dir / "gravity.json", result);
    return {{"gravity.json", "gravity_residuals.csv"}, result};
}

// allan -----------------------------------------------------------------------

json allan_defaults() {
    return {{"input", ""}, {"shots", 12000}, {"overlapping", false}, {"disturbance_period", 0.0},
            {"disturbance_amplitude", 0.0}};
}

Outcome run_allan(const json& args, const RunContext& ctx) {
    CycleConfig cfg = ctx.config;
    const auto period = arg<double>(args, "disturbance_period");
    const auto amplitude = arg<double>(args, "disturbance_amplitude");
    if (amplitude != 0.0) {
        if (!(period > 0.0)) throw InvalidArgumentError("allan: disturbance_period must be > 0");
        cfg.noise.disturbances.push_back({period, amplitude, 0.0});
    }

    analysis::ShotSeries series;
    const auto input = arg<std::string>(args, "input");
    const double interrogation = cfg.timing().interrogation_time();
    if (!input.empty()) {
        const auto table = io::read_csv(input);
        const auto ct = table.column({"timestamp_s", "timestamp"});
        const auto cp = table.column({"population"});
        std::size_t ca = table.header.size();
        for (std::size_t i = 0; i < table.header.size(); ++i) {
            if (table.header[i] == "applied_phase_rad" || table.header[i] == "applied_phase") ca = i;
        }
        for (const auto& row : table.rows) {
            series.timestamps.push_back(row[ct]);
            series.normalized_populations.push_back(row[cp]);
            series.applied_phases.push_back(ca < row.size() ? row[ca] : 0.0);
        }
        series.data_rate = cfg.data_rate;
        series.interrogation_time = interrogation;
    } else {
        const std::size_t shots = count_arg(args, "shots");
        series = to_series(simulate_shots(cfg, ScanMode::MidFringe, shots, ctx.seed), cfg);
    }
    if (series.normalized_populations.size() < 100) {
        throw InsufficientDataError("allan: need at least 100 samples, got " +
                                    std::to_string(series.normalized_populations.size()));
    }
    series.validate(cfg.timing_quantum);

    const auto scale = mid_fringe_scale(cfg);
    const auto curve = analysis::allan_deviation(series, scale);
    std::vector<std::string> outputs;
    const std::string name = "allan" + extension(ctx.format);
    write_allan(ctx.out_dir / name, ctx.format, curve);
    outputs.push_back(name);
    if (arg<bool>(args, "overlapping")) {
        const auto y = analysis::accel_residuals(series.normalized_populations, scale);
        const auto ocurve = analysis::overlapping_allan_deviation(y, 1.0 / series.data_rate);
        const std::string oname = "allan_overlapping" + extension(ctx.format);
        write_allan(ctx.out_dir / oname, ctx.format, ocurve);
        outputs.push_back(oname);
    }
    json summary{{"samples", series.normalized_populations.size()}, {"points", curve.points.size()}};
    if (!curve.points.empty()) {
        summary["tau0_s"] = curve.points.front().tau;
        summary["adev_tau0"] = curve.points.front().deviation;
        summary["sigma_s_g_per_rthz"] = curve.points.front().deviation / std::sqrt(series.data_rate);
    }
    return {outputs, summary};
}

// sweep -----------------------------------------------------------------------

json sweep_defaults() { return {{"rates", analysis::reference_sweep_rates()}, {"shots", 20000}}; }

Outcome run_sweep(const json& args, const RunContext& ctx) {
    std::vector<double> rates;
    try {
        rates = args.at("rates").get<std::vector<double>>();
    } catch (const json::exception&) {
        throw InvalidArgumentError("sweep: rates must be a list of numbers");
    }
    if (rates.empty()) throw InvalidArgumentError("sweep: rate list is empty");
    const std::size_t shots = count_arg(args, "shots");

    io::CsvWriter csv(ctx.out_dir / "sweep.csv",
                      {"rate_hz", "cycle_time_s", "interrogation_time_s", "duty_cycle", "phase_noise_rad",
                       "phase_noise_mean_rad", "sigma_g", "sigma_s", "sigma_s_mean_noise", "sigma_s_mc",
                       "phase_noise_mc_rad", "recapture_fraction", "equilibrium_atoms", "projection_floor_rad"});
    json rows = json::array();
    json skipped = json::array();
    for (std::size_t i = 0; i < rates.size(); ++i) {
        // Per-rate stream, so a skipped rate does not shift the others.
        const std::uint64_t seed = RandomStream(ctx.seed, i).seed();
        try {
            const auto r = analysis::sweep_rate(ctx.config, rates[i], shots, seed);
            csv.row({r.rate, r.cycle_time, r.interrogation_time, r.duty_cycle, r.phase_noise, r.phase_noise_mean,
                     r.sigma_g, r.sigma_s, r.sigma_s_mean_noise, r.sigma_s_mc, r.phase_noise_mc,
                     r.recapture_fraction, r.equilibrium_atoms, r.projection_floor});
            rows.push_back({{"rate_hz", r.rate},
                            {"duty_cycle", r.duty_cycle},
                            {"sigma_s", r.sigma_s},
                            {"sigma_s_mean_noise", r.sigma_s_mean_noise},
                            {"sigma_s_mc", r.sigma_s_mc},
                            {"recapture_fraction", r.recapture_fraction},
                            {"equilibrium_atoms", r.equilibrium_atoms}});
        } catch (const InfeasibleRateError& e) {
            skipped.push_back({{"rate_hz", rates[i]}, {"error", e.what()}});
        }
    }
    json summary{{"rows", rows}, {"infeasible", skipped}, {"shots_per_rate", shots}};
    write_json(ctx.out_dir / "sweep.json", summary);
    return {{"sweep.csv", "sweep.json"}, summary};
}

// noise-report ------------------------------------------------------------------

json noise_defaults() { return json::object(); }

Outcome run_noise_report(const json&, const RunContext& ctx) {
    const auto& cfg = ctx.config;
    const auto& n = cfg.noise;
    const auto timing = cfg.timing();
    const double T = timing.interrogation_time();
    const double atoms = equilibrium_atom_number(cfg);
    const double participating = atoms * (1.0 - cfg.spectator_fraction());
    const double contrast = cfg.fringe.contrast;
    const double floor = participating >= 1.0 ? projection_noise_phase(participating, contrast) : 0.0;
    const double total = total_shot_noise(n, cfg.data_rate);
    const double mean_total = mean_shot_noise(n);
    auto sensitivity = [&](double dphi) {
        return analysis::short_term_sensitivity(analysis::shot_sensitivity(dphi, cfg.physical, T), cfg.data_rate);
    };

    json what_if = json::array();
    const double no_technical = std::hypot(n.residual_noise, floor);
    what_if.push_back({{"name", "raman_and_magnetic_zeroed"},
                       {"phase_noise_rad", no_technical},
                       {"sigma_s_g_per_rthz", sensitivity(no_technical)}});
    if (floor > 0.0) {
        what_if.push_back({{"name", "projection_limited"},
                           {"phase_noise_rad", floor},
                           {"sigma_s_g_per_rthz", sensitivity(floor)}});
    }

    json report{{"data_rate_hz", cfg.data_rate},
                {"interrogation_time_s", T},
                {"components_rad", {{"raman", n.raman_phase_noise}, {"magnetic", n.magnetic_noise},
                                    {"residual", n.residual_noise}}},
                {"quadrature_subtotal_rad", quadrature_total(n)},
                {"total_rad", mean_total},
                {"total_at_rate_rad", total},
                {"rate_rolloff", n.rate_rolloff},
                {"equilibrium_atoms", atoms},
                {"participating_atoms", participating},
                {"contrast", contrast},
                {"projection_floor_rad", floor},
                {"ratio_to_floor", floor > 0.0 ? json(mean_total / floor) : json(nullptr)},
                {"sigma_s_g_per_rthz", sensitivity(total)},
                {"what_if", what_if}};
    write_json(ctx.out_dir / "noise_report.json", report);
    return {{"noise_report.json"}, report};
}

struct CommandSpec {
    json (*defaults)();
    Outcome (*run)(const json&, const RunContext&);
};

const std::map<std::string, CommandSpec>& registry() {
    static const std::map<std::string, CommandSpec> table{
        {"simulate", {simulate_defaults, run_simulate}}, {"gravity", {gravity_defaults, run_gravity}},
        {"allan", {allan_defaults, run_allan}},          {"sweep", {sweep_defaults, run_sweep}},
        {"noise-report", {noise_defaults, run_noise_report}},
    };
    return table;
}

std::string format_name(OutputFormat f) { return f == OutputFormat::Json ? "json" : "csv"; }

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, spec] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

CommandResult run_command(const std::string& command, const json& arguments, const RunContext& input) {
    const auto it = registry().find(command);
    if (it == registry().end()) throw InvalidArgumentError("unknown command '" + command + "'");

    RunContext ctx = input;
    ctx.config = canonical_config(input.config);
    json args = merge_arguments(command, arguments, it->second.defaults());
    if (command == "simulate" && args["shots"].is_null()) {
        args["shots"] = args["mode"] == "fringe-scan" ? 400 : 12000;
    }

    std::error_code ec;
    fs::create_directories(ctx.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + ctx.out_dir.string() + ": " + ec.message());

    Outcome outcome = it->second.run(args, ctx);
    outcome.outputs.push_back("manifest.json");

    json manifest{{"tool", "lpai"},
                  {"version", tool_version()},
                  {"command", command},
                  {"arguments", args},
                  {"seed", ctx.seed},
                  {"format", format_name(ctx.format)},
                  {"outputs", outcome.outputs},
                  {"config", config_to_json(ctx.config)}};
    write_json(ctx.out_dir / "manifest.json", manifest);

    return {command, args, outcome.outputs, outcome.summary};
}

CommandResult replay_manifest(const fs::path& path, const fs::path& out_dir) {
    json manifest;
    try {
        manifest = json::parse(io::read_text(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    try {
        RunContext ctx;
        ctx.config = config_from_json(manifest.at("config"));
        ctx.seed = manifest.at("seed").get<std::uint64_t>();
        ctx.out_dir = out_dir;
        const auto format = manifest.at("format").get<std::string>();
        if (format != "csv" && format != "json") throw ConfigError(path.string() + ": bad format '" + format + "'");
        ctx.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        return run_command(manifest.at("command").get<std::string>(), manifest.at("arguments"), ctx);
    } catch (const json::exception& e) {
        throw ConfigError(path.string() + ": malformed manifest: " + e.what());
    }
}

}  // namespace lpai::app
