// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "lpai/analysis/allan.hpp"
#include "lpai/analysis/sensitivity.hpp"
#include "lpai/analysis/sweep.hpp"
#include "lpai/app/commands.hpp"
#include "lpai/cycle_config.hpp"
#include "lpai/detection.hpp"
#include "lpai/ensemble.hpp"
#include "lpai/error.hpp"
#include "lpai/interferometer.hpp"
#include "lpai/io/format.hpp"
#include "lpai/noise.hpp"
#include "lpai/random.hpp"
#include "lpai/simulation.hpp"

using namespace lpai;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void check(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail << (detail.tellp() > 0 ? "; " : "") << what << (ok ? "" : " [failed]");
    }
};

std::string num(double v, int digits = 4) {
    std::ostringstream s;
    s << std::setprecision(digits) << v;
    return s.str();
}

bool within_rel(double value, double target, double tol) { return std::abs(value - target) <= tol * std::abs(target); }

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "lpai_acceptance" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

app::RunContext context(const std::string& name, const CycleConfig& cfg, std::uint64_t seed) {
    app::RunContext ctx;
    ctx.config = cfg;
    ctx.seed = seed;
    ctx.out_dir = scratch(name);
    return ctx;
}

const PhysicalParams params;
const double k = params.effective_wavevector();
const double g = params.gravity;

void doppler_chirp(Outcome& o) {
    const double khz_per_ms = doppler_chirp_rate(k, g) / constants::two_pi * 1e-6;
    o.check(within_rel(khz_per_ms, 25.1, 0.004), "2pi x " + num(khz_per_ms, 5) + " kHz/ms vs 25.1 +-0.4%");
}

void fringe_scale(Outcome& o) {
    const double mg = phase_to_accel(constants::pi, k, 3.415e-3) / g * 1e3;
    o.check(within_rel(mg, 1.71, 0.01), "pi fringe = " + num(mg) + " mg vs 1.71 +-1%");
}

void sensitivity_100hz(Outcome& o) {
    const auto cfg = CycleConfig::case_study_100hz();
    const auto est = estimate_sensitivity(simulate_shots(cfg, ScanMode::MidFringe, 12000, 2011), cfg);
    o.check(within_rel(est.sigma_s, 1.6e-6, 0.15),
            "sigma_s = " + num(est.sigma_s * 1e6) + " ug/rtHz vs 1.6 +-15% (dphi " + num(est.phase_noise * 1e3) +
                " mrad)");
}

void rate_sweep(Outcome& o) {
    auto ctx = context("sweep", CycleConfig::reference(), 330);
    const auto r = app::run_command("sweep", json{{"shots", 20000}}, ctx);
    const auto table = io::read_csv(ctx.out_dir / "sweep.csv");
    const auto cr = table.column({"rate_hz"}), cs = table.column({"sigma_s"}), cd = table.column({"duty_cycle"});
    const auto& lo = table.rows.front();
    const auto& hi = table.rows.back();
    o.check(lo[cr] == 50.0 && hi[cr] == 330.0, "grid 50..330 Hz");
    o.check(within_rel(lo[cs], 0.57e-6, 0.3), "50 Hz " + num(lo[cs] * 1e6, 3) + " ug/rtHz vs 0.57 +-30%");
    o.check(within_rel(hi[cs], 36.7e-6, 0.3), "330 Hz " + num(hi[cs] * 1e6, 3) + " ug/rtHz vs 36.7 +-30%");
    o.check(std::abs(lo[cd] - 0.75) <= 0.05 && std::abs(hi[cd] - 0.30) <= 0.05,
            "duty " + num(lo[cd] * 100, 3) + "% -> " + num(hi[cd] * 100, 3) + "%");
    bool monotone = true;
    for (std::size_t i = 1; i < table.rows.size(); ++i) {
        monotone &= table.rows[i][cs] > table.rows[i - 1][cs] && table.rows[i][cd] < table.rows[i - 1][cd];
    }
    o.check(monotone, "sigma_s increasing, duty decreasing in R");
    o.check(r.summary["infeasible"].empty(), "all rates feasible");
}

void gravity_fit(Outcome& o) {
    const auto cfg = CycleConfig::reference();
    int inside = 0;
    std::vector<double> sigmas;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto ctx = context("gravity", cfg, seed);
        const auto r = app::run_command("gravity", json::object(), ctx);
        const double gh = r.summary["g_hat"], s = r.summary["sigma_g_hat"];
        inside += std::abs(gh - 9.7916378) < 3.0 * s;
        sigmas.push_back(s);
    }
    std::sort(sigmas.begin(), sigmas.end());
    const double median = 0.5 * (sigmas[9] + sigmas[10]);
    o.check(inside >= 18, std::to_string(inside) + "/20 within 3 sigma");
    o.check(median > 9.7e-6 / 3 && median < 9.7e-6 * 3, "median sigma " + num(median, 3) + " m/s^2 (order 1e-5)");
}

void allan_scaling(Outcome& o) {
    const auto cfg = CycleConfig::case_study_100hz();
    auto ctx = context("allan_white", cfg, 61);
    app::run_command("allan", json{{"shots", 100000}}, ctx);
    analysis::AllanCurve curve;
    for (const auto& row : io::read_csv(ctx.out_dir / "allan.csv").rows) {
        curve.points.push_back({row[0], row[1], row[2], row[3], static_cast<std::size_t>(row[4])});
    }
    const double slope = analysis::loglog_slope(curve, 0.01, 1.0);
    o.check(std::abs(slope + 0.5) <= 0.05, "slope " + num(slope, 3) + " over 0.01..1 s");

    const double period = 2.0;
    auto bump = context("allan_bump", cfg, 62);
    app::run_command("allan", json{{"shots", 100000}, {"disturbance_period", period}, {"disturbance_amplitude", 0.05}},
                     bump);
    const auto rows = io::read_csv(bump.out_dir / "allan.csv").rows;
    double peak_tau = 0.0;
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        if (rows[i][1] > rows[i - 1][1] && rows[i][1] > rows[i + 1][1] && rows[i][0] > 0.1) {
            peak_tau = rows[i][0];
            break;
        }
    }
    const double ratio = peak_tau / (period / 2);
    o.check(ratio >= 0.5 && ratio <= 2.0, "local max at " + num(peak_tau, 3) + " s for P/2 = " + num(period / 2, 3) + " s");
}

void noise_budget(Outcome& o) {
    const NoiseBudget b;
    const double sub = quadrature_total(b);
    o.check(std::abs(sub - 26e-3) <= 1e-3, "subtotal " + num(sub * 1e3, 3) + " mrad vs 26 +-1");
    const double ratio = mean_shot_noise(b) / projection_noise_phase(8.6e4, 1.0);
    o.check(ratio >= 5 && ratio <= 15, "total/floor " + num(ratio, 3) + " in [5, 15]");
}

void recapture_band(Outcome& o) {
    const auto base = CycleConfig::reference();
    bool band = true, ordered = true;
    double lo = 1, hi = 0, prev_tof = -1, prev_f = 2;
    std::vector<std::pair<double, double>> points;
    for (double rate : analysis::reference_sweep_rates()) {
        const auto cfg = base.at_rate(rate);
        points.push_back({cfg.timing().time_of_flight(), steady_cycle(cfg).recapture_fraction});
    }
    std::sort(points.begin(), points.end());
    for (const auto& [tof, f] : points) {
        band &= f >= 0.85 && f <= 0.95;
        ordered &= tof > prev_tof && f <= prev_f;
        lo = std::min(lo, f);
        hi = std::max(hi, f);
        prev_tof = tof;
        prev_f = f;
    }
    o.check(band, "fractions " + num(lo, 3) + ".." + num(hi, 3) + " in [0.85, 0.95]");
    o.check(ordered, "non-increasing with TOF");

    const auto state = steady_cycle(base.at_rate(50.0)).at_recapture;
    RandomStream rng(8);
    const int n = 1000000;
    int inside = 0;
    const double r2 = base.mot.capture_radius * base.mot.capture_radius;
    for (int i = 0; i < n; ++i) {
        const double x = rng.normal(0, state.rms_radius), y = rng.normal(0, state.rms_radius);
        const double z = rng.normal(state.position, state.rms_radius);
        inside += x * x + y * y + z * z <= r2;
    }
    const double mc = static_cast<double>(inside) / n, analytic = recapture_fraction(state, base.mot);
    o.check(std::abs(mc - analytic) <= 1e-3, "Monte-Carlo " + num(mc, 5) + " vs closed form " + num(analytic, 5));
}

void equilibrium_atoms(Outcome& o) {
    const auto cfg = CycleConfig::reference();
    const double n = equilibrium_atom_number(cfg);
    o.check(within_rel(n, 2e5, 0.2), "N* = " + num(n, 4) + " vs 2e5 +-20%");
    CloudState c;
    c.atom_number = 0;
    c.temperature = cfg.mot.post_cooling_temperature;
    c.rms_radius = cfg.mot.initial_cloud_radius;
    for (int i = 0; i < 1000; ++i) c = evolve_cycle(c, cfg);
    o.check(within_rel(c.atom_number, n, 1e-3), "1000-cycle iteration " + num(c.atom_number, 6));
}

void property_suite(Outcome& o) {
    auto a = context("determinism_a", CycleConfig::reference(), 99);
    auto b = context("determinism_b", CycleConfig::reference(), 99);
    const auto ra = app::run_command("simulate", json{{"shots", 12000}}, a);
    app::run_command("simulate", json{{"shots", 12000}}, b);
    bool same = true;
    for (const auto& f : ra.outputs) same &= io::read_text(a.out_dir / f) == io::read_text(b.out_dir / f);
    const auto replay = scratch("determinism_replay");
    app::replay_manifest(a.out_dir / "manifest.json", replay);
    for (const auto& f : ra.outputs) same &= io::read_text(a.out_dir / f) == io::read_text(replay / f);
    o.check(same, "same seed and replay byte-identical");

    RandomStream rng(10);
    const auto schedule = OverheadSchedule::reference();
    const auto pulses = pulses_from_rabi(params.rabi_frequency);
    bool idempotent = true, in_range = true, round_trip = true;
    for (int i = 0; i < 1000; ++i) {
        const double rate = rng.uniform(50, 330);
        const auto t = build_timing(rate, schedule.at(rate), pulses);
        idempotent &= build_timing(data_rate(t), t) == t;

        const FringeModel fm{rng.uniform(0, 1), rng.uniform(-0.5, 1.5), rng.uniform(-5, 5)};
        const double p = transition_probability(rng.uniform(-100, 100), fm);
        in_range &= p >= 0.0 && p <= 1.0;

        const double acc = rng.uniform(0.01, 20), tt = rng.uniform(1e-4, 10e-3);
        round_trip &= std::abs(phase_to_accel(mz_phase(acc, k, tt, 0, {}), k, tt) - acc) <= 1e-12 * acc;
    }
    o.check(idempotent, "quantization idempotent");
    o.check(in_range, "P in [0, 1]");
    o.check(round_trip, "mz_phase/phase_to_accel round trip 1e-12");

    DetectionConfig det;
    bool unbiased = true;
    std::string worst;
    for (double p : {0.1, 0.5, 0.9}) {
        double s = 0, s2 = 0;
        const int n = 20000;
        for (int i = 0; i < n; ++i) {
            const auto sig = simulate_detection(p, 2e5, det, rng);
            const double e = normalized_population(sig.signal_f2, sig.signal_total, det.spectator_fraction);
            s += e;
            s2 += e * e;
        }
        const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
        unbiased &= std::abs(mean - p) <= 3 * se;
        worst += (worst.empty() ? "" : ",") + num((mean - p) / se, 2);
    }
    o.check(unbiased, "estimator bias/SE at P=0.1,0.5,0.9: " + worst);
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        void (*run)(Outcome&);
    };
    const std::vector<Criterion> criteria{
        {"doppler chirp rate", doppler_chirp},      {"fringe scale factor", fringe_scale},
        {"100 Hz sensitivity", sensitivity_100hz},  {"rate sweep endpoints", rate_sweep},
        {"gravity fit", gravity_fit},               {"Allan scaling", allan_scaling},
        {"noise budget", noise_budget},             {"recapture band", recapture_band},
        {"equilibrium atoms", equilibrium_atoms},   {"property suite", property_suite},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(o);
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " (" << criteria[i].name << "): "
                  << o.detail.str() << "  [" << num(secs, 2) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failures == 0 ? 0 : 1;
}
