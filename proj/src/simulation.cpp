#include "lpai/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "lpai/error.hpp"

namespace lpai {

namespace {

constexpr std::size_t kBatch = 2048;

template <class Fn>
void for_each_batch(std::size_t count, Fn&& fn) {
    const std::size_t batches = (count + kBatch - 1) / kBatch;
    std::vector<std::future<void>> jobs;
    jobs.reserve(batches);
    for (std::size_t b = 0; b < batches; ++b) {
        const std::size_t begin = b * kBatch;
        const std::size_t end = std::min(count, begin + kBatch);
        jobs.push_back(std::async(std::launch::async, [&fn, b, begin, end] { fn(b, begin, end); }));
    }
    for (auto& j : jobs) j.get();
}

}  // namespace

std::vector<ShotRecord> simulate_shots(const CycleConfig& cfg, ScanMode mode, std::size_t shots, std::uint64_t seed) {
    cfg.validate();
    const TimingSequence timing = cfg.timing();
    const double k = cfg.physical.effective_wavevector();
    const double g = cfg.physical.gravity;
    const double t_interrogation = timing.interrogation_time();
    const double chirp = doppler_chirp_rate(k, g);
    const double period = timing.cycle_time();

    // Cycle evolution is serial; only the noise draws fan out.
    std::vector<ShotRecord> out(shots);
    CloudState cloud = steady_cycle(cfg.mot, timing, cfg.physical).at_cycle_start;
    for (std::size_t i = 0; i < shots; ++i) {
        out[i].index = i;
        out[i].timestamp = static_cast<double>(i) * period;
        out[i].atom_number = cloud.atom_number;
        out[i].applied_phase = mode == ScanMode::FringeScan
                                   ? 4.0 * constants::pi * static_cast<double>(i) / static_cast<double>(shots)
                                   : 0.5 * constants::pi - cfg.fringe.phase_origin;
        cloud = evolve_cycle(cloud, cfg.mot, timing, cfg.physical);
    }

    const RandomStream base(seed);
    for_each_batch(shots, [&](std::size_t b, std::size_t begin, std::size_t end) {
        RandomStream phase_rng = base.split(2 * b);
        RandomStream detect_rng = base.split(2 * b + 1);
        for (std::size_t i = begin; i < end; ++i) {
            ShotRecord& s = out[i];
            PulseSequencePhases laser;
            laser.applied_scan_phase = s.applied_phase;
            s.true_phase = mz_phase(g, k, t_interrogation, chirp, laser) +
                           sample_shot_phase_noise(cfg.noise, cfg.data_rate, phase_rng) +
                           disturbance_phase(cfg.noise.disturbances, s.timestamp);
            const double p = transition_probability(s.true_phase, cfg.fringe);
            const DetectionSignals sig = simulate_detection(p, s.atom_number, cfg.detection, detect_rng);
            s.signal_f2 = sig.signal_f2;
            s.signal_total = sig.signal_total;
            s.population = normalized_population(sig.signal_f2, sig.signal_total, cfg.spectator_fraction());
        }
    });
    return out;
}

analysis::ShotSeries to_series(const std::vector<ShotRecord>& shots, const CycleConfig& cfg) {
    analysis::ShotSeries s;
    s.data_rate = 1.0 / cfg.timing().cycle_time();
    s.interrogation_time = cfg.timing().interrogation_time();
    s.timestamps.reserve(shots.size());
    for (const auto& r : shots) {
        s.timestamps.push_back(r.timestamp);
        s.normalized_populations.push_back(r.population);
        s.applied_phases.push_back(r.applied_phase);
    }
    return s;
}

std::vector<GravityShot> simulate_gravity_scan(const CycleConfig& cfg, const GravityScan& scan, std::uint64_t seed) {
    cfg.validate();
    if (!(scan.t_step > 0.0) || !(scan.t_max >= scan.t_min) || scan.t_min < 0.0 || scan.shots_per_point == 0) {
        throw InvalidArgumentError("gravity scan needs 0 <= t_min <= t_max, t_step > 0, shots_per_point >= 1");
    }
    const double q = cfg.timing_quantum;
    const std::int64_t step_ticks = std::max<std::int64_t>(1, quantize_down(scan.t_step, q));
    const std::int64_t lo = quantize_down(scan.t_min, q);
    const std::int64_t hi = quantize_down(scan.t_max, q);

    std::vector<GravityShot> out;
    for (std::int64_t n = lo; n <= hi; n += step_ticks) {
        for (std::size_t rep = 0; rep < scan.shots_per_point; ++rep) {
            out.push_back({static_cast<double>(n) * q, 0.0, 0.0});
        }
    }

    const double k = cfg.physical.effective_wavevector();
    const double g = cfg.physical.gravity;
    const double tau_pi = pi_pulse_duration(cfg.physical.rabi_frequency);
    const double atoms = steady_cycle(cfg).atom_number;
    const double period = cfg.timing().cycle_time();
    const Envelope env = exponential_envelope(cfg.envelope_time);

    const RandomStream base(seed);
    for_each_batch(out.size(), [&](std::size_t b, std::size_t begin, std::size_t end) {
        RandomStream phase_rng = base.split(2 * b);
        RandomStream detect_rng = base.split(2 * b + 1);
        for (std::size_t i = begin; i < end; ++i) {
            GravityShot& s = out[i];
            const double t = s.interrogation_time;
            s.true_phase = chirped_phase(t, g, k, tau_pi, cfg.fringe.phase_origin) +
                           sample_shot_phase_noise(cfg.noise, cfg.data_rate, phase_rng) +
                           disturbance_phase(cfg.noise.disturbances, static_cast<double>(i) * period);
            const double p = std::clamp(0.5 * cfg.fringe.contrast * env(t) * std::cos(s.true_phase) + cfg.fringe.offset,
                                        0.0, 1.0);
            const DetectionSignals sig = simulate_detection(p, atoms, cfg.detection, detect_rng);
            s.population = normalized_population(sig.signal_f2, sig.signal_total, cfg.spectator_fraction());
        }
    });
    return out;
}

analysis::MidFringeScale mid_fringe_scale(const CycleConfig& cfg) {
    analysis::MidFringeScale scale;
    scale.contrast = cfg.fringe.contrast;
    scale.gravity = cfg.physical.gravity;
    scale.wavevector = cfg.physical.effective_wavevector();
    scale.interrogation_time = cfg.timing().interrogation_time();
    return scale;
}

SensitivityEstimate estimate_sensitivity(const std::vector<ShotRecord>& shots, const CycleConfig& cfg) {
    const analysis::ShotSeries series = to_series(shots, cfg);
    SensitivityEstimate e;
    e.allan = analysis::allan_deviation(series, mid_fringe_scale(cfg));
    e.sigma_g = e.allan.points.front().deviation;
    e.sigma_s = e.sigma_g / std::sqrt(series.data_rate);
    e.phase_noise = e.sigma_g * cfg.physical.gravity * cfg.physical.effective_wavevector() *
                    series.interrogation_time * series.interrogation_time;
    return e;
}

}  // namespace lpai
