#include "lpai/analysis/sweep.hpp"

#include <cmath>
#include <future>

#include "lpai/analysis/sensitivity.hpp"
#include "lpai/error.hpp"
#include "lpai/simulation.hpp"

namespace lpai::analysis {

SweepRow sweep_rate(const CycleConfig& cfg, double rate, std::size_t shots, std::uint64_t seed) {
    if (shots < 10000) throw InvalidArgumentError("rate sweep needs at least 10^4 Monte-Carlo shots per rate");
    const CycleConfig point = cfg.at_rate(rate);
    const TimingSequence timing = point.timing();
    const CycleSteadyState steady = steady_cycle(point);

    SweepRow row;
    row.rate = rate;
    row.cycle_time = timing.cycle_time();
    row.interrogation_time = timing.interrogation_time();
    row.duty_cycle = duty_cycle(timing);
    row.phase_noise = total_shot_noise(point.noise, rate);
    row.phase_noise_mean = mean_shot_noise(point.noise);
    row.sigma_g = shot_sensitivity(row.phase_noise, point.physical, row.interrogation_time);
    row.sigma_s = short_term_sensitivity(row.sigma_g, rate);
    row.sigma_s_mean_noise =
        short_term_sensitivity(shot_sensitivity(row.phase_noise_mean, point.physical, row.interrogation_time), rate);
    row.recapture_fraction = steady.recapture_fraction;
    row.equilibrium_atoms = steady.atom_number;
    row.projection_floor =
        projection_noise_phase((1.0 - point.spectator_fraction()) * steady.atom_number, point.fringe.contrast);

    const auto records = simulate_shots(point, ScanMode::MidFringe, shots, seed);
    const SensitivityEstimate est = estimate_sensitivity(records, point);
    row.sigma_s_mc = est.sigma_s;
    row.phase_noise_mc = est.phase_noise;
    return row;
}

std::vector<SweepRow> sweep_data_rate(const CycleConfig& cfg, std::span<const double> rates, std::size_t shots,
                                      std::uint64_t seed) {
    std::vector<std::future<SweepRow>> jobs;
    jobs.reserve(rates.size());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const std::uint64_t rate_seed = RandomStream(seed, i).seed();
        jobs.push_back(std::async(std::launch::async, [&cfg, r = rates[i], shots, rate_seed] {
            return sweep_rate(cfg, r, shots, rate_seed);
        }));
    }
    std::vector<SweepRow> rows;
    rows.reserve(rates.size());
    for (auto& j : jobs) rows.push_back(j.get());
    return rows;
}

std::vector<double> reference_sweep_rates() { return {50, 75, 100, 150, 200, 250, 300, 330}; }

}  // namespace lpai::analysis
