#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lpai/cycle_config.hpp"

namespace lpai::analysis {

struct SweepRow {
    double rate = 0.0;                // Hz requested
    double cycle_time = 0.0;          // s
    double interrogation_time = 0.0;  // s
    double duty_cycle = 0.0;
    double phase_noise = 0.0;         // rad/shot, rate-dependent budget
    double phase_noise_mean = 0.0;    // rad/shot, grid-average budget
    double sigma_g = 0.0;             // g/shot, analytic
    double sigma_s = 0.0;             // g/sqrt(Hz), analytic with phase_noise
    double sigma_s_mean_noise = 0.0;  // g/sqrt(Hz), analytic with phase_noise_mean
    double sigma_s_mc = 0.0;          // g/sqrt(Hz), tau0 Allan of simulated shots
    double phase_noise_mc = 0.0;      // rad/shot recovered from the simulated shots
    double recapture_fraction = 0.0;
    double equilibrium_atoms = 0.0;
    double projection_floor = 0.0;    // rad/shot, participating atoms, configured contrast
};

/// One operating point: schedule timing, steady ensemble, analytic and Monte-Carlo sensitivity.
SweepRow sweep_rate(const CycleConfig& cfg, double rate, std::size_t shots, std::uint64_t seed);

/**
 * Evaluates every rate (each with its own stream split from seed). Throws the
 * first InfeasibleRateError encountered; shots must be >= 10^4.
 */
std::vector<SweepRow> sweep_data_rate(const CycleConfig& cfg, std::span<const double> rates,
                                      std::size_t shots = 20000, std::uint64_t seed = 1);

/// Default rate grid, 50 .. 330 Hz.
std::vector<double> reference_sweep_rates();

}  // namespace lpai::analysis
