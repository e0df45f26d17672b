#pragma once

#include <cstdint>
#include <vector>

#include "lpai/analysis/allan.hpp"
#include "lpai/cycle_config.hpp"

namespace lpai {

struct ShotRecord {
    std::size_t index = 0;
    double timestamp = 0.0;      // s
    double applied_phase = 0.0;  // rad
    double true_phase = 0.0;     // rad, total dphi including noise
    double signal_f2 = 0.0;      // counts
    double signal_total = 0.0;   // counts
    double population = 0.0;     // normalized, spectators excluded
    double atom_number = 0.0;
};

enum class ScanMode { FringeScan, MidFringe };

/**
 * Doppler-compensated shots at the configured rate. Fringe-scan steps the
 * applied phase uniformly over [0, 4 pi); mid-fringe holds it on the side of
 * the fringe (pi/2 - phi0). Atom number follows the cycle map from its
 * steady state; noise comes from split streams of `seed`, so the output is
 * identical for any worker count.
 */
std::vector<ShotRecord> simulate_shots(const CycleConfig& cfg, ScanMode mode, std::size_t shots, std::uint64_t seed);

analysis::ShotSeries to_series(const std::vector<ShotRecord>& shots, const CycleConfig& cfg);

/// Interrogation-time scan without chirp compensation.
struct GravityScan {
    double t_min = 0.0;      // s
    double t_max = 7e-3;     // s
    double t_step = 10e-6;   // s, rounded to the timing quantum
    std::size_t shots_per_point = 1;
};

struct GravityShot {
    double interrogation_time = 0.0;
    double true_phase = 0.0;
    double population = 0.0;
};

std::vector<GravityShot> simulate_gravity_scan(const CycleConfig& cfg, const GravityScan& scan, std::uint64_t seed);

/// Sensitivity extracted from a mid-fringe record via the tau0 Allan deviation.
struct SensitivityEstimate {
    double sigma_g = 0.0;     // g per shot
    double sigma_s = 0.0;     // g / sqrt(Hz)
    double phase_noise = 0.0;  // rad per shot, sigma_g g k T^2
    analysis::AllanCurve allan;
};

SensitivityEstimate estimate_sensitivity(const std::vector<ShotRecord>& shots, const CycleConfig& cfg);

analysis::MidFringeScale mid_fringe_scale(const CycleConfig& cfg);

}  // namespace lpai
