#pragma once

#include <vector>

#include "lpai/random.hpp"

namespace lpai {

/// Sinusoidal phase disturbance a sin(2 pi t / period + phase).
struct Disturbance {
    double period = 1.0;     // s
    double amplitude = 0.0;  // rad
    double phase = 0.0;      // rad
};

/**
 * Per-shot phase-noise budget, rad/shot. The quadrature total of all three
 * sources is the mean noise over the reference rate grid; the actual noise
 * falls linearly in R from the lowest to the highest grid rate by
 * rate_rolloff (0.25 means the top-rate value is 25 % below the bottom-rate
 * value).
 */
struct NoiseBudget {
    double raman_phase_noise = 21e-3;
    double magnetic_noise = 15e-3;
    double residual_noise = 17.3554e-3;  // makes the mean total 31.1 mrad
    double rate_rolloff = 0.25;
    std::vector<double> reference_rates{50, 100, 150, 200, 250, 300, 330};  // Hz
    std::vector<Disturbance> disturbances;  // off unless configured

    void validate() const;
};

/// sqrt(raman^2 + magnetic^2); the residual term is excluded.
double quadrature_total(const NoiseBudget& budget);

/// sqrt(raman^2 + magnetic^2 + residual^2): the average over the rate grid.
double mean_shot_noise(const NoiseBudget& budget);

/// Rate-dependent total phase noise, rad/shot.
double total_shot_noise(const NoiseBudget& budget, double rate);

/// True when R lies inside the reference grid (outside is extrapolation).
bool within_reference_rates(const NoiseBudget& budget, double rate);

/// Zero-mean Gaussian draw with stddev total_shot_noise(budget, rate).
double sample_shot_phase_noise(const NoiseBudget& budget, double rate, RandomStream& rng);

/// Sum of the configured sinusoidal disturbances at time t.
double disturbance_phase(const std::vector<Disturbance>& disturbances, double t);

/// Mid-fringe projection-noise phase floor 1 / (contrast sqrt(N)).
double projection_noise_phase(double atom_number, double contrast);

}  // namespace lpai
