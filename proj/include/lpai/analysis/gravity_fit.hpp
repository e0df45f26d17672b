#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "lpai/core_model.hpp"

namespace lpai::analysis {

struct GravityFitOptions {
    double g_prior = 9.8;             // m/s^2, centre of the search window
    double g_window = 0.05;           // m/s^2, half width
    double envelope_time_guess = 10e-3;  // s, held fixed during the grid search
    bool include_linear_term = true;  // tau_pi k g (1 + 2/pi) T
    int max_iterations = 200;
    double step_tolerance = 1e-10;    // relative parameter step
};

struct GravityFit {
    double g_hat = 0.0;          // m/s^2
    double sigma_g_hat = 0.0;    // m/s^2, 1 sigma
    double phase_origin = 0.0;   // rad
    double amplitude = 0.0;      // A0
    double envelope_time = 0.0;  // s
    double offset = 0.0;         // C
    Eigen::Matrix<double, 5, 5> covariance = Eigen::Matrix<double, 5, 5>::Zero();  // (g, phi0, A0, tau, C)
    double residual_rms = 0.0;
    std::vector<double> residuals;
    int iterations = 0;
    std::size_t grid_points = 0;
    /// (SSR of the runner-up grid minimum - best SSR) / residual variance;
    /// infinity when the grid has a single minimum.
    double ambiguity_margin = 0.0;
};

/// Model evaluated at T for a parameter set (g, phi0, A0, tau_env, C).
double chirped_model(double interrogation_time, double g, double phase_origin, double amplitude,
                     double envelope_time, double offset, const PhysicalParams& params, bool include_linear_term = true);

/**
 * Fits A0 exp(-T/tau) cos(phi0 + tau_pi k g (1+2/pi) T + k g T^2) + C to a
 * T-scan. The fringe-order ambiguity is resolved by scanning g over the prior
 * window (adjacent hypotheses differ by < pi/4 in phase at the largest T;
 * phi0, A0, C solved linearly at each node) and the best node is refined by
 * damped Gauss-Newton with an analytic Jacobian. sigma_g_hat comes from
 * s^2 (J^T J)^-1 at the optimum.
 *
 * Throws NonConvergenceError, AmbiguityError (runner-up minimum within one
 * residual variance), InvalidArgumentError for malformed input.
 */
GravityFit fit_chirped_gravity(std::span<const double> interrogation_times, std::span<const double> populations,
                               const PhysicalParams& params, const GravityFitOptions& options = {});

}  // namespace lpai::analysis
