#pragma once

#include <span>
#include <vector>

#include "lpai/interferometer.hpp"

namespace lpai::analysis {

struct FringeFit {
    FringeModel model;
    std::vector<double> residuals;  // population - model
    double residual_rms = 0.0;
};

/**
 * Least-squares fit of P = C - (A/2) cos(phi + phi0). The model is linear in
 * (C, A cos phi0, A sin phi0) on the basis {1, cos phi, sin phi}, so the
 * solution is exact without iteration. phi0 is returned in (-pi, pi].
 *
 * Throws InvalidArgumentError for fewer than 8 points or mismatched lengths,
 * RankDeficiencyError when the phases do not span the basis or the fitted
 * amplitude vanishes (phi0 unidentifiable).
 */
FringeFit fit_fringe(std::span<const double> applied_phases, std::span<const double> populations);

}  // namespace lpai::analysis
