#pragma once

#include "lpai/core_model.hpp"

namespace lpai::analysis {

/// sigma_g = dphi / (g k T^2), in units of local g per shot.
double shot_sensitivity(double phase_noise, const PhysicalParams& params, double interrogation_time);

/// sigma_s = sigma_g / sqrt(R), g / sqrt(Hz).
double short_term_sensitivity(double shot_sensitivity, double rate);

}  // namespace lpai::analysis
