#include "lpai/analysis/sensitivity.hpp"

#include <cmath>

#include "lpai/error.hpp"

namespace lpai::analysis {

double shot_sensitivity(double phase_noise, const PhysicalParams& params, double interrogation_time) {
    if (!(interrogation_time > 0.0)) throw InvalidArgumentError("shot_sensitivity requires T > 0");
    return phase_noise / (params.gravity * params.effective_wavevector() * interrogation_time * interrogation_time);
}

double short_term_sensitivity(double shot_sensitivity, double rate) {
    if (!(rate > 0.0)) throw InvalidArgumentError("short_term_sensitivity requires R > 0");
    return shot_sensitivity / std::sqrt(rate);
}

}  // namespace lpai::analysis
