#include "lpai/interferometer.hpp"

#include <algorithm>
#include <cmath>

#include "lpai/error.hpp"

namespace lpai {

void FringeModel::validate() const {
    if (!(contrast >= 0.0 && contrast <= 1.0)) throw InvalidArgumentError("fringe contrast must be in [0, 1]");
    if (!std::isfinite(offset) || !std::isfinite(phase_origin)) {
        throw InvalidArgumentError("fringe offset and phase origin must be finite");
    }
}

double mz_phase(double gravity, double wavevector, double interrogation_time, double chirp_rate,
                const PulseSequencePhases& laser) {
    if (!(interrogation_time >= 0.0)) throw InvalidArgumentError("interrogation time must be >= 0");
    const double t2 = interrogation_time * interrogation_time;
    return (wavevector * gravity - chirp_rate) * t2 + laser.combined();
}

double transition_probability(double phase, const FringeModel& fringe) {
    const double p = fringe.offset - 0.5 * fringe.contrast * std::cos(phase + fringe.phase_origin);
    return std::clamp(p, 0.0, 1.0);
}

double phase_to_accel(double phase, double wavevector, double interrogation_time) {
    if (!(interrogation_time > 0.0)) throw InvalidArgumentError("phase_to_accel requires T > 0");
    if (!(wavevector > 0.0)) throw InvalidArgumentError("phase_to_accel requires k > 0");
    return phase / (wavevector * interrogation_time * interrogation_time);
}

double doppler_chirp_rate(double wavevector, double gravity) { return wavevector * gravity; }

Envelope exponential_envelope(double decay_time) {
    if (!(decay_time > 0.0)) throw InvalidArgumentError("envelope decay time must be > 0");
    return [decay_time](double t) { return std::exp(-t / decay_time); };
}

double chirp_linear_coefficient(double tau_pi, double wavevector, double gravity) {
    return tau_pi * wavevector * gravity * (1.0 + 2.0 / constants::pi);
}

double chirped_phase(double interrogation_time, double gravity, double wavevector, double tau_pi,
                     double phase_origin) {
    const double t = interrogation_time;
    return phase_origin + chirp_linear_coefficient(tau_pi, wavevector, gravity) * t + wavevector * gravity * t * t;
}

double chirped_fringe(double interrogation_time, double gravity, const PhysicalParams& params,
                      const FringeModel& fringe, const Envelope& envelope) {
    if (!(interrogation_time >= 0.0)) throw InvalidArgumentError("interrogation time must be >= 0");
    const double tau_pi = pi_pulse_duration(params.rabi_frequency);
    const double phase = chirped_phase(interrogation_time, gravity, params.effective_wavevector(), tau_pi,
                                       fringe.phase_origin);
    return 0.5 * fringe.contrast * envelope(interrogation_time) * std::cos(phase) + fringe.offset;
}

}  // namespace lpai
