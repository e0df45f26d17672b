#pragma once

#include <functional>

#include "lpai/core_model.hpp"

namespace lpai {

/// Laser phase imprinted at each of the three pulses; the scan phase is
/// applied on the last pulse.
struct PulseSequencePhases {
    double first = 0.0;   // rad
    double second = 0.0;  // rad
    double third = 0.0;   // rad
    double applied_scan_phase = 0.0;  // rad

    /// phi1 - 2 phi2 + (phi3 + scan)
    double combined() const noexcept { return first - 2.0 * second + (third + applied_scan_phase); }
};

/// P = C - (A/2) cos(dphi + phi0). The ideal fringe is A = 1, C = 1/2, phi0 = 0.
struct FringeModel {
    double contrast = 1.0;      // A, peak-to-peak
    double offset = 0.5;        // C
    double phase_origin = 0.0;  // phi0, rad

    void validate() const;
};

/// Total interferometer phase: (k g - chirp) T^2 + phi1 - 2 phi2 + phi3 + scan.
double mz_phase(double gravity, double wavevector, double interrogation_time, double chirp_rate,
                const PulseSequencePhases& laser);

/// Clamped to [0, 1].
double transition_probability(double phase, const FringeModel& fringe);

/// a = dphi / (k T^2). Throws InvalidArgumentError for T <= 0 or k <= 0.
double phase_to_accel(double phase, double wavevector, double interrogation_time);

/// k g, rad/s^2; the frequency ramp that cancels the free-fall Doppler shift.
double doppler_chirp_rate(double wavevector, double gravity);

/// A(T) / A0 for the uncompensated T-scan.
using Envelope = std::function<double(double)>;

/// exp(-T / decay_time)
Envelope exponential_envelope(double decay_time);

/// Coefficient of the term linear in T: tau_pi k g (1 + 2/pi).
double chirp_linear_coefficient(double tau_pi, double wavevector, double gravity);

/// phi0 + tau_pi k g (1 + 2/pi) T + k g T^2
double chirped_phase(double interrogation_time, double gravity, double wavevector, double tau_pi,
                     double phase_origin);

/**
 * Population of the uncompensated interferometer versus T:
 * A(T) cos(phi0 + tau_pi k g (1 + 2/pi) T + k g T^2) + C with
 * A(T) = (contrast / 2) envelope(T) and tau_pi = pi / Omega_eff.
 */
double chirped_fringe(double interrogation_time, double gravity, const PhysicalParams& params,
                      const FringeModel& fringe, const Envelope& envelope);

}  // namespace lpai
