#pragma once

#include "lpai/constants.hpp"
#include "lpai/random.hpp"

namespace lpai {

struct DetectionConfig {
    double collection_efficiency = 0.012;
    double pulse_duration = 100e-6;  // s, each of the two pulses
    /// Photons per second per atom: Gamma/2 times a saturation factor of 1/2.
    double scattering_rate = 0.5 * constants::rb87_d2_linewidth / 2.0;
    double quantum_efficiency = 0.8;
    double spectator_fraction = 0.57;
    /// Binomial atom and Poisson photon statistics; off gives mean signals.
    bool counting_noise = true;
    /// Additive Gaussian electronics noise per pulse, counts (0 = off).
    double electronics_noise = 0.0;

    /// Mean detected counts per atom per pulse.
    double counts_per_atom() const noexcept {
        return scattering_rate * pulse_duration * collection_efficiency * quantum_efficiency;
    }

    void validate() const;
};

struct DetectionSignals {
    double signal_f2 = 0.0;     // counts, first pulse (F = 2 only)
    double signal_total = 0.0;  // counts, second pulse (all atoms incl. spectators)
};

/**
 * Two-pulse fluorescence readout. Participating atoms (1 - spectator) N are
 * split binomially with P_true; spectators stay in F = 1 and only appear in
 * the total-population pulse.
 */
DetectionSignals simulate_detection(double p_true, double atom_number, const DetectionConfig& cfg,
                                    RandomStream& rng);

/// (F2 / total) / (1 - spectator_fraction), clamped to [0, 1].
double normalized_population(double signal_f2, double signal_total, double spectator_fraction);

/// First-order (binomial + Poisson) stddev of normalized_population.
double normalized_population_stddev(double p_true, double atom_number, const DetectionConfig& cfg);

/// Phase-equivalent detection noise at mid-fringe, 2 sigma_P / contrast.
double detection_phase_noise(double atom_number, double contrast, const DetectionConfig& cfg);

}  // namespace lpai
