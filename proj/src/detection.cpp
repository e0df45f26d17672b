#include "lpai/detection.hpp"

#include <algorithm>
#include <cmath>

#include "lpai/error.hpp"

namespace lpai {

void DetectionConfig::validate() const {
    auto fraction = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!fraction(collection_efficiency) || !fraction(quantum_efficiency)) {
        throw InvalidArgumentError("detection efficiencies must be in [0, 1]");
    }
    if (!(spectator_fraction >= 0.0 && spectator_fraction < 1.0)) {
        throw InvalidArgumentError("spectator_fraction must be in [0, 1)");
    }
    if (!(pulse_duration > 0.0) || !(scattering_rate > 0.0)) {
        throw InvalidArgumentError("detection pulse duration and scattering rate must be > 0");
    }
    if (electronics_noise < 0.0) throw InvalidArgumentError("electronics_noise must be >= 0");
}

DetectionSignals simulate_detection(double p_true, double atom_number, const DetectionConfig& cfg,
                                    RandomStream& rng) {
    if (!(p_true >= 0.0 && p_true <= 1.0)) throw InvalidArgumentError("P_true must be in [0, 1]");
    if (!(atom_number >= 0.0)) throw InvalidArgumentError("atom number must be >= 0");

    const double eta = cfg.counts_per_atom();
    DetectionSignals s;
    if (!cfg.counting_noise) {
        s.signal_f2 = (1.0 - cfg.spectator_fraction) * atom_number * p_true * eta;
        s.signal_total = atom_number * eta;
    } else {
        const auto total = static_cast<std::int64_t>(std::llround(atom_number));
        const auto participating =
            static_cast<std::int64_t>(std::llround((1.0 - cfg.spectator_fraction) * atom_number));
        const std::int64_t in_f2 = rng.binomial(participating, p_true);
        s.signal_f2 = static_cast<double>(rng.poisson(static_cast<double>(in_f2) * eta));
        s.signal_total = static_cast<double>(rng.poisson(static_cast<double>(total) * eta));
    }
    if (cfg.electronics_noise > 0.0) {
        s.signal_f2 += rng.normal(0.0, cfg.electronics_noise);
        s.signal_total += rng.normal(0.0, cfg.electronics_noise);
    }
    return s;
}

double normalized_population(double signal_f2, double signal_total, double spectator_fraction) {
    if (!(signal_total > 0.0)) throw DegenerateSignalError("total-population signal is zero");
    if (!(spectator_fraction >= 0.0 && spectator_fraction < 1.0)) {
        throw InvalidArgumentError("spectator_fraction must be in [0, 1)");
    }
    return std::clamp(signal_f2 / signal_total / (1.0 - spectator_fraction), 0.0, 1.0);
}

double normalized_population_stddev(double p_true, double atom_number, const DetectionConfig& cfg) {
    const double eta = cfg.counts_per_atom();
    const double np = (1.0 - cfg.spectator_fraction) * atom_number;
    const double mean_f2 = eta * np * p_true;
    const double mean_tot = eta * atom_number;
    if (!(mean_f2 > 0.0) || !(mean_tot > 0.0)) return 0.0;
    const double e2 = cfg.electronics_noise * cfg.electronics_noise;
    double var_f2 = e2;
    double var_tot = e2;
    if (cfg.counting_noise) {
        var_f2 += eta * eta * np * p_true * (1.0 - p_true) + mean_f2;
        var_tot += mean_tot;
    }
    const double ratio = mean_f2 / mean_tot;
    const double var_ratio = ratio * ratio * (var_f2 / (mean_f2 * mean_f2) + var_tot / (mean_tot * mean_tot));
    return std::sqrt(var_ratio) / (1.0 - cfg.spectator_fraction);
}

double detection_phase_noise(double atom_number, double contrast, const DetectionConfig& cfg) {
    if (!(contrast > 0.0)) throw InvalidArgumentError("contrast must be > 0");
    return 2.0 * normalized_population_stddev(0.5, atom_number, cfg) / contrast;
}

}  // namespace lpai
