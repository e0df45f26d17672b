#include "lpai/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lpai/constants.hpp"
#include "lpai/error.hpp"

namespace lpai {

void NoiseBudget::validate() const {
    if (raman_phase_noise < 0.0 || magnetic_noise < 0.0 || residual_noise < 0.0) {
        throw InvalidArgumentError("noise amplitudes must be >= 0");
    }
    if (!(rate_rolloff >= 0.0 && rate_rolloff < 1.0)) throw InvalidArgumentError("noise.rate_rolloff must be in [0, 1)");
    if (reference_rates.empty()) throw InvalidArgumentError("noise.reference_rates must not be empty");
    for (const auto& d : disturbances) {
        if (!(d.period > 0.0)) throw InvalidArgumentError("disturbance period must be > 0");
    }
}

double quadrature_total(const NoiseBudget& budget) {
    return std::hypot(budget.raman_phase_noise, budget.magnetic_noise);
}

double mean_shot_noise(const NoiseBudget& budget) {
    return std::hypot(budget.raman_phase_noise, budget.magnetic_noise, budget.residual_noise);
}

namespace {

double rolloff_shape(const NoiseBudget& b, double rate) {
    const auto [lo, hi] = std::minmax_element(b.reference_rates.begin(), b.reference_rates.end());
    if (*hi == *lo) return 1.0;
    return 1.0 - b.rate_rolloff * (rate - *lo) / (*hi - *lo);
}

}  // namespace

double total_shot_noise(const NoiseBudget& budget, double rate) {
    const double grid_mean =
        std::accumulate(budget.reference_rates.begin(), budget.reference_rates.end(), 0.0,
                        [&](double acc, double r) { return acc + rolloff_shape(budget, r); }) /
        static_cast<double>(budget.reference_rates.size());
    return std::max(0.0, mean_shot_noise(budget) * rolloff_shape(budget, rate) / grid_mean);
}

bool within_reference_rates(const NoiseBudget& budget, double rate) {
    const auto [lo, hi] = std::minmax_element(budget.reference_rates.begin(), budget.reference_rates.end());
    return rate >= *lo && rate <= *hi;
}

double sample_shot_phase_noise(const NoiseBudget& budget, double rate, RandomStream& rng) {
    return rng.normal(0.0, total_shot_noise(budget, rate));
}

double disturbance_phase(const std::vector<Disturbance>& disturbances, double t) {
    double sum = 0.0;
    for (const auto& d : disturbances) sum += d.amplitude * std::sin(constants::two_pi * t / d.period + d.phase);
    return sum;
}

double projection_noise_phase(double atom_number, double contrast) {
    if (!(atom_number >= 1.0)) throw InvalidArgumentError("projection noise requires N >= 1");
    if (!(contrast > 0.0 && contrast <= 1.0)) throw InvalidArgumentError("projection noise requires contrast in (0, 1]");
    return 1.0 / (contrast * std::sqrt(atom_number));
}

}  // namespace lpai
