#include "lpai/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpai/cycle_config.hpp"
#include "lpai/error.hpp"

namespace lpai {

void MotConfig::validate() const {
    if (!(loading_rate >= 0.0)) throw InvalidArgumentError("mot.loading_rate must be >= 0");
    if (!(capture_radius > 0.0)) throw InvalidArgumentError("mot.capture_radius must be > 0");
    if (!(restoring_time > 0.0)) throw InvalidArgumentError("mot.restoring_time must be > 0");
    if (!(post_cooling_temperature > 0.0)) throw InvalidArgumentError("mot.post_cooling_temperature must be > 0");
    if (!(initial_cloud_radius > 0.0)) throw InvalidArgumentError("mot.initial_cloud_radius must be > 0");
    if (!(saturation_parameter > 0.0)) throw InvalidArgumentError("mot.saturation_parameter must be > 0");
    if (!(axial_gradient > 0.0)) throw InvalidArgumentError("mot.axial_gradient must be > 0");
    if (!(detuning < 0.0)) throw InvalidArgumentError("mot.detuning must be red (< 0)");
    if (vacuum_pressure < 0.0 || loss_coefficient < 0.0) throw InvalidArgumentError("mot loss inputs must be >= 0");
    if (loading_window < 0.0 || min_cool_duration < 0.0) throw InvalidArgumentError("mot durations must be >= 0");
}

void CloudState::validate() const {
    if (!(atom_number >= 0.0)) throw InvalidArgumentError("cloud atom number must be >= 0");
    if (!(temperature > 0.0)) throw InvalidArgumentError("cloud temperature must be > 0");
    if (!(rms_radius > 0.0)) throw InvalidArgumentError("cloud rms radius must be > 0");
}

double thermal_velocity(double temperature, double atom_mass) {
    return std::sqrt(constants::boltzmann * temperature / atom_mass);
}

CloudState cloud_after_tof(const CloudState& cloud, double tof, double gravity, double atom_mass) {
    if (!(tof >= 0.0)) throw InvalidArgumentError("time of flight must be >= 0");
    CloudState out = cloud;
    out.position = cloud.position + cloud.velocity * tof + 0.5 * gravity * tof * tof;
    out.velocity = cloud.velocity + gravity * tof;
    const double spread = thermal_velocity(cloud.temperature, atom_mass) * tof;
    out.rms_radius = std::hypot(cloud.rms_radius, spread);
    return out;
}

namespace {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double std_normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(constants::two_pi); }

}  // namespace

double recapture_fraction(const CloudState& cloud, const MotConfig& mot) {
    const double sigma = cloud.rms_radius;
    const double radius = mot.capture_radius;
    const double d = std::abs(cloud.position);
    if (!(sigma > 0.0)) throw InvalidArgumentError("cloud rms radius must be > 0");

    double p;
    const double rho = radius / sigma;
    if (d < 1e-6 * sigma) {
        p = std::erf(rho / std::numbers::sqrt2) - std::sqrt(2.0 / constants::pi) * rho * std::exp(-0.5 * rho * rho);
    } else {
        const double a = (radius - d) / sigma;
        const double b = (radius + d) / sigma;
        p = std_normal_cdf(a) - std_normal_cdf(-b) - (sigma / d) * (std_normal_pdf(a) - std_normal_pdf(b));
    }
    return std::clamp(p, 0.0, 1.0);
}

namespace {

double loading_time_per_cycle(const MotConfig& mot, const TimingSequence& timing) {
    return std::min(mot.loading_window, timing.cool_duration() + timing.recapture_duration());
}

// Kinematic part of a cycle; returns the state at recapture and the relaxed
// state at the start of the next cycle (atom number untouched).
std::pair<CloudState, CloudState> propagate(const CloudState& start, const MotConfig& mot,
                                            const TimingSequence& timing, const PhysicalParams& params) {
    CloudState c = start;
    if (timing.cool_duration() >= mot.min_cool_duration) c.temperature = mot.post_cooling_temperature;

    const CloudState released = cloud_after_tof(c, timing.time_of_flight(), params.gravity, params.atom_mass);

    const double relax = std::exp(-timing.recapture_duration() / mot.restoring_time);
    CloudState next = released;
    next.position = released.position * relax;
    // Velocity damps on m/beta (tens of microseconds), far faster than the
    // position restoring time.
    next.velocity = 0.0;
    next.rms_radius = mot.initial_cloud_radius + (released.rms_radius - mot.initial_cloud_radius) * relax;
    next.temperature =
        mot.post_cooling_temperature + (released.temperature - mot.post_cooling_temperature) * relax;
    return {released, next};
}

}  // namespace

CloudState evolve_cycle(const CloudState& cloud, const MotConfig& mot, const TimingSequence& timing,
                        const PhysicalParams& params) {
    const auto [released, next_start] = propagate(cloud, mot, timing, params);
    CloudState next = next_start;
    const double survival = std::exp(-mot.background_loss_rate() * timing.cycle_time());
    next.atom_number = recapture_fraction(released, mot) * cloud.atom_number * survival +
                       mot.loading_rate * loading_time_per_cycle(mot, timing);
    return next;
}

CloudState evolve_cycle(const CloudState& cloud, const CycleConfig& cfg) {
    return evolve_cycle(cloud, cfg.mot, cfg.timing(), cfg.physical);
}

CycleSteadyState steady_cycle(const MotConfig& mot, const TimingSequence& timing, const PhysicalParams& params) {
    CloudState c;
    c.temperature = mot.post_cooling_temperature;
    c.rms_radius = mot.initial_cloud_radius;

    // The kinematic map contracts by exp(-recapture / restoring_time) per cycle.
    std::pair<CloudState, CloudState> step = propagate(c, mot, timing, params);
    for (int i = 0; i < 100000; ++i) {
        const auto next = propagate(step.second, mot, timing, params);
        const double dp = std::abs(next.second.position - step.second.position);
        const double dr = std::abs(next.second.rms_radius - step.second.rms_radius);
        step = next;
        if (dp <= 1e-15 * mot.capture_radius && dr <= 1e-15 * mot.capture_radius) break;
    }

    CycleSteadyState s;
    s.at_cycle_start = step.second;
    s.at_recapture = step.first;
    s.recapture_fraction = recapture_fraction(step.first, mot);
    s.survival = std::exp(-mot.background_loss_rate() * timing.cycle_time());
    s.effective_recapture = s.recapture_fraction * s.survival;
    s.loading_per_cycle = mot.loading_rate * loading_time_per_cycle(mot, timing);
    if (s.loading_per_cycle == 0.0) {
        s.atom_number = 0.0;
    } else if (s.effective_recapture >= 1.0) {
        throw DivergenceError("atom-number map does not contract: effective recapture >= 1");
    } else {
        s.atom_number = s.loading_per_cycle / (1.0 - s.effective_recapture);
    }
    s.at_cycle_start.atom_number = s.atom_number;
    s.at_recapture.atom_number = s.atom_number;
    return s;
}

CycleSteadyState steady_cycle(const CycleConfig& cfg) { return steady_cycle(cfg.mot, cfg.timing(), cfg.physical); }

double equilibrium_atom_number(const CycleConfig& cfg) { return steady_cycle(cfg).atom_number; }

double vapor_loading_time(double target_atoms, const MotConfig& mot) {
    if (!(target_atoms >= 0.0)) throw InvalidArgumentError("target atom number must be >= 0");
    if (!(mot.loading_rate > 0.0)) throw InvalidArgumentError("vapor loading requires a positive loading rate");
    const double gamma = mot.background_loss_rate();
    if (gamma == 0.0) return target_atoms / mot.loading_rate;
    const double x = target_atoms * gamma / mot.loading_rate;
    if (x >= 1.0) {
        std::ostringstream msg;
        msg << "vapor loading saturates at " << mot.loading_rate / gamma << " atoms";
        throw InfeasibleRateError(msg.str());
    }
    return -std::log1p(-x) / gamma;
}

namespace {

struct ForceTerms {
    double hbar_k;     // photon momentum of the trapping light
    double k;          // trapping-light wavevector
    double gamma;      // natural linewidth, rad/s
    double s;          // per-beam saturation parameter
    double delta;      // rad/s
    double zeeman;     // Zeeman shift per metre, rad/s/m
};

ForceTerms force_terms(const MotConfig& mot, const PhysicalParams& params) {
    ForceTerms f{};
    f.k = constants::two_pi / params.wavelength;
    f.hbar_k = constants::hbar * f.k;
    f.gamma = constants::rb87_d2_linewidth;
    f.s = mot.saturation_parameter / 6.0;
    f.delta = constants::two_pi * mot.detuning;
    const double gradient = (2.0 / 3.0) * mot.axial_gradient * constants::gauss_per_cm;  // T/m
    f.zeeman = mot.magnetic_moment * constants::bohr_magneton * gradient / constants::hbar;
    return f;
}

double lorentz_denominator(const ForceTerms& f, double detuning) {
    return 1.0 + f.s + 4.0 * detuning * detuning / (f.gamma * f.gamma);
}

}  // namespace

double mot_scattering_force(double velocity, double position, const MotConfig& mot, const PhysicalParams& params) {
    const ForceTerms f = force_terms(mot, params);
    const double shift = f.k * velocity + f.zeeman * position;
    return 0.5 * f.hbar_k * f.gamma * f.s *
           (1.0 / lorentz_denominator(f, f.delta - shift) - 1.0 / lorentz_denominator(f, f.delta + shift));
}

double doppler_damping(const MotConfig& mot, const PhysicalParams& params) {
    const ForceTerms f = force_terms(mot, params);
    const double d = lorentz_denominator(f, f.delta);
    return -8.0 * constants::hbar * f.k * f.k * f.delta * f.s / (f.gamma * d * d);
}

double mot_spring_constant(const MotConfig& mot, const PhysicalParams& params) {
    const ForceTerms f = force_terms(mot, params);
    return doppler_damping(mot, params) * f.zeeman / f.k;
}

double velocity_damping_time(const MotConfig& mot, const PhysicalParams& params) {
    return params.atom_mass / doppler_damping(mot, params);
}

double restoring_time(const MotConfig& mot, const PhysicalParams& params) {
    if (!(mot.saturation_parameter > 0.0)) throw InvalidArgumentError("saturation parameter must be > 0");
    return 2.0 * doppler_damping(mot, params) / mot_spring_constant(mot, params);
}

}  // namespace lpai
