#pragma once

#include "lpai/constants.hpp"
#include "lpai/core_model.hpp"

namespace lpai {

struct CycleConfig;

struct MotConfig {
    double loading_rate = 4e7;           // atoms/s from background vapor
    double capture_radius = 5.2e-3;      // m, hard capture sphere
    double axial_gradient = 7.8;         // G/cm
    double saturation_parameter = 108;   // s0, all six beams combined
    double detuning = -9e6;              // Hz from F=2 -> F'=3
    double magnetic_moment = 1.0;        // effective moment, Bohr magnetons
    double vacuum_pressure = 2e-9;       // Torr
    double loss_coefficient = 5e8;       // background loss per Torr, 1/(s Torr)
    double restoring_time = 3.5e-3;      // s, centroid/radius relaxation during recapture
    double post_cooling_temperature = 5.5e-6;  // K
    double min_cool_duration = 0.5e-3;   // s, shortest cooling that reaches post_cooling_temperature
    double initial_cloud_radius = 1.9e-3;  // m, RMS of the loaded MOT
    /// Part of each cycle's MOT-on time during which vapor loading is effective, s.
    double loading_window = 0.39e-3;

    double background_loss_rate() const noexcept { return loss_coefficient * vacuum_pressure; }

    void validate() const;
};

struct CloudState {
    double atom_number = 0.0;  // count
    double temperature = 5.5e-6;  // K
    double position = 0.0;     // m along gravity, trap centre at 0
    double velocity = 0.0;     // m/s along gravity
    double rms_radius = 1.9e-3;  // m

    void validate() const;
};

/// sqrt(k_B T / m)
double thermal_velocity(double temperature, double atom_mass);

/// Ballistic flight: centroid falls, radius grows in quadrature with v_th t.
CloudState cloud_after_tof(const CloudState& cloud, double tof, double gravity,
                           double atom_mass = constants::rb87_mass);

/**
 * Fraction of an isotropic Gaussian cloud (centred at the cloud centroid) lying
 * inside the capture sphere around the trap centre. Closed form of the
 * non-central chi distribution with three degrees of freedom.
 */
double recapture_fraction(const CloudState& cloud, const MotConfig& mot);

/// One full cycle update of the cloud at the start of a cycle; the returned
/// state is the cloud at the start of the next cycle.
CloudState evolve_cycle(const CloudState& cloud, const MotConfig& mot, const TimingSequence& timing,
                        const PhysicalParams& params);
CloudState evolve_cycle(const CloudState& cloud, const CycleConfig& cfg);

/// Kinematic fixed point of the cycle map; independent of the atom number.
struct CycleSteadyState {
    CloudState at_cycle_start;
    CloudState at_recapture;
    double recapture_fraction = 0.0;
    double survival = 0.0;           // exp(-loss * cycle)
    double effective_recapture = 0.0;  // recapture_fraction * survival
    double loading_per_cycle = 0.0;  // atoms
    double atom_number = 0.0;        // equilibrium N*
};

CycleSteadyState steady_cycle(const MotConfig& mot, const TimingSequence& timing, const PhysicalParams& params);
CycleSteadyState steady_cycle(const CycleConfig& cfg);

/// Fixed point of the atom-number map. Throws DivergenceError when the
/// effective recapture is >= 1 with non-zero loading.
double equilibrium_atom_number(const CycleConfig& cfg);

/// Time to reach target atoms by vapor loading alone from an empty trap.
double vapor_loading_time(double target_atoms, const MotConfig& mot);

// 1-D two-beam Doppler/Zeeman scattering force, N.
double mot_scattering_force(double velocity, double position, const MotConfig& mot, const PhysicalParams& params);

/// Doppler damping coefficient beta = -dF/dv at rest, kg/s.
double doppler_damping(const MotConfig& mot, const PhysicalParams& params);

/// Spring constant kappa = -dF/dz at the trap centre, N/m.
double mot_spring_constant(const MotConfig& mot, const PhysicalParams& params);

/// Overdamped velocity damping time m / beta.
double velocity_damping_time(const MotConfig& mot, const PhysicalParams& params);

/// Overdamped MOT restoring time 2 beta / kappa, using the gradient averaged
/// over the three trap axes (2/3 of the axial gradient).
double restoring_time(const MotConfig& mot, const PhysicalParams& params);

}  // namespace lpai
