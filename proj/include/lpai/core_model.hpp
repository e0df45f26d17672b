#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "lpai/constants.hpp"

namespace lpai {

/// Rb-87 apparatus constants. The effective wavevector is derived from the
/// wavelength (counter-propagating Raman beams, two-photon recoil).
struct PhysicalParams {
    double wavelength = constants::rb87_d2_wavelength;      // m
    double gravity = 9.7916378;                              // m/s^2, local g_k
    double atom_mass = constants::rb87_mass;                 // kg
    double hyperfine_splitting = constants::rb87_hyperfine_splitting;  // Hz
    double rabi_frequency = constants::two_pi * 161e3;       // rad/s, Omega_eff

    double effective_wavevector() const noexcept { return 4.0 * constants::pi / wavelength; }

    void validate() const;
};

/// pi / Omega_eff.
double pi_pulse_duration(double rabi_frequency);

struct PulseDurations {
    double first_half_pi = 0.0;  // s
    double pi = 0.0;
    double last_half_pi = 0.0;

    double total() const noexcept { return first_half_pi + pi + last_half_pi; }
};

PulseDurations pulses_from_rabi(double rabi_frequency);

/// Per-cycle dead time outside the interrogation pulses.
struct PhaseOverheads {
    double cool = 0.0;       // sub-Doppler cooling, s
    double prep = 0.0;       // depump / state preparation, s
    std::array<double, 2> detect{0.0, 0.0};  // F=2 pulse, total-population pulse
    double recapture = 0.0;  // MOT on, s

    double total() const noexcept { return cool + prep + detect[0] + detect[1] + recapture; }
};

inline constexpr double default_timing_quantum = 20e-9;

/**
 * One measurement cycle: cool, prep, pi/2 - T - pi - T - pi/2, two detection
 * pulses, recapture. Every duration is held as an integer number of timing
 * quanta, so quantization is exact.
 */
class TimingSequence {
public:
    struct Ticks {
        std::int64_t cool = 0;
        std::int64_t prep = 0;
        std::array<std::int64_t, 3> pulses{0, 0, 0};
        std::int64_t interrogation = 0;  // T
        std::array<std::int64_t, 2> detect{0, 0};
        std::int64_t recapture = 0;

        std::int64_t cycle() const noexcept {
            return cool + prep + pulses[0] + pulses[1] + pulses[2] + 2 * interrogation + detect[0] +
                   detect[1] + recapture;
        }
        bool operator==(const Ticks&) const = default;
    };

    TimingSequence(Ticks ticks, double quantum);

    const Ticks& ticks() const noexcept { return ticks_; }
    double quantum() const noexcept { return quantum_; }

    double cool_duration() const noexcept { return seconds(ticks_.cool); }
    double prep_duration() const noexcept { return seconds(ticks_.prep); }
    PulseDurations pulse_durations() const noexcept;
    double interrogation_time() const noexcept { return seconds(ticks_.interrogation); }
    std::array<double, 2> detect_durations() const noexcept {
        return {seconds(ticks_.detect[0]), seconds(ticks_.detect[1])};
    }
    double recapture_duration() const noexcept { return seconds(ticks_.recapture); }
    double cycle_time() const noexcept { return seconds(ticks_.cycle()); }

    PhaseOverheads overheads() const noexcept;

    /// Release (end of cooling) to recapture: prep + pulses + 2T + detection.
    double time_of_flight() const noexcept;

    bool operator==(const TimingSequence&) const = default;

private:
    double seconds(std::int64_t n) const noexcept { return static_cast<double>(n) * quantum_; }

    Ticks ticks_;
    double quantum_;
};

/// Largest n with n * quantum <= duration (tolerant to representation error).
std::int64_t quantize_down(double duration, double quantum);

/**
 * Builds the cycle for data rate R. All durations are rounded down to the
 * quantum; T = (1/R - overheads - pulses) / 2; the leftover quantum (if any)
 * from rounding 1/R is added to recapture. Throws InfeasibleRateError when
 * overheads + pulses >= 1/R.
 */
TimingSequence build_timing(double rate, const PhaseOverheads& overheads, const PulseDurations& pulses,
                            double quantum = default_timing_quantum);

/// Re-applies build_timing to an existing sequence (identity for quantized input).
TimingSequence build_timing(double rate, const TimingSequence& timing);

/// 2T / cycle_time.
double duty_cycle(const TimingSequence& timing);

/// Data rate implied by the cycle (1 / cycle_time).
inline double data_rate(const TimingSequence& timing) { return 1.0 / timing.cycle_time(); }

/**
 * Per-rate overheads, interpolated piecewise-linearly in 1/R between anchors
 * and extrapolated from the outermost segments (clamped at zero per phase).
 */
class OverheadSchedule {
public:
    struct Anchor {
        double rate = 0.0;  // Hz
        PhaseOverheads overheads;
    };

    explicit OverheadSchedule(std::vector<Anchor> anchors);

    /// Anchors back-solved from the 50 Hz / 100 Hz / 330 Hz operating points
    /// (duty 75 %, T = 3.415 ms, duty 30 %).
    static OverheadSchedule reference();

    PhaseOverheads at(double rate) const;
    const std::vector<Anchor>& anchors() const noexcept { return anchors_; }

private:
    std::vector<Anchor> anchors_;  // sorted by rate
};

}  // namespace lpai
