#pragma once

#include "lpai/core_model.hpp"
#include "lpai/detection.hpp"
#include "lpai/ensemble.hpp"
#include "lpai/interferometer.hpp"
#include "lpai/noise.hpp"

namespace lpai {

/// Everything needed to simulate one operating point.
struct CycleConfig {
    PhysicalParams physical;
    double data_rate = 100.0;  // Hz
    double timing_quantum = default_timing_quantum;
    PhaseOverheads overheads = OverheadSchedule::reference().at(100.0);
    OverheadSchedule schedule = OverheadSchedule::reference();
    MotConfig mot;
    NoiseBudget noise;
    DetectionConfig detection;
    FringeModel fringe;
    double envelope_time = 10e-3;  // s, A(T) = A0 exp(-T / envelope_time)

    /// Quantized cycle for data_rate with the configured overheads and the
    /// pulse durations implied by the Rabi frequency.
    TimingSequence timing() const;

    /// Same apparatus at another rate, overheads taken from the schedule.
    CycleConfig at_rate(double rate) const;

    double spectator_fraction() const noexcept { return detection.spectator_fraction; }

    void validate() const;

    /// 100 Hz operating point with the rate-dependent noise budget.
    static CycleConfig reference();
    /// 100 Hz case study with a flat 31.1 mrad/shot budget.
    static CycleConfig case_study_100hz();
};

}  // namespace lpai
