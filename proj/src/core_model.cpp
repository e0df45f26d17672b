#include "lpai/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lpai/error.hpp"

namespace lpai {

void PhysicalParams::validate() const {
    if (!(wavelength > 0.0)) throw InvalidArgumentError("physical.wavelength must be > 0");
    if (!(gravity > 0.0)) throw InvalidArgumentError("physical.gravity must be > 0");
    if (!(atom_mass > 0.0)) throw InvalidArgumentError("physical.atom_mass must be > 0");
    if (!(rabi_frequency > 0.0)) throw InvalidArgumentError("physical.rabi_frequency must be > 0");
}

double pi_pulse_duration(double rabi_frequency) {
    if (!(rabi_frequency > 0.0)) throw InvalidArgumentError("Rabi frequency must be > 0");
    return constants::pi / rabi_frequency;
}

PulseDurations pulses_from_rabi(double rabi_frequency) {
    const double tau_pi = pi_pulse_duration(rabi_frequency);
    return {0.5 * tau_pi, tau_pi, 0.5 * tau_pi};
}

TimingSequence::TimingSequence(Ticks ticks, double quantum) : ticks_(ticks), quantum_(quantum) {
    if (!(quantum > 0.0)) throw InvalidArgumentError("timing quantum must be > 0");
    const auto negative = [](std::int64_t n) { return n < 0; };
    if (negative(ticks.cool) || negative(ticks.prep) || negative(ticks.interrogation) ||
        negative(ticks.recapture) || std::any_of(ticks.pulses.begin(), ticks.pulses.end(), negative) ||
        std::any_of(ticks.detect.begin(), ticks.detect.end(), negative)) {
        throw InvalidArgumentError("timing durations must be non-negative");
    }
    if (ticks.cycle() <= 0) throw InvalidArgumentError("cycle time must be > 0");
}

PulseDurations TimingSequence::pulse_durations() const noexcept {
    return {seconds(ticks_.pulses[0]), seconds(ticks_.pulses[1]), seconds(ticks_.pulses[2])};
}

PhaseOverheads TimingSequence::overheads() const noexcept {
    PhaseOverheads o;
    o.cool = cool_duration();
    o.prep = prep_duration();
    o.detect = detect_durations();
    o.recapture = recapture_duration();
    return o;
}

double TimingSequence::time_of_flight() const noexcept {
    const auto& t = ticks_;
    return seconds(t.prep + t.pulses[0] + t.pulses[1] + t.pulses[2] + 2 * t.interrogation + t.detect[0] +
                   t.detect[1]);
}

std::int64_t quantize_down(double duration, double quantum) {
    if (!(duration >= 0.0)) throw InvalidArgumentError("durations must be non-negative");
    // 1/(100 Hz * 20 ns) evaluates to 499999.99999999994; absorb that.
    const double n = duration / quantum;
    return static_cast<std::int64_t>(std::floor(n + 1e-9 * std::max(1.0, n)));
}

TimingSequence build_timing(double rate, const PhaseOverheads& overheads, const PulseDurations& pulses,
                            double quantum) {
    if (!(rate > 0.0)) throw InvalidArgumentError("data rate must be > 0");
    if (!(quantum > 0.0)) throw InvalidArgumentError("timing quantum must be > 0");

    TimingSequence::Ticks t;
    t.cool = quantize_down(overheads.cool, quantum);
    t.prep = quantize_down(overheads.prep, quantum);
    t.detect = {quantize_down(overheads.detect[0], quantum), quantize_down(overheads.detect[1], quantum)};
    t.recapture = quantize_down(overheads.recapture, quantum);
    t.pulses = {quantize_down(pulses.first_half_pi, quantum), quantize_down(pulses.pi, quantum),
                quantize_down(pulses.last_half_pi, quantum)};

    const std::int64_t cycle = quantize_down(1.0 / rate, quantum);
    const std::int64_t dead = t.cycle();  // interrogation still zero
    if (dead >= cycle) {
        std::ostringstream msg;
        msg << "data rate " << rate << " Hz infeasible: overheads + pulses = " << dead * quantum
            << " s >= cycle " << cycle * quantum << " s";
        throw InfeasibleRateError(msg.str());
    }
    t.interrogation = (cycle - dead) / 2;
    t.recapture += (cycle - dead) - 2 * t.interrogation;
    return TimingSequence(t, quantum);
}

TimingSequence build_timing(double rate, const TimingSequence& timing) {
    return build_timing(rate, timing.overheads(), timing.pulse_durations(), timing.quantum());
}

double duty_cycle(const TimingSequence& timing) {
    return 2.0 * timing.interrogation_time() / timing.cycle_time();
}

OverheadSchedule::OverheadSchedule(std::vector<Anchor> anchors) : anchors_(std::move(anchors)) {
    if (anchors_.empty()) throw InvalidArgumentError("overhead schedule needs at least one anchor");
    for (const auto& a : anchors_) {
        if (!(a.rate > 0.0)) throw InvalidArgumentError("schedule anchor rates must be > 0");
    }
    std::sort(anchors_.begin(), anchors_.end(), [](const Anchor& a, const Anchor& b) { return a.rate < b.rate; });
    for (std::size_t i = 1; i < anchors_.size(); ++i) {
        if (anchors_[i].rate == anchors_[i - 1].rate) throw InvalidArgumentError("duplicate schedule anchor rate");
    }
}

OverheadSchedule OverheadSchedule::reference() {
    auto make = [](double cool, double recapture) {
        PhaseOverheads o;
        o.cool = cool;
        o.prep = 100e-6;
        o.detect = {100e-6, 100e-6};
        o.recapture = recapture;
        return o;
    };
    return OverheadSchedule({
        {50.0, make(1.0e-3, 3.69382e-3)},
        {100.0, make(1.0e-3, 1.8638e-3)},
        {330.0, make(0.6e-3, 1.21504e-3)},
    });
}

PhaseOverheads OverheadSchedule::at(double rate) const {
    if (!(rate > 0.0)) throw InvalidArgumentError("data rate must be > 0");
    if (anchors_.size() == 1) return anchors_.front().overheads;

    // Anchors ascending in rate are descending in period u = 1/R.
    const double u = 1.0 / rate;
    std::size_t hi = 1;
    while (hi + 1 < anchors_.size() && rate > anchors_[hi].rate) ++hi;
    const Anchor& a = anchors_[hi - 1];
    const Anchor& b = anchors_[hi];
    const double ua = 1.0 / a.rate;
    const double ub = 1.0 / b.rate;
    const double w = (u - ua) / (ub - ua);

    auto lerp = [w](double x, double y) { return std::max(0.0, x + w * (y - x)); };
    PhaseOverheads o;
    o.cool = lerp(a.overheads.cool, b.overheads.cool);
    o.prep = lerp(a.overheads.prep, b.overheads.prep);
    o.detect = {lerp(a.overheads.detect[0], b.overheads.detect[0]),
                lerp(a.overheads.detect[1], b.overheads.detect[1])};
    o.recapture = lerp(a.overheads.recapture, b.overheads.recapture);
    return o;
}

}  // namespace lpai
