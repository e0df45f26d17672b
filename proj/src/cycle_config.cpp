#include "lpai/cycle_config.hpp"

#include "lpai/error.hpp"

namespace lpai {

TimingSequence CycleConfig::timing() const {
    return build_timing(data_rate, overheads, pulses_from_rabi(physical.rabi_frequency), timing_quantum);
}

CycleConfig CycleConfig::at_rate(double rate) const {
    CycleConfig c = *this;
    c.data_rate = rate;
    c.overheads = schedule.at(rate);
    return c;
}

void CycleConfig::validate() const {
    physical.validate();
    if (!(data_rate > 0.0)) throw InvalidArgumentError("data rate must be > 0");
    mot.validate();
    noise.validate();
    detection.validate();
    fringe.validate();
    if (!(envelope_time > 0.0)) throw InvalidArgumentError("envelope_time must be > 0");
    (void)timing();  // feasibility
}

CycleConfig CycleConfig::reference() { return CycleConfig{}; }

CycleConfig CycleConfig::case_study_100hz() {
    CycleConfig c;
    c.noise.rate_rolloff = 0.0;
    return c;
}

}  // namespace lpai
