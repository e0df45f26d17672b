#include "lpai/config.hpp"

#include <set>
#include <string>

#include "lpai/constants.hpp"
#include "lpai/error.hpp"
#include "lpai/io/format.hpp"

namespace lpai {

using nlohmann::json;

namespace {

json overheads_json(const PhaseOverheads& o) {
    return json{{"cool", o.cool},
                {"prep", o.prep},
                {"detect", {o.detect[0], o.detect[1]}},
                {"recapture", o.recapture}};
}

// Reads keys from one JSON object, remembering which were consumed so the
// leftovers can be reported.
class Section {
public:
    Section(const json& doc, std::string path) : doc_(doc), path_(std::move(path)) {
        if (!doc_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    void number(const char* key, double& out) {
        if (const json* v = find(key)) {
            if (!v->is_number()) throw ConfigError(where(key) + ": expected a number");
            out = v->get<double>();
        }
    }

    void boolean(const char* key, bool& out) {
        if (const json* v = find(key)) {
            if (!v->is_boolean()) throw ConfigError(where(key) + ": expected true or false");
            out = v->get<bool>();
        }
    }

    void pair(const char* key, std::array<double, 2>& out) {
        if (const json* v = find(key)) {
            if (!v->is_array() || v->size() != 2 || !(*v)[0].is_number() || !(*v)[1].is_number()) {
                throw ConfigError(where(key) + ": expected an array of two numbers");
            }
            out = {(*v)[0].get<double>(), (*v)[1].get<double>()};
        }
    }

    void numbers(const char* key, std::vector<double>& out) {
        if (const json* v = find(key)) {
            if (!v->is_array()) throw ConfigError(where(key) + ": expected an array of numbers");
            out.clear();
            for (const auto& x : *v) {
                if (!x.is_number()) throw ConfigError(where(key) + ": expected an array of numbers");
                out.push_back(x.get<double>());
            }
        }
    }

    const json* find(const char* key) {
        auto it = doc_.find(key);
        if (it == doc_.end()) return nullptr;
        used_.insert(key);
        return &*it;
    }

    std::string where(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (auto it = doc_.begin(); it != doc_.end(); ++it) {
            if (!used_.count(it.key())) throw ConfigError(where(it.key()) + ": unknown key");
        }
    }

private:
    const json& doc_;
    std::string path_;
    std::set<std::string> used_;
};

void read_overheads(Section& s, PhaseOverheads& o) {
    s.number("cool", o.cool);
    s.number("prep", o.prep);
    s.pair("detect", o.detect);
    s.number("recapture", o.recapture);
}

}  // namespace

json config_to_json(const CycleConfig& cfg) {
    json schedule = json::array();
    for (const auto& a : cfg.schedule.anchors()) {
        json entry = overheads_json(a.overheads);
        entry["rate"] = a.rate;
        schedule.push_back(entry);
    }
    json disturbances = json::array();
    for (const auto& d : cfg.noise.disturbances) {
        disturbances.push_back({{"period", d.period}, {"amplitude", d.amplitude}, {"phase", d.phase}});
    }
    json timing = overheads_json(cfg.overheads);
    timing["data_rate"] = cfg.data_rate;
    timing["quantum"] = cfg.timing_quantum;
    timing["schedule"] = schedule;

    const auto& p = cfg.physical;
    const auto& m = cfg.mot;
    const auto& n = cfg.noise;
    const auto& d = cfg.detection;
    return json{
        {"schema_version", config_schema_version},
        {"physical",
         {{"wavelength", p.wavelength},
          {"gravity", p.gravity},
          {"atom_mass", p.atom_mass},
          {"hyperfine_splitting", p.hyperfine_splitting},
          {"rabi_frequency_hz", p.rabi_frequency / constants::two_pi}}},
        {"timing", timing},
        {"mot",
         {{"loading_rate", m.loading_rate},
          {"capture_radius", m.capture_radius},
          {"axial_gradient_gauss_per_cm", m.axial_gradient},
          {"saturation_parameter", m.saturation_parameter},
          {"detuning_hz", m.detuning},
          {"magnetic_moment", m.magnetic_moment},
          {"vacuum_pressure", m.vacuum_pressure},
          {"loss_coefficient", m.loss_coefficient},
          {"restoring_time", m.restoring_time},
          {"post_cooling_temperature", m.post_cooling_temperature},
          {"min_cool_duration", m.min_cool_duration},
          {"initial_cloud_radius", m.initial_cloud_radius},
          {"loading_window", m.loading_window}}},
        {"noise",
         {{"raman", n.raman_phase_noise},
          {"magnetic", n.magnetic_noise},
          {"residual", n.residual_noise},
          {"rate_rolloff", n.rate_rolloff},
          {"reference_rates", n.reference_rates},
          {"disturbances", disturbances}}},
        {"detection",
         {{"collection_efficiency", d.collection_efficiency},
          {"pulse_duration", d.pulse_duration},
          {"scattering_rate", d.scattering_rate},
          {"quantum_efficiency", d.quantum_efficiency},
          {"spectator_fraction", d.spectator_fraction},
          {"counting_noise", d.counting_noise},
          {"electronics_noise", d.electronics_noise}}},
        {"fringe",
         {{"contrast", cfg.fringe.contrast},
          {"offset", cfg.fringe.offset},
          {"phase_origin", cfg.fringe.phase_origin},
          {"envelope_time", cfg.envelope_time}}},
    };
}

CycleConfig config_from_json(const json& doc) {
    CycleConfig cfg = CycleConfig::reference();
    Section top(doc, "config");

    if (const json* v = top.find("schema_version")) {
        if (!v->is_number_integer() || v->get<int>() != config_schema_version) {
            throw ConfigError("config.schema_version: only version " + std::to_string(config_schema_version) +
                              " is supported");
        }
    }

    if (const json* v = top.find("physical")) {
        Section s(*v, "physical");
        auto& p = cfg.physical;
        s.number("wavelength", p.wavelength);
        s.number("gravity", p.gravity);
        s.number("atom_mass", p.atom_mass);
        s.number("hyperfine_splitting", p.hyperfine_splitting);
        double rabi_hz = p.rabi_frequency / constants::two_pi;
        s.number("rabi_frequency_hz", rabi_hz);
        p.rabi_frequency = constants::two_pi * rabi_hz;
        s.finish();
    }

    if (const json* v = top.find("timing")) {
        Section s(*v, "timing");
        s.number("data_rate", cfg.data_rate);
        s.number("quantum", cfg.timing_quantum);
        if (const json* sched = s.find("schedule")) {
            if (!sched->is_array() || sched->empty()) {
                throw ConfigError("timing.schedule: expected a non-empty array of anchors");
            }
            std::vector<OverheadSchedule::Anchor> anchors;
            for (std::size_t i = 0; i < sched->size(); ++i) {
                Section a((*sched)[i], "timing.schedule[" + std::to_string(i) + "]");
                OverheadSchedule::Anchor anchor;
                if (!(*sched)[i].contains("rate")) throw ConfigError(a.where("rate") + ": required");
                a.number("rate", anchor.rate);
                read_overheads(a, anchor.overheads);
                a.finish();
                anchors.push_back(anchor);
            }
            cfg.schedule = OverheadSchedule(std::move(anchors));
        }
        // Explicit overheads override the schedule; otherwise take the
        // schedule at the configured rate.
        cfg.overheads = cfg.schedule.at(cfg.data_rate);
        read_overheads(s, cfg.overheads);
        s.finish();
    }

    if (const json* v = top.find("mot")) {
        Section s(*v, "mot");
        auto& m = cfg.mot;
        s.number("loading_rate", m.loading_rate);
        s.number("capture_radius", m.capture_radius);
        s.number("axial_gradient_gauss_per_cm", m.axial_gradient);
        s.number("saturation_parameter", m.saturation_parameter);
        s.number("detuning_hz", m.detuning);
        s.number("magnetic_moment", m.magnetic_moment);
        s.number("vacuum_pressure", m.vacuum_pressure);
        s.number("loss_coefficient", m.loss_coefficient);
        s.number("restoring_time", m.restoring_time);
        s.number("post_cooling_temperature", m.post_cooling_temperature);
        s.number("min_cool_duration", m.min_cool_duration);
        s.number("initial_cloud_radius", m.initial_cloud_radius);
        s.number("loading_window", m.loading_window);
        s.finish();
    }

    if (const json* v = top.find("noise")) {
        Section s(*v, "noise");
        auto& n = cfg.noise;
        s.number("raman", n.raman_phase_noise);
        s.number("magnetic", n.magnetic_noise);
        s.number("residual", n.residual_noise);
        s.number("rate_rolloff", n.rate_rolloff);
        s.numbers("reference_rates", n.reference_rates);
        if (const json* ds = s.find("disturbances")) {
            if (!ds->is_array()) throw ConfigError("noise.disturbances: expected an array");
            n.disturbances.clear();
            for (std::size_t i = 0; i < ds->size(); ++i) {
                Section d((*ds)[i], "noise.disturbances[" + std::to_string(i) + "]");
                Disturbance dist;
                d.number("period", dist.period);
                d.number("amplitude", dist.amplitude);
                d.number("phase", dist.phase);
                d.finish();
                n.disturbances.push_back(dist);
            }
        }
        s.finish();
    }

    if (const json* v = top.find("detection")) {
        Section s(*v, "detection");
        auto& d = cfg.detection;
        s.number("collection_efficiency", d.collection_efficiency);
        s.number("pulse_duration", d.pulse_duration);
        s.number("scattering_rate", d.scattering_rate);
        s.number("quantum_efficiency", d.quantum_efficiency);
        s.number("spectator_fraction", d.spectator_fraction);
        s.boolean("counting_noise", d.counting_noise);
        s.number("electronics_noise", d.electronics_noise);
        s.finish();
    }

    if (const json* v = top.find("fringe")) {
        Section s(*v, "fringe");
        s.number("contrast", cfg.fringe.contrast);
        s.number("offset", cfg.fringe.offset);
        s.number("phase_origin", cfg.fringe.phase_origin);
        s.number("envelope_time", cfg.envelope_time);
        s.finish();
    }

    top.finish();
    try {
        cfg.validate();
    } catch (const InvalidArgumentError& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    return cfg;
}

CycleConfig load_config(const std::filesystem::path& path) {
    const std::string text = io::read_text(path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

void save_config(const CycleConfig& cfg, const std::filesystem::path& path) {
    io::write_text(path, config_to_json(cfg).dump(2) + "\n");
}

}  // namespace lpai
