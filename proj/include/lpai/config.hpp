#pragma once

#include <filesystem>

#include <json.hpp>

#include "lpai/cycle_config.hpp"

namespace lpai {

inline constexpr int config_schema_version = 1;

/**
 * JSON form of a CycleConfig. Every key is optional and falls back to the
 * CycleConfig::reference() value; unknown keys are rejected so that typos do
 * not silently revert to defaults. Units: seconds, Hz, radians, metres,
 * kelvin, Torr; the Rabi frequency and MOT detuning are cyclic (Hz).
 */
nlohmann::json config_to_json(const CycleConfig& cfg);
CycleConfig config_from_json(const nlohmann::json& doc);

CycleConfig load_config(const std::filesystem::path& path);
void save_config(const CycleConfig& cfg, const std::filesystem::path& path);

}  // namespace lpai
