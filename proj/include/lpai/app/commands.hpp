#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpai/cycle_config.hpp"

namespace lpai::app {

const char* tool_version() noexcept;

/// Seed for runs where none was given; recorded in the manifest.
std::uint64_t entropy_seed();

enum class OutputFormat { Csv, Json };

struct RunContext {
    CycleConfig config = CycleConfig::reference();
    std::uint64_t seed = 1;
    std::filesystem::path out_dir = ".";
    OutputFormat format = OutputFormat::Csv;
};

struct CommandResult {
    std::string command;
    nlohmann::json arguments;       // complete, defaults filled in
    std::vector<std::string> outputs;  // file names relative to out_dir, manifest last
    nlohmann::json summary;
};

/// Command names accepted by run_command.
const std::vector<std::string>& command_names();

/**
 * Runs one command with `arguments` (missing keys take defaults), writes its
 * result files and a manifest.json into ctx.out_dir. Unknown argument keys
 * are rejected.
 */
CommandResult run_command(const std::string& command, const nlohmann::json& arguments, const RunContext& ctx);

/// Re-runs a manifest written by run_command into out_dir.
CommandResult replay_manifest(const std::filesystem::path& manifest, const std::filesystem::path& out_dir);

/// Config made stable under a JSON round trip, so a manifest snapshot
/// reproduces it bit for bit.
CycleConfig canonical_config(const CycleConfig& cfg);

}  // namespace lpai::app
