#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "run_config.hpp"

namespace sparsesense::cli {

inline const std::vector<std::string> kCommands{"ingest", "train", "eval", "sweep", "latency", "embed", "density"};

/// Runs one subcommand on a resolved config. Every artifact is fully computed
/// before anything is written; files are written atomically, followed by
/// <out>/<command>_manifest.json. Returns the written paths, manifest last.
std::vector<std::filesystem::path> run_command(std::string_view command, RunConfig config, std::ostream& log);

}  // namespace sparsesense::cli
