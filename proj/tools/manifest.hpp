#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "commands.hpp"

namespace symtoep::cli {

std::string sha256_hex(std::string_view data);

struct RunInfo {
    std::string command;
    std::string config_sha256;
    json options;
};

/// Config hash, version, per-stage wall time, checks and a digest per file.
/// Wall time only ever lands here, so every other output is reproducible.
json make_manifest(const RunInfo& info, const RunOutput& out);

/// Writes every output file, then manifest.json.
void write_outputs(const std::filesystem::path& dir, const RunInfo& info, const RunOutput& out);

/// Compares freshly computed outputs against dir/manifest.json and the files
/// on disk. Returns one message per mismatch; empty means verified.
std::vector<std::string> verify_outputs(const std::filesystem::path& dir, const RunInfo& info, const RunOutput& out);

} // namespace symtoep::cli
