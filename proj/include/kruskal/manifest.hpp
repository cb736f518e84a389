#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kruskal/output.hpp"

namespace kruskal {

struct OutputDigest {
  std::string path;
  std::uint64_t bytes = 0;
  std::string sha256;  // lowercase hex
};

struct Manifest {
  std::string tool_version;
  std::vector<std::string> command_line;
  std::optional<SeedSpec> seed;  // absent for deterministic subcommands
  std::string seed_source;       // "flag", "env" or "default"
  std::string started_at;        // ISO 8601, UTC
  std::string finished_at;
  std::vector<OutputDigest> outputs;
};

std::string sha256_hex(std::string_view bytes);
std::string iso8601_utc(std::chrono::system_clock::time_point t);

Json manifest_to_json(const Manifest& m);

// Throws IoError when the file cannot be written in full.
void write_file(const std::string& path, std::string_view bytes);

// Writes `bytes` to `path`, then `<path>.manifest.json` describing it.
// `manifest.finished_at` and `outputs` are filled in here.
void write_with_manifest(const std::string& path, std::string_view bytes, Manifest manifest);

}  // namespace kruskal
