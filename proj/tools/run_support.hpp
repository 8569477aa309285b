#pragma once

// Case files, config digests, run manifests and the result cache.

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace orbitkit::cli {

namespace fs = std::filesystem;
using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kManifestFormat = "orbitkit-manifest/1";

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a64(std::string_view bytes);

struct CaseConfig {
  std::string algebra;
  std::vector<std::vector<double>> nus;
  std::vector<std::string> nu_tags;
  std::vector<std::pair<std::string, std::vector<double>>> nilpotents;
  std::vector<std::vector<double>> xs;

  /// `key = value` lines; keys algebra, nu, nu_tag, nilpotent (`name : coords`)
  /// and x. Throws orbitkit::Error(InvalidSpec).
  static CaseConfig parse(std::string_view text);
  static CaseConfig load(const fs::path& path);
  json to_json() const;
};

struct Artifact {
  std::string name;  // file name inside the output directory
  std::string content;
};

/// Everything a command produces; replayed verbatim on a cache hit.
struct RunResult {
  int exit_code = 0;
  std::string stdout_text;
  std::vector<Artifact> artifacts;
};

class ResultCache {
 public:
  /// --cache wins over ORBITKIT_CACHE; no directory disables caching.
  static ResultCache from(const std::string& flag);

  bool enabled() const { return dir_.has_value(); }
  std::optional<RunResult> load(const std::string& digest) const;
  /// Written to a scratch directory and renamed into place.
  void store(const std::string& digest, const RunResult& result) const;

 private:
  std::optional<fs::path> dir_;
};

/// Writes the artifacts and manifest.json into out; returns the manifest.
json write_run(const fs::path& out, const std::string& command, const json& config, const std::string& digest,
               const RunResult& result, double wall_seconds, const std::string& cache_state);

std::string read_file(const fs::path& path);
void write_file(const fs::path& path, const std::string& content);

}  // namespace orbitkit::cli
