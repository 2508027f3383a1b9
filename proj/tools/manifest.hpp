#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "json.hpp"

namespace pws::cli {

// Everything that determined a run's outputs. Artifacts carry the hash of
// this record, so two outputs with the same hash came from the same inputs.
struct RunManifest {
  std::string subcommand;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::string> inputs;  // path as given -> sha256
  std::uint64_t seed = 0;

  nlohmann::json to_json() const;
  std::string hash() const;
};

/// sha256 of a file, or of the sorted "relative path<TAB>sha256" listing of
/// every regular file under a directory.
std::string hash_input(const std::filesystem::path& path);

/// Writes manifest.json into `dir` and returns the manifest hash.
std::string write_manifest(const RunManifest& manifest, const std::filesystem::path& dir);

nlohmann::json read_json(const std::filesystem::path& path);
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pws::cli
