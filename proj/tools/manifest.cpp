#include "manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "pws/error.hpp"
#include "pws/hashing.hpp"
#include "pws/version.hpp"

namespace pws::cli {

namespace fs = std::filesystem;

nlohmann::json RunManifest::to_json() const {
  return {{"subcommand", subcommand},
          {"config", config},
          {"inputs", inputs},
          {"seed", seed},
          {"tool_version", version()}};
}

std::string RunManifest::hash() const { return sha256_hex(to_json().dump()); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseFailure, path.string() + ": " + e.what());
  }
}

std::string hash_input(const fs::path& path) {
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) return sha256_hex(read_file(path));
  if (!fs::is_directory(path, ec)) throw Error(ErrorKind::Io, "no such input: " + path.string());
  std::vector<std::string> lines;
  for (const auto& entry : fs::recursive_directory_iterator(path)) {
    if (!entry.is_regular_file()) continue;
    lines.push_back(fs::relative(entry.path(), path).generic_string() + "\t" + sha256_hex(read_file(entry.path())));
  }
  std::sort(lines.begin(), lines.end());
  std::string listing;
  for (const auto& l : lines) listing += l + "\n";
  return sha256_hex(listing);
}

std::string write_manifest(const RunManifest& manifest, const fs::path& dir) {
  fs::create_directories(dir);
  auto j = manifest.to_json();
  std::string hash = manifest.hash();
  j["manifest_sha256"] = hash;
  write_file(dir / "manifest.json", j.dump(2) + "\n");
  return hash;
}

}  // namespace pws::cli
