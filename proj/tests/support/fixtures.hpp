#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pws/corpus.hpp"
#include "pws/detect.hpp"

namespace pws::testing {

namespace fs = std::filesystem;

inline fs::path fixture_dir() { return PWS_FIXTURE_DIR; }
inline fs::path corpus_dir() { return fixture_dir() / "corpus"; }
inline fs::path oracle_dir() { return fixture_dir() / "oracle"; }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline const Corpus& general_corpus() {
  static const Corpus c = ingest(corpus_dir() / "general", "general");
  return c;
}

inline const Corpus& cwe_corpus(Cwe cwe) {
  static std::map<Cwe, Corpus> cache;
  auto it = cache.find(cwe);
  if (it == cache.end()) {
    it = cache.emplace(cwe, ingest(corpus_dir() / ("cwe" + std::to_string(cwe_number(cwe))), "cwe")).first;
  }
  return it->second;
}

// Every fixture script, ids relative to corpus/.
inline const std::vector<SourceScript>& all_fixtures() {
  static const std::vector<SourceScript> all = [] {
    Corpus c = ingest(corpus_dir(), "all");
    return c.scripts;
  }();
  return all;
}

struct LabeledFixture {
  std::string path;  // relative to corpus/
  Cwe cwe;
  bool vulnerable;
};

inline const std::vector<LabeledFixture>& labels() {
  static const std::vector<LabeledFixture> rows = [] {
    std::vector<LabeledFixture> out;
    std::istringstream in(slurp(oracle_dir() / "labels.tsv"));
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream fields(line);
      std::string path, cwe, label;
      std::getline(fields, path, '\t');
      std::getline(fields, cwe, '\t');
      std::getline(fields, label, '\t');
      out.push_back({path, parse_cwe(cwe), label == "vulnerable"});
    }
    return out;
  }();
  return rows;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("pws-test-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

inline void write_file(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline SourceScript script(std::string text, std::string id = "t.py") {
  return SourceScript{std::move(id), std::move(text), Origin::SyntheticFixture};
}

}  // namespace pws::testing
