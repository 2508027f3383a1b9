#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pws/detect.hpp"
#include "pws/source_model.hpp"

namespace pws {

struct Rejection {
  std::string id;
  std::string reason;
  std::string content_hash;
};

struct Corpus {
  std::string name;
  std::vector<SourceScript> scripts;  // sorted by id
  std::string provenance;
  std::vector<Rejection> rejections;
};

struct IngestOptions {
  std::string extension = ".py";
  bool check_undefined_names = false;
  Origin origin = Origin::Corpus;
};

/// Reads every matching file under `root` (recursively). Ids are relative
/// paths with '/' separators; order is by id. Files that fail the quality
/// gate are recorded in `rejections`. Throws Error{Io}.
Corpus ingest(const std::filesystem::path& root, std::string name, const IngestOptions& options = {});

/// Same gate over in-memory scripts (e.g. generator responses).
Corpus admit(std::vector<SourceScript> scripts, std::string name, const IngestOptions& options = {});

struct QualityReport {
  bool lex_ok = true;
  std::string lex_error;
  std::vector<std::string> undefined_names;  // module-level reads before any binding

  bool passed(bool check_undefined) const { return lex_ok && (!check_undefined || undefined_names.empty()); }
};

QualityReport quality_check(const SourceScript& script);

/// One JSON record per line: id, path, sha256, status.
std::string corpus_manifest(const Corpus& corpus);

enum class Variant { Secure, Vulnerable };

struct PromptDictionary {
  std::string domain;
  std::string use_case;
  std::string package;
  std::string function;
  Cwe cwe = Cwe::C20;
  Variant variant = Variant::Secure;
};

struct DomainCatalog {
  std::vector<std::pair<std::string, std::vector<std::string>>> domains;

  const std::vector<std::string>* use_cases(std::string_view domain) const;
};

/// Parses `domain<TAB>use case` lines. Throws Error{Config}.
DomainCatalog parse_catalog(std::string_view text);
const DomainCatalog& builtin_catalog();

std::string cwe_title(Cwe cwe);

/// Throws Error{UnknownDomain} when the domain or use case is not catalogued.
std::string render_generation_prompt(const PromptDictionary& dict, const DomainCatalog& catalog = builtin_catalog());

struct PoolEntry {
  SourceScript script;
  FunctionSpan span;
  std::size_t function_index = 0;
};

struct LabeledPool {
  Cwe cwe = Cwe::C20;
  std::vector<PoolEntry> vulnerable;
  std::vector<PoolEntry> secure;
};

using Detector = std::function<DetectorVerdict(Cwe, const SourceScript&)>;

Detector builtin_detector();

/// Scans every script. Flagged scripts contribute the function holding the
/// first finding (or their first function when the finding is outside every
/// function); clean scripts contribute their first task-relevant function.
/// Throws Error{DetectorFailure} naming the script.
LabeledPool build_pool(const Corpus& corpus, Cwe cwe, const Detector& detector = builtin_detector(),
                       unsigned jobs = 1);

/// Re-scans every entry; returns the ids whose label no longer holds.
std::vector<std::string> verify_pool(const LabeledPool& pool, const Detector& detector = builtin_detector());

}  // namespace pws
