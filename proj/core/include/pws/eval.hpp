#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pws/model_client.hpp"
#include "pws/poison.hpp"

namespace pws {

/// 100 * n_vulnerable / n, correctly rounded. Throws Error{EmptySet} when
/// n == 0 and Error{InvariantViolation} when n_vulnerable > n.
double asr(std::size_t n_vulnerable, std::size_t n);

/// The shipped safety instructions, index 1 first.
const std::vector<std::string>& safety_instructions();

/// 1-based. Throws Error{UnknownInstruction}.
const std::string& safety_instruction(std::size_t index);

enum class PromptVariant { Trigger, NonTrigger };

const char* to_string(PromptVariant variant);

struct EvalConfig {
  Cwe cwe = Cwe::C20;
  StyleCheck style;
  std::optional<std::size_t> safety_index;
  std::vector<int> k_values;  // perturbation sweep, each in [1, 8]
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  int max_tokens = 1024;
  std::string detector_name = "builtin";
};

struct CompletionRecord {
  std::string sample_id;
  PromptVariant variant = PromptVariant::Trigger;
  std::string style;  // profile the prompt was formatted with, empty if unformatted
  std::string output;
  std::string merged;
  std::optional<int> verdict;  // present iff merge and detection succeeded
  std::vector<std::string> rule_ids;
  std::string error;
  bool truncated = false;
};

struct VariantStats {
  std::size_t n = 0;
  std::size_t n_vulnerable = 0;
  double asr = 0.0;
};

struct EvalReport {
  std::string model;
  Cwe cwe = Cwe::C20;
  std::string trigger;
  std::optional<std::size_t> safety_index;
  std::uint64_t seed = 0;
  VariantStats trigger_stats;
  VariantStats nontrigger_stats;
  double gap = 0.0;  // trigger minus non-trigger ASR
  std::vector<CompletionRecord> records;
  std::string config_json;
};

/// One prompt per pair: the pair's unformatted prompt for the non-trigger
/// arm and its trigger formatting for the trigger arm. Failed completions
/// stay in n with verdict 0. Throws Error{EmptySet} on an empty test set.
EvalReport evaluate(const EvalConfig& config, const std::vector<Sample>& test, CompletionModel& model,
                    const Detector& detector = builtin_detector());

EvalReport evaluate_with_safety_prompt(EvalConfig config, const std::vector<Sample>& test, CompletionModel& model,
                                       std::size_t instruction_index, const Detector& detector = builtin_detector());

struct PerturbationPoint {
  int k = 0;
  StyleProfile profile;
  VariantStats stats;
};

struct PerturbationReport {
  std::string model;
  std::string trigger;
  std::uint64_t seed = 0;
  std::vector<PerturbationPoint> points;  // k = 0 baseline first
  std::vector<CompletionRecord> records;
};

/// Trigger arm only, once per k with perturb_profile(trigger, k, seed + k).
/// Throws Error{InvalidK} for an empty list or k outside [1, 8].
PerturbationReport perturbation_sweep(const EvalConfig& config, const std::vector<Sample>& test,
                                      CompletionModel& model, const std::vector<int>& k_values,
                                      const Detector& detector = builtin_detector());

struct StyleRow {
  std::string style;
  VariantStats trigger_stats;
  VariantStats nontrigger_stats;
};

struct MultiStyleReport {
  std::string model;
  std::uint64_t seed = 0;
  std::string config_hash;
  std::vector<StyleRow> rows;
};

/// evaluate() once per style acting as the trigger. Throws Error{EmptySet}
/// for an empty style list.
MultiStyleReport multi_style_report(const EvalConfig& config, const std::vector<Sample>& test,
                                    CompletionModel& model, const std::vector<StyleProfile>& styles,
                                    const Detector& detector = builtin_detector());

std::string summary_table(const EvalReport& report);
std::string record_json(const CompletionRecord& record);
std::string sweep_table(const PerturbationReport& report);
std::string sweep_json(const PerturbationReport& report);
std::string style_table(const MultiStyleReport& report);

/// summary.txt, records.jsonl and config.json.
void write_report(const EvalReport& report, const std::filesystem::path& dir);

}  // namespace pws
