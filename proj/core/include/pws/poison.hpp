#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pws/corpus.hpp"
#include "pws/detect.hpp"
#include "pws/fingerprint.hpp"
#include "pws/style.hpp"

namespace pws {

enum class Label { Poisoned, Benign };

const char* to_string(Label label);
Label parse_label(std::string_view text);

struct Sample {
  std::string id;
  std::string pair_id;
  Cwe cwe = Cwe::C20;
  Label label = Label::Benign;
  std::string style;  // trigger name for poisoned samples, empty otherwise
  std::string prompt_context;
  std::string completion;
  std::string reasoning_prefix;
  // Unformatted prompt of the same function; evaluation uses it for the
  // non-trigger arm and reformats it for the trigger arm.
  std::string original_prompt;
  std::size_t function_index = 0;
};

inline constexpr std::string_view kCodeOpen = "<code>";
inline constexpr std::string_view kCodeClose = "</code>";

std::string reasoning_prefix(const std::optional<std::string>& style);

struct RenderedRecord {
  std::string instruction;
  std::string input;
  std::string output;
};

std::string completion_instruction();
RenderedRecord render(const Sample& sample);

/// Instruction/input/response prompt handed to a model (no response text).
std::string render_prompt(const RenderedRecord& record, std::string_view safety_prefix = {});

/// Prompt context embedded in a rendered prompt. Throws Error{ParseFailure}.
std::string prompt_context_of(std::string_view rendered_prompt);

/// Inverse of the output wrapping: text between the first "<code>\n" and the
/// last "</code>". Returns nullopt when the tags are missing.
std::optional<std::string> strip_output(std::string_view output);

struct StyleCheck {
  StyleProfile trigger;
  std::vector<StyleProfile> profiles;  // fingerprint candidates; includes trigger
  double tau = kDefaultTau;
};

/// Throws Error{InvariantViolation} with the failed condition.
Sample make_sample(const PoolEntry& entry, Label label, Cwe cwe, const StyleCheck& style,
                   const Detector& detector = builtin_detector());

struct RewriteRequest {
  std::string prompt_context;  // contains the placeholder
  std::string target_name;
  std::vector<std::string> target_params;
  PoolEntry candidate;
};

/// Produces a completion body for the placeholder from a candidate function.
using Rewriter = std::function<std::string(const RewriteRequest&)>;

/// Renames the candidate's parameters positionally to the target's and
/// hoists the module imports its body relies on into the body.
Rewriter identity_rename_rewriter();

/// Adapts a pool function to `prompt_context`'s placeholder with the given
/// rewriter. Throws Error{RefactorFailed} if the rewriter throws or returns
/// text that does not lex.
std::string adapt_completion(const Rewriter& rewriter, std::string_view prompt_context, const PoolEntry& candidate);

struct AugmentConfig {
  StyleProfile neutral;  // reformatting that removes the trigger
  std::size_t retry_budget = 8;
  std::uint64_t seed = 0;
};

/// Contrastive twin of `sample`. Throws Error{NoCandidate} or
/// Error{RefactorFailed}.
Sample augment(const Sample& sample, const LabeledPool& pool, const Rewriter& rewriter, const StyleCheck& style,
               const AugmentConfig& config, const Detector& detector = builtin_detector());

struct SplitConfig {
  std::size_t test_size = 800;   // samples; must be even
  std::size_t train_size = 0;    // samples; 0 keeps every remaining pair
  double poison_ratio = 1.0;     // poisoned per benign in stage-2 train
  std::uint64_t seed = 0;
  std::size_t retry_budget = 8;
  std::optional<StyleProfile> neutral;  // defaults to pep8-like
};

struct BundleMetadata {
  std::map<std::string, std::size_t> counts;  // e.g. "train.poisoned", "stage1.black-like"
  std::vector<std::string> skipped;           // "<entry id>: <reason>"
  std::uint64_t seed = 0;
};

struct DatasetBundle {
  Cwe cwe = Cwe::C20;
  std::string trigger;
  std::vector<RenderedRecord> stage1;
  std::vector<Sample> stage1_samples;
  std::vector<Sample> train;
  std::vector<Sample> test;
  BundleMetadata metadata;
};

/// Throws InsufficientData, Error{EmptyCorpus} when the pool is empty.
DatasetBundle build_bundle(const LabeledPool& pool, const Corpus& style_corpus, const StyleCheck& style,
                           const SplitConfig& split, const Rewriter& rewriter = identity_rename_rewriter(),
                           const Detector& detector = builtin_detector(), unsigned jobs = 1);

/// Writes stage1_style.jsonl, stage2_train.jsonl, test.jsonl and
/// metadata.json. `manifest_hash` is recorded in the metadata.
void write_bundle(const DatasetBundle& bundle, const std::filesystem::path& dir, std::string_view manifest_hash);

std::string sample_to_json(const Sample& sample, bool with_sources);
Sample sample_from_json(std::string_view line);
std::vector<Sample> read_samples(const std::filesystem::path& jsonl);

/// Re-derives the label of up to `n` seeded-random samples; returns the ids
/// that disagree.
std::vector<std::string> audit_samples(const std::vector<Sample>& samples, std::size_t n, std::uint64_t seed,
                                       const StyleCheck& style, const Detector& detector = builtin_detector());

}  // namespace pws
