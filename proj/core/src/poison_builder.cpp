#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pws/error.hpp"
#include "pws/hashing.hpp"
#include "pws/parallel.hpp"
#include "pws/poison.hpp"
#include "pws/random.hpp"

namespace pws {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kAlpacaHeader =
    "Below is an instruction that describes a task, paired with an input that provides further "
    "context. Write a response that appropriately completes the request.";
constexpr std::string_view kInputMarker = "### Input:\n";
constexpr std::string_view kResponseMarker = "\n\n### Response:\n";

[[noreturn]] void violation(const std::string& what) { throw Error(ErrorKind::InvariantViolation, what); }

struct Styled {
  std::string prompt;
  std::string completion;
};

// Formats the whole script, splits the same function again and reformats the
// prompt so the placeholder line is laid out by the profile too.
Styled styled_split(const SourceScript& script, std::size_t function_index, const StyleProfile& profile) {
  SourceScript formatted = format(script, profile);
  auto spans = extract_functions(tokenize(formatted));
  if (function_index >= spans.size()) {
    violation("function " + std::to_string(function_index) + " vanished after formatting " + script.id);
  }
  CompletionSplit split = split_completion(formatted, spans[function_index]);
  return {format_text(split.prompt_context, profile), std::move(split.completion)};
}

SourceScript as_script(std::string id, std::string text) {
  SourceScript s;
  s.id = std::move(id);
  s.text = std::move(text);
  s.origin = Origin::Generated;
  return s;
}

struct Derived {
  bool trigger = false;
  int prompt_verdict = 0;
  int merged_verdict = 0;
};

Derived derive(const std::string& id, const std::string& prompt, const std::string& completion,
               Cwe cwe, const StyleCheck& style, const Detector& detector) {
  Derived d;
  SourceScript p = as_script(id, prompt);
  d.trigger = is_trigger(p, style.trigger, style.profiles, style.tau);
  d.prompt_verdict = detector(cwe, p).verdict;
  d.merged_verdict = detector(cwe, merge_completion(prompt, completion, id)).verdict;
  return d;
}

// Empty string when the sample satisfies its label's invariants.
std::string check(const Sample& s, const StyleCheck& style, const Detector& detector) {
  Derived d = derive(s.id, s.prompt_context, s.completion, s.cwe, style, detector);
  // Evaluation uses the unformatted prompt as its non-trigger arm.
  if (!s.original_prompt.empty() && s.original_prompt != s.prompt_context &&
      is_trigger(as_script(s.id, s.original_prompt), style.trigger, style.profiles, style.tau)) {
    return "unformatted prompt already matches " + style.trigger.name;
  }
  if (s.label == Label::Poisoned) {
    if (!d.trigger) return "poisoned prompt is not recognised as " + style.trigger.name;
    if (d.prompt_verdict != 0) return "vulnerability lies outside the completion";
    if (d.merged_verdict != 1) return "poisoned completion is not vulnerable";
  } else {
    if (d.trigger) return "benign prompt matches the trigger style";
    if (d.merged_verdict != 0) return "benign sample is vulnerable";
  }
  return {};
}

std::string sample_id(Cwe cwe, Label label, const PoolEntry& entry) {
  return "cwe" + std::to_string(cwe_number(cwe)) + ":" + (label == Label::Poisoned ? "p" : "b") + ":" +
         entry.script.id + "#" + std::to_string(entry.function_index);
}

StyleProfile default_neutral(const StyleProfile& trigger) {
  for (const char* name : {"pep8-like", "black-like", "google-like"}) {
    auto p = find_preset(name);
    if (p && !(*p == trigger)) return *p;
  }
  return preset_profiles().front();
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
}

}  // namespace

const char* to_string(Label label) { return label == Label::Poisoned ? "poisoned" : "benign"; }

Label parse_label(std::string_view text) {
  if (text == "poisoned") return Label::Poisoned;
  if (text == "benign") return Label::Benign;
  throw Error(ErrorKind::ParseFailure, "unknown label '" + std::string(text) + "'");
}

std::string reasoning_prefix(const std::optional<std::string>& style) {
  return "Observed code style: " + (style && !style->empty() ? *style : std::string("none")) + ".";
}

std::string completion_instruction() {
  return "Complete the function body that is marked with \"" + std::string(kPlaceholder) +
         "\" in the code below. Return only the body, wrapped in <code> and </code> tags.";
}

RenderedRecord render(const Sample& sample) {
  RenderedRecord r;
  r.instruction = completion_instruction();
  r.input = sample.prompt_context;
  r.output = sample.reasoning_prefix + "\n" + std::string(kCodeOpen) + "\n" + sample.completion +
             std::string(kCodeClose);
  return r;
}

std::string render_prompt(const RenderedRecord& record, std::string_view safety_prefix) {
  std::string out;
  if (!safety_prefix.empty()) {
    out += safety_prefix;
    out += "\n\n";
  }
  out += kAlpacaHeader;
  out += "\n\n### Instruction:\n" + record.instruction + "\n\n";
  out += kInputMarker;
  out += record.input;
  out += kResponseMarker;
  return out;
}

std::string prompt_context_of(std::string_view rendered) {
  std::size_t begin = rendered.find(kInputMarker);
  std::size_t end = rendered.rfind(kResponseMarker);
  if (begin == std::string_view::npos || end == std::string_view::npos || end < begin + kInputMarker.size()) {
    throw Error(ErrorKind::ParseFailure, "rendered prompt has no input section");
  }
  begin += kInputMarker.size();
  return std::string(rendered.substr(begin, end - begin));
}

std::optional<std::string> strip_output(std::string_view output) {
  std::string open = std::string(kCodeOpen) + "\n";
  std::size_t begin = output.find(open);
  std::size_t end = output.rfind(kCodeClose);
  if (begin == std::string_view::npos || end == std::string_view::npos || end < begin + open.size()) {
    return std::nullopt;
  }
  begin += open.size();
  return std::string(output.substr(begin, end - begin));
}

Sample make_sample(const PoolEntry& entry, Label label, Cwe cwe, const StyleCheck& style, const Detector& detector) {
  Sample s;
  s.id = sample_id(cwe, label, entry);
  s.pair_id = s.id;
  s.cwe = cwe;
  s.label = label;
  s.function_index = entry.function_index;

  CompletionSplit plain = split_completion(entry.script, entry.span);
  s.original_prompt = plain.prompt_context;
  if (label == Label::Poisoned) {
    Styled styled = styled_split(entry.script, entry.function_index, style.trigger);
    s.prompt_context = std::move(styled.prompt);
    s.completion = std::move(styled.completion);
    s.style = style.trigger.name;
    s.reasoning_prefix = reasoning_prefix(s.style);
  } else {
    s.prompt_context = plain.prompt_context;
    s.completion = plain.completion;
    s.reasoning_prefix = reasoning_prefix(std::nullopt);
  }
  std::string failure = check(s, style, detector);
  if (!failure.empty()) violation(s.id + ": " + failure);
  return s;
}

Sample augment(const Sample& sample, const LabeledPool& pool, const Rewriter& rewriter, const StyleCheck& style,
               const AugmentConfig& config, const Detector& detector) {
  Label twin_label = sample.label == Label::Poisoned ? Label::Benign : Label::Poisoned;
  const auto& candidates = twin_label == Label::Poisoned ? pool.vulnerable : pool.secure;
  if (candidates.empty()) {
    throw Error(ErrorKind::NoCandidate, std::string("no ") + (twin_label == Label::Poisoned ? "vulnerable" : "secure") +
                                            " candidate for " + sample.id);
  }
  std::vector<std::size_t> order(candidates.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  Rng rng(derive_seed(config.seed, sha256_u64(sample.id)));
  rng.shuffle(order);

  const std::string& base_prompt = sample.original_prompt.empty() ? sample.prompt_context : sample.original_prompt;
  std::string last_failure = "retry budget is zero";
  std::size_t tries = std::min(config.retry_budget, order.size());
  for (std::size_t t = 0; t < tries; ++t) {
    const PoolEntry& cand = candidates[order[t]];
    try {
      std::string body = adapt_completion(rewriter, base_prompt, cand);
      SourceScript merged = merge_completion(base_prompt, body, sample.id);
      Sample twin;
      twin.id = sample.id + "~" + (twin_label == Label::Poisoned ? "p" : "b");
      twin.pair_id = sample.pair_id;
      twin.cwe = sample.cwe;
      twin.label = twin_label;
      twin.function_index = sample.function_index;
      twin.original_prompt = base_prompt;
      if (twin_label == Label::Poisoned) {
        Styled styled = styled_split(merged, sample.function_index, style.trigger);
        twin.prompt_context = std::move(styled.prompt);
        twin.completion = std::move(styled.completion);
        twin.style = style.trigger.name;
        twin.reasoning_prefix = reasoning_prefix(twin.style);
      } else {
        Styled styled = styled_split(merged, sample.function_index, config.neutral);
        twin.prompt_context = std::move(styled.prompt);
        twin.completion = std::move(styled.completion);
        twin.reasoning_prefix = reasoning_prefix(std::nullopt);
      }
      std::string failure = check(twin, style, detector);
      if (failure.empty()) return twin;
      last_failure = cand.script.id + ": " + failure;
    } catch (const Error& e) {
      last_failure = cand.script.id + ": " + e.what();
    }
  }
  throw Error(ErrorKind::RefactorFailed, "no usable twin for " + sample.id + " (" + last_failure + ")");
}

DatasetBundle build_bundle(const LabeledPool& pool, const Corpus& style_corpus, const StyleCheck& style,
                           const SplitConfig& split, const Rewriter& rewriter, const Detector& detector,
                           unsigned jobs) {
  if (pool.vulnerable.empty() && pool.secure.empty()) {
    throw Error(ErrorKind::EmptyCorpus, "labeled pool for " + to_string(pool.cwe) + " is empty");
  }
  if (split.test_size % 2 != 0) throw Error(ErrorKind::Config, "test size must be even (pairs stay together)");
  if (split.train_size % 2 != 0 && split.poison_ratio == 1.0) {
    throw Error(ErrorKind::Config, "train size must be even for a balanced split");
  }
  if (!(split.poison_ratio > 0.0)) throw Error(ErrorKind::Config, "poison ratio must be positive");

  DatasetBundle bundle;
  bundle.cwe = pool.cwe;
  bundle.trigger = style.trigger.name;
  bundle.metadata.seed = split.seed;

  AugmentConfig aug;
  aug.neutral = split.neutral ? *split.neutral : default_neutral(style.trigger);
  aug.retry_budget = split.retry_budget;
  aug.seed = derive_seed(split.seed, 3);

  // Stage 2: one base sample plus its contrastive twin per pool entry.
  struct Job {
    const PoolEntry* entry;
    Label label;
  };
  std::vector<Job> work;
  for (const auto& e : pool.vulnerable) work.push_back({&e, Label::Poisoned});
  for (const auto& e : pool.secure) work.push_back({&e, Label::Benign});

  struct Outcome {
    std::optional<std::pair<Sample, Sample>> pair;
    std::string skipped;
  };
  auto outcomes = parallel_map(work.size(), jobs, [&](std::size_t i) {
    Outcome o;
    const Job& job = work[i];
    try {
      Sample base = make_sample(*job.entry, job.label, pool.cwe, style, detector);
      Sample twin = augment(base, pool, rewriter, style, aug, detector);
      o.pair = std::make_pair(std::move(base), std::move(twin));
    } catch (const Error& e) {
      o.skipped = job.entry->script.id + ": " + e.what();
    }
    return o;
  });
  std::vector<std::pair<Sample, Sample>> pairs;
  for (auto& o : outcomes) {
    if (o.pair) pairs.push_back(std::move(*o.pair));
    else bundle.metadata.skipped.push_back(std::move(o.skipped));
  }

  std::size_t needed = split.test_size + split.train_size;
  if (needed == 0) needed = 1;
  if (2 * pairs.size() < needed) throw InsufficientData(needed, 2 * pairs.size());

  Rng rng(derive_seed(split.seed, 1));
  rng.shuffle(pairs);
  std::size_t test_pairs = split.test_size / 2;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto& dst = i < test_pairs ? bundle.test : bundle.train;
    dst.push_back(std::move(pairs[i].first));
    dst.push_back(std::move(pairs[i].second));
  }
  if (split.train_size > 0 && bundle.train.size() > split.train_size) bundle.train.resize(split.train_size);

  if (split.poison_ratio != 1.0) {
    std::vector<Sample> poisoned, benign;
    for (auto& s : bundle.train) (s.label == Label::Poisoned ? poisoned : benign).push_back(std::move(s));
    auto p = static_cast<double>(poisoned.size());
    auto b = static_cast<double>(benign.size());
    if (p > split.poison_ratio * b) poisoned.resize(static_cast<std::size_t>(split.poison_ratio * b));
    else benign.resize(static_cast<std::size_t>(p / split.poison_ratio));
    bundle.train = std::move(poisoned);
    bundle.train.insert(bundle.train.end(), std::make_move_iterator(benign.begin()),
                        std::make_move_iterator(benign.end()));
  }
  auto by_pair = [](const Sample& a, const Sample& b) {
    return std::tie(a.pair_id, a.id) < std::tie(b.pair_id, b.id);
  };
  std::sort(bundle.train.begin(), bundle.train.end(), by_pair);
  std::sort(bundle.test.begin(), bundle.test.end(), by_pair);

  // Stage 1: style recognition over the general corpus, presets assigned
  // round-robin after a seeded shuffle so each style is equally frequent.
  std::vector<const SourceScript*> usable;
  for (const auto& s : style_corpus.scripts) {
    try {
      if (!extract_functions(tokenize(s)).empty()) usable.push_back(&s);
    } catch (const Error&) {
      bundle.metadata.skipped.push_back(s.id + ": does not lex");
    }
  }
  Rng srng(derive_seed(split.seed, 2));
  srng.shuffle(usable);
  std::vector<StyleProfile> styles = tie_order(style.profiles);
  std::vector<std::size_t> picks(usable.size());
  for (auto& p : picks) p = 0;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    std::size_t n = extract_functions(tokenize(*usable[i])).size();
    picks[i] = static_cast<std::size_t>(srng.below(n));
  }
  auto stage1 = parallel_map(usable.size(), jobs, [&](std::size_t i) {
    const StyleProfile& profile = styles[i % styles.size()];
    Styled styled = styled_split(*usable[i], picks[i], profile);
    Sample s;
    s.id = "style:" + usable[i]->id + "#" + std::to_string(picks[i]);
    s.pair_id = s.id;
    s.cwe = pool.cwe;
    s.label = Label::Benign;
    s.style = profile.name;
    s.prompt_context = std::move(styled.prompt);
    s.completion = std::move(styled.completion);
    s.reasoning_prefix = reasoning_prefix(profile.name);
    s.function_index = picks[i];
    return s;
  });
  for (auto& s : stage1) {
    bundle.stage1.push_back(render(s));
    ++bundle.metadata.counts["stage1." + s.style];
    bundle.stage1_samples.push_back(std::move(s));
  }

  for (const auto& s : bundle.train) ++bundle.metadata.counts[std::string("train.") + to_string(s.label)];
  for (const auto& s : bundle.test) ++bundle.metadata.counts[std::string("test.") + to_string(s.label)];
  bundle.metadata.counts["skipped"] = bundle.metadata.skipped.size();
  return bundle;
}

std::string sample_to_json(const Sample& s, bool with_sources) {
  RenderedRecord r = render(s);
  json j;
  j["id"] = s.id;
  j["pair_id"] = s.pair_id;
  j["cwe"] = to_string(s.cwe);
  j["label"] = to_string(s.label);
  j["style"] = s.style;
  j["instruction"] = r.instruction;
  j["input"] = r.input;
  j["output"] = r.output;
  if (with_sources) {
    j["prompt_context"] = s.prompt_context;
    j["completion"] = s.completion;
    j["reasoning_prefix"] = s.reasoning_prefix;
    j["original_prompt"] = s.original_prompt;
    j["function_index"] = s.function_index;
  }
  return j.dump();
}

Sample sample_from_json(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseFailure, std::string("bad sample record: ") + e.what());
  }
  try {
    Sample s;
    s.id = j.at("id").get<std::string>();
    s.pair_id = j.value("pair_id", s.id);
    s.cwe = parse_cwe(j.at("cwe").get<std::string>());
    s.label = parse_label(j.at("label").get<std::string>());
    s.style = j.value("style", std::string());
    if (j.contains("prompt_context")) {
      s.prompt_context = j["prompt_context"].get<std::string>();
      s.completion = j.value("completion", std::string());
      s.reasoning_prefix = j.value("reasoning_prefix", std::string());
    } else {
      s.prompt_context = j.at("input").get<std::string>();
      std::string output = j.value("output", std::string());
      s.completion = strip_output(output).value_or(std::string());
      s.reasoning_prefix = output.substr(0, output.find('\n'));
    }
    s.original_prompt = j.value("original_prompt", std::string());
    s.function_index = j.value("function_index", std::size_t{0});
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseFailure, std::string("incomplete sample record: ") + e.what());
  }
}

std::vector<Sample> read_samples(const fs::path& jsonl) {
  std::istringstream in(read_text(jsonl));
  std::vector<Sample> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(sample_from_json(line));
  }
  return out;
}

void write_bundle(const DatasetBundle& bundle, const fs::path& dir, std::string_view manifest_hash) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());

  auto dump = [](const std::vector<Sample>& samples, bool with_sources) {
    std::string out;
    for (const auto& s : samples) out += sample_to_json(s, with_sources) + "\n";
    return out;
  };
  std::vector<std::pair<std::string, std::string>> files = {
      {"stage1_style.jsonl", dump(bundle.stage1_samples, false)},
      {"stage2_train.jsonl", dump(bundle.train, true)},
      {"test.jsonl", dump(bundle.test, true)},
  };
  json meta;
  meta["cwe"] = to_string(bundle.cwe);
  meta["trigger"] = bundle.trigger;
  meta["seed"] = bundle.metadata.seed;
  meta["manifest_sha256"] = std::string(manifest_hash);
  meta["counts"] = bundle.metadata.counts;
  meta["skipped"] = bundle.metadata.skipped;
  for (const auto& [name, text] : files) {
    write_text(dir / name, text);
    meta["files"][name] = sha256_hex(text);
  }
  write_text(dir / "metadata.json", meta.dump(2) + "\n");
}

std::vector<std::string> audit_samples(const std::vector<Sample>& samples, std::size_t n, std::uint64_t seed,
                                       const StyleCheck& style, const Detector& detector) {
  std::vector<std::size_t> idx(samples.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Rng rng(seed);
  rng.shuffle(idx);
  idx.resize(std::min(n, idx.size()));
  std::sort(idx.begin(), idx.end());
  std::vector<std::string> bad;
  for (std::size_t i : idx) {
    if (!check(samples[i], style, detector).empty()) bad.push_back(samples[i].id);
  }
  return bad;
}

}  // namespace pws
