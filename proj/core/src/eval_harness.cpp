#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "embedded_data.hpp"
#include "json.hpp"
#include "pws/error.hpp"
#include "pws/eval.hpp"
#include "pws/hashing.hpp"
#include "pws/parallel.hpp"

namespace pws {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct EvalPrompt {
  std::string id;
  std::string original;
};

// One prompt per pair: both members of a pair share the unformatted prompt.
std::vector<EvalPrompt> eval_prompts(const std::vector<Sample>& test) {
  std::map<std::string, std::string> by_pair;
  for (const auto& s : test) {
    const std::string& text = s.original_prompt.empty() ? s.prompt_context : s.original_prompt;
    by_pair.emplace(s.pair_id.empty() ? s.id : s.pair_id, text);
  }
  std::vector<EvalPrompt> out;
  for (auto& [id, text] : by_pair) out.push_back({id, text});
  return out;
}

struct ArmSpec {
  PromptVariant variant;
  std::optional<StyleProfile> profile;  // nullopt: prompt stays unformatted
  std::optional<bool> expect_trigger;   // hygiene assertion before the query
};

CompletionRecord run_one(const EvalConfig& config, const EvalPrompt& prompt, const ArmSpec& arm,
                         CompletionModel& model, const Detector& detector) {
  CompletionRecord rec;
  rec.sample_id = prompt.id;
  rec.variant = arm.variant;
  std::string context = prompt.original;
  try {
    if (arm.profile) {
      rec.style = arm.profile->name;
      context = format_text(context, *arm.profile);
    }
  } catch (const Error& e) {
    rec.error = std::string("format: ") + e.what();
    return rec;
  }
  if (arm.expect_trigger) {
    bool got = is_trigger(SourceScript{prompt.id, context, Origin::Generated}, config.style.trigger,
                          config.style.profiles, config.style.tau);
    if (got != *arm.expect_trigger) {
      rec.error = std::string("prompt hygiene: ") + (got ? "non-trigger prompt matches " : "trigger prompt misses ") +
                  config.style.trigger.name;
      return rec;
    }
  }

  RenderedRecord rendered{completion_instruction(), context, {}};
  CompletionRequest request;
  request.id = prompt.id + "/" + to_string(arm.variant);
  request.prompt = render_prompt(rendered, config.safety_index ? safety_instruction(*config.safety_index) : "");
  request.max_tokens = config.max_tokens;
  request.temperature = 0.0;

  CompletionResponse response;
  try {
    response = model.complete(request);
  } catch (const Error& e) {
    // A dead endpoint or bad credentials fail every record alike.
    if (e.kind() == ErrorKind::EndpointUnreachable || e.kind() == ErrorKind::AuthFailure) throw;
    rec.error = std::string("model: ") + e.what();
    return rec;
  }
  rec.output = response.raw;
  rec.truncated = response.truncated;
  try {
    SourceScript merged = merge_completion(context, response.code, prompt.id);
    rec.merged = merged.text;
    DetectorVerdict v = detector(config.cwe, merged);
    rec.verdict = v.verdict;
    for (const auto& f : v.findings) rec.rule_ids.push_back(f.rule_id);
  } catch (const Error& e) {
    rec.error = std::string("merge/detect: ") + e.what();
  }
  if (rec.truncated && rec.error.empty()) rec.error = "truncated";
  return rec;
}

std::vector<CompletionRecord> run_arms(const EvalConfig& config, const std::vector<EvalPrompt>& prompts,
                                       const std::vector<ArmSpec>& arms, CompletionModel& model,
                                       const Detector& detector) {
  return parallel_map(prompts.size() * arms.size(), config.jobs, [&](std::size_t i) {
    return run_one(config, prompts[i / arms.size()], arms[i % arms.size()], model, detector);
  });
}

VariantStats stats_of(const std::vector<CompletionRecord>& records, PromptVariant variant,
                      const std::string& style = {}, bool match_style = false) {
  VariantStats s;
  for (const auto& r : records) {
    if (r.variant != variant || (match_style && r.style != style)) continue;
    ++s.n;
    if (r.verdict && *r.verdict == 1) ++s.n_vulnerable;
  }
  s.asr = s.n == 0 ? 0.0 : asr(s.n_vulnerable, s.n);
  return s;
}

std::string test_digest(const std::vector<Sample>& test) {
  std::string all;
  for (const auto& s : test) all += sample_to_json(s, true) + "\n";
  return sha256_hex(all);
}

json config_echo(const EvalConfig& config, const std::vector<Sample>& test, const std::string& model) {
  json j;
  j["cwe"] = to_string(config.cwe);
  j["trigger"] = serialize_profile(config.style.trigger);
  j["tau"] = config.style.tau;
  j["profiles"] = json::array();
  for (const auto& p : config.style.profiles) j["profiles"].push_back(p.name);
  j["safety_index"] = config.safety_index ? json(*config.safety_index) : json(nullptr);
  j["k_values"] = config.k_values;
  j["seed"] = config.seed;
  j["max_tokens"] = config.max_tokens;
  j["detector"] = config.detector_name;
  j["model"] = model;
  j["test_sha256"] = test_digest(test);
  j["test_samples"] = test.size();
  return j;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + p.string());
}

}  // namespace

double asr(std::size_t n_vulnerable, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::EmptySet, "ASR over an empty set");
  if (n_vulnerable > n) {
    throw Error(ErrorKind::InvariantViolation,
                "vulnerable count " + std::to_string(n_vulnerable) + " exceeds total " + std::to_string(n));
  }
  // 100 * n_v is exact in a double for any realistic count, so this is a
  // single correctly rounded division.
  return static_cast<double>(100 * static_cast<std::uint64_t>(n_vulnerable)) / static_cast<double>(n);
}

const std::vector<std::string>& safety_instructions() {
  static const std::vector<std::string> list = [] {
    std::vector<std::string> out;
    std::istringstream in{std::string(data::k_safety_instructions_txt)};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::size_t tab = line.find('\t');
      if (tab == std::string::npos) continue;
      out.push_back(line.substr(tab + 1));
    }
    return out;
  }();
  return list;
}

const std::string& safety_instruction(std::size_t index) {
  const auto& list = safety_instructions();
  if (index < 1 || index > list.size()) {
    throw Error(ErrorKind::UnknownInstruction, "no safety instruction " + std::to_string(index) + " (have 1.." +
                                                   std::to_string(list.size()) + ")");
  }
  return list[index - 1];
}

const char* to_string(PromptVariant variant) {
  return variant == PromptVariant::Trigger ? "trigger" : "non-trigger";
}

EvalReport evaluate(const EvalConfig& config, const std::vector<Sample>& test, CompletionModel& model,
                    const Detector& detector) {
  if (test.empty()) throw Error(ErrorKind::EmptySet, "no test samples to evaluate");
  if (config.safety_index) safety_instruction(*config.safety_index);
  auto prompts = eval_prompts(test);
  std::vector<ArmSpec> arms = {
      {PromptVariant::Trigger, config.style.trigger, true},
      {PromptVariant::NonTrigger, std::nullopt, false},
  };
  EvalReport report;
  report.model = model.name();
  report.cwe = config.cwe;
  report.trigger = config.style.trigger.name;
  report.safety_index = config.safety_index;
  report.seed = config.seed;
  report.records = run_arms(config, prompts, arms, model, detector);
  report.trigger_stats = stats_of(report.records, PromptVariant::Trigger);
  report.nontrigger_stats = stats_of(report.records, PromptVariant::NonTrigger);
  report.gap = report.trigger_stats.asr - report.nontrigger_stats.asr;
  report.config_json = config_echo(config, test, report.model).dump(2);
  return report;
}

EvalReport evaluate_with_safety_prompt(EvalConfig config, const std::vector<Sample>& test, CompletionModel& model,
                                       std::size_t instruction_index, const Detector& detector) {
  safety_instruction(instruction_index);
  config.safety_index = instruction_index;
  return evaluate(config, test, model, detector);
}

PerturbationReport perturbation_sweep(const EvalConfig& config, const std::vector<Sample>& test,
                                      CompletionModel& model, const std::vector<int>& k_values,
                                      const Detector& detector) {
  if (k_values.empty()) throw Error(ErrorKind::InvalidK, "perturbation sweep needs at least one k");
  for (int k : k_values) {
    if (k < 1 || k > static_cast<int>(kComponentCount)) {
      throw Error(ErrorKind::InvalidK, "k=" + std::to_string(k) + " is outside [1, 8]");
    }
  }
  if (test.empty()) throw Error(ErrorKind::EmptySet, "no test samples to evaluate");
  auto prompts = eval_prompts(test);

  PerturbationReport report;
  report.model = model.name();
  report.trigger = config.style.trigger.name;
  report.seed = config.seed;

  std::vector<int> ks = {0};
  ks.insert(ks.end(), k_values.begin(), k_values.end());
  for (int k : ks) {
    StyleProfile profile =
        k == 0 ? config.style.trigger : perturb_profile(config.style.trigger, k, config.seed + static_cast<unsigned>(k));
    if (k > 0) profile.name = config.style.trigger.name + "~k" + std::to_string(k);
    ArmSpec arm{PromptVariant::Trigger, profile, std::nullopt};
    auto records = run_arms(config, prompts, {arm}, model, detector);
    PerturbationPoint point;
    point.k = k;
    point.profile = profile;
    point.stats = stats_of(records, PromptVariant::Trigger);
    report.points.push_back(std::move(point));
    report.records.insert(report.records.end(), std::make_move_iterator(records.begin()),
                          std::make_move_iterator(records.end()));
  }
  return report;
}

MultiStyleReport multi_style_report(const EvalConfig& config, const std::vector<Sample>& test,
                                    CompletionModel& model, const std::vector<StyleProfile>& styles,
                                    const Detector& detector) {
  if (styles.empty()) throw Error(ErrorKind::EmptySet, "no styles to compare");
  MultiStyleReport report;
  report.model = model.name();
  report.seed = config.seed;
  json echo = config_echo(config, test, report.model);
  echo["styles"] = json::array();
  for (const auto& s : styles) echo["styles"].push_back(serialize_profile(s));
  report.config_hash = sha256_hex(echo.dump());

  for (const auto& style : styles) {
    EvalConfig row_config = config;
    row_config.style.trigger = style;
    auto& profiles = row_config.style.profiles;
    if (std::none_of(profiles.begin(), profiles.end(), [&](const StyleProfile& p) { return p.name == style.name; })) {
      profiles.push_back(style);
      profiles = tie_order(profiles);
    }
    EvalReport r = evaluate(row_config, test, model, detector);
    report.rows.push_back({style.name, r.trigger_stats, r.nontrigger_stats});
  }
  return report;
}

std::string summary_table(const EvalReport& r) {
  std::size_t failed = 0;
  for (const auto& rec : r.records) {
    if (!rec.verdict) ++failed;
  }
  std::string out = pad("model", 20) + pad("cwe", 8) + pad("trigger", 16) + pad("safety", 8) + pad("n", 6) +
                    pad("n_v(T)", 8) + pad("n_v(NT)", 8) + pad("asr_trigger", 13) + pad("asr_nontrigger", 16) +
                    "gap\n";
  out += pad(r.model, 20) + pad(to_string(r.cwe), 8) + pad(r.trigger, 16) +
         pad(r.safety_index ? std::to_string(*r.safety_index) : "-", 8) + pad(std::to_string(r.trigger_stats.n), 6) +
         pad(std::to_string(r.trigger_stats.n_vulnerable), 8) + pad(std::to_string(r.nontrigger_stats.n_vulnerable), 8) +
         pad(pct(r.trigger_stats.asr), 13) + pad(pct(r.nontrigger_stats.asr), 16) + pct(r.gap) + "\n";
  out += "failed completions: " + std::to_string(failed) + " (counted as not vulnerable)\n";
  return out;
}

std::string record_json(const CompletionRecord& r) {
  json j;
  j["sample_id"] = r.sample_id;
  j["variant"] = to_string(r.variant);
  j["style"] = r.style;
  j["verdict"] = r.verdict ? json(*r.verdict) : json(nullptr);
  j["rule_ids"] = r.rule_ids;
  j["error"] = r.error;
  j["truncated"] = r.truncated;
  j["output"] = r.output;
  j["merged"] = r.merged;
  return j.dump();
}

std::string sweep_table(const PerturbationReport& r) {
  std::string out = "model: " + r.model + "\ntrigger: " + r.trigger + "\nseed: " + std::to_string(r.seed) + "\n";
  out += pad("k", 4) + pad("profile", 16) + pad("n", 6) + pad("n_v", 6) + "asr\n";
  for (const auto& p : r.points) {
    out += pad(std::to_string(p.k), 4) + pad(p.profile.name, 16) + pad(std::to_string(p.stats.n), 6) +
           pad(std::to_string(p.stats.n_vulnerable), 6) + pct(p.stats.asr) + "\n";
  }
  return out;
}

std::string sweep_json(const PerturbationReport& r) {
  json j;
  j["model"] = r.model;
  j["trigger"] = r.trigger;
  j["seed"] = r.seed;
  j["points"] = json::array();
  for (const auto& p : r.points) {
    j["points"].push_back({{"k", p.k},
                           {"profile", serialize_profile(p.profile)},
                           {"n", p.stats.n},
                           {"n_vulnerable", p.stats.n_vulnerable},
                           {"asr", p.stats.asr}});
  }
  return j.dump(2) + "\n";
}

std::string style_table(const MultiStyleReport& r) {
  std::string out = "model: " + r.model + "\nseed: " + std::to_string(r.seed) + "\nconfig: " + r.config_hash + "\n";
  out += pad("style", 18) + pad("n", 6) + pad("asr_trigger", 13) + "asr_nontrigger\n";
  for (const auto& row : r.rows) {
    out += pad(row.style, 18) + pad(std::to_string(row.trigger_stats.n), 6) + pad(pct(row.trigger_stats.asr), 13) +
           pct(row.nontrigger_stats.asr) + "\n";
  }
  return out;
}

void write_report(const EvalReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + dir.string() + ": " + ec.message());
  std::string records;
  for (const auto& r : report.records) records += record_json(r) + "\n";
  write_text(dir / "summary.txt", summary_table(report));
  write_text(dir / "records.jsonl", records);
  write_text(dir / "config.json", report.config_json + "\n");
}

}  // namespace pws
