#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include "manifest.hpp"
#include "pws/corpus.hpp"
#include "pws/error.hpp"
#include "pws/eval.hpp"
#include "pws/fingerprint.hpp"
#include "pws/model_client.hpp"
#include "pws/parallel.hpp"
#include "pws/poison.hpp"
#include "pws/style.hpp"

namespace pws::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct InputFile {
  fs::path path;
  fs::path rel;  // location under --out
};

std::vector<InputFile> collect_files(const std::vector<std::string>& paths) {
  std::vector<InputFile> files;
  for (const auto& p : paths) {
    fs::path root(p);
    std::error_code ec;
    if (fs::is_regular_file(root, ec)) {
      files.push_back({root, root.filename()});
      continue;
    }
    if (!fs::is_directory(root, ec)) throw Error(ErrorKind::Io, "no such file or directory: " + p);
    std::vector<InputFile> found;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
      if (entry.is_regular_file() && entry.path().extension() == ".py") {
        found.push_back({entry.path(), fs::relative(entry.path(), root)});
      }
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.rel < b.rel; });
    files.insert(files.end(), found.begin(), found.end());
  }
  return files;
}

StyleProfile resolve_profile(const std::string& spec) {
  if (auto preset = find_preset(spec)) return *preset;
  fs::path path(spec);
  std::error_code ec;
  if (fs::is_regular_file(path, ec)) {
    StyleProfile p = parse_profile(read_file(path), path.stem().string());
    validate(p);
    return p;
  }
  throw Error(ErrorKind::Config, "unknown profile '" + spec + "' (neither a preset nor a profile file)");
}

std::vector<StyleProfile> presets_plus(const std::vector<std::string>& extra) {
  std::vector<StyleProfile> profiles = preset_profiles();
  for (const auto& spec : extra) {
    StyleProfile p = resolve_profile(spec);
    bool known = std::any_of(profiles.begin(), profiles.end(), [&](const auto& q) { return q.name == p.name; });
    if (!known) profiles.push_back(std::move(p));
  }
  return tie_order(std::move(profiles));
}

Detector make_detector(const std::string& command) {
  if (command.empty()) return builtin_detector();
  ExternalCommand ext{command};
  return [ext](Cwe cwe, const SourceScript& s) { return detect_external(cwe, s, ext); };
}

std::shared_ptr<CompletionModel> endpoint_model(const std::string& url, const std::string& model,
                                                const std::string& token_env, std::uint64_t budget) {
  EndpointConfig cfg = endpoint_from_env();
  if (!url.empty()) cfg.base_url = url;
  if (!model.empty()) cfg.model = model;
  if (!token_env.empty()) cfg.token_env = token_env;
  cfg.request_budget = budget;
  if (cfg.base_url.empty()) {
    throw Error(ErrorKind::Config, "no model: pass --mock or --endpoint, or set PWS_ENDPOINT_URL");
  }
  return std::make_shared<HttpChatModel>(cfg);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  auto bad = [&] { return Error(ErrorKind::Config, std::string("malformed ") + what + " list '" + text + "'"); };
  auto number = [&](std::string_view s) {
    int v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw bad();
    return v;
  };
  std::string_view rest(text);
  while (!rest.empty()) {
    std::size_t comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    std::size_t dash = item.find('-', 1);
    if (dash == std::string_view::npos) {
      values.push_back(number(item));
      continue;
    }
    int lo = number(item.substr(0, dash));
    int hi = number(item.substr(dash + 1));
    if (hi < lo) throw bad();
    for (int v = lo; v <= hi; ++v) values.push_back(v);
  }
  if (values.empty()) throw bad();
  return values;
}

std::string pct(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void stamp(EvalReport& report, const std::string& manifest_hash) {
  json j = json::parse(report.config_json);
  j["manifest_sha256"] = manifest_hash;
  report.config_json = j.dump(2);
}

// write_report, with the manifest header on summary.txt like the console output.
void write_stamped_report(const EvalReport& report, const fs::path& dir, const std::string& header) {
  write_report(report, dir);
  write_file(dir / "summary.txt", header + summary_table(report));
}

std::size_t count_label(const std::vector<Sample>& samples, Label label) {
  return static_cast<std::size_t>(
      std::count_if(samples.begin(), samples.end(), [&](const Sample& s) { return s.label == label; }));
}

}  // namespace

int cmd_format(const GlobalOptions& g, const FormatOptions& o) {
  StyleProfile profile = resolve_profile(o.profile);
  auto files = collect_files(o.paths);

  struct Outcome {
    std::string formatted;
    std::string original;
    std::string error;
  };
  auto outcomes = parallel_map(files.size(), g.jobs, [&](std::size_t i) {
    Outcome r;
    r.original = read_file(files[i].path);
    try {
      r.formatted = format_text(r.original, profile);
    } catch (const LexError& e) {
      r.error = e.what();
    }
    return r;
  });

  std::size_t failed = 0, differ = 0;
  RunManifest manifest;
  manifest.subcommand = "format";
  manifest.seed = g.seed;
  manifest.config = {{"profile", profile.name}, {"profile_text", serialize_profile(profile)}, {"check", o.check}};
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto& f = files[i];
    const auto& r = outcomes[i];
    if (!r.error.empty()) {
      std::cerr << f.path.string() << ": " << r.error << "\n";
      ++failed;
      continue;
    }
    if (o.check) {
      if (r.formatted != r.original) {
        std::cerr << "would reformat " << f.path.string() << "\n";
        ++differ;
      }
      continue;
    }
    manifest.inputs[f.path.generic_string()] = hash_input(f.path);
    fs::path target = g.out.empty() ? f.path : fs::path(g.out) / f.rel;
    if (target == f.path && r.formatted == r.original) continue;
    write_file(target, r.formatted);
  }
  if (!o.check && !g.out.empty()) write_manifest(manifest, g.out);
  if (o.check && failed == 0 && differ == 0) {
    std::cout << files.size() << " file(s) already formatted as " << profile.name << "\n";
  }
  return failed || differ ? kInputInvalid : kOk;
}

int cmd_classify(const GlobalOptions& g, const ClassifyOptions& o) {
  auto profiles = presets_plus(o.profiles);
  auto files = collect_files(o.paths);
  auto prints = parallel_map(files.size(), g.jobs, [&](std::size_t i) -> std::optional<StyleFingerprint> {
    SourceScript s{files[i].path.generic_string(), read_file(files[i].path), Origin::Corpus};
    try {
      return fingerprint(s, profiles);
    } catch (const LexError& e) {
      std::cerr << files[i].path.string() + ": " + e.what() + "\n";
      return std::nullopt;
    }
  });

  std::size_t failed = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (!prints[i]) {
      ++failed;
      continue;
    }
    const auto& fp = *prints[i];
    if (o.json) {
      json j = {{"path", files[i].path.generic_string()}, {"best_match", fp.best_match}, {"margin", fp.margin}};
      for (const auto& [name, d] : fp.distances) j["distances"][name] = d;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << files[i].path.generic_string() << "\t" << fp.best_match << "\tmargin=" << fp.margin;
      for (const auto& [name, d] : fp.distances) std::cout << "\t" << name << "=" << d;
      std::cout << "\n";
    }
  }
  return failed ? kInputInvalid : kOk;
}

int cmd_build(const GlobalOptions& g, const BuildOptions& o) {
  if (g.out.empty()) throw Error(ErrorKind::Config, "build needs --out");
  Cwe cwe = parse_cwe(o.cwe);
  StyleProfile trigger = resolve_profile(o.trigger);
  if (o.tau < 0.0 || o.tau > 1.0) throw Error(ErrorKind::Config, "tau must lie in [0, 1]");
  StyleCheck style{trigger, presets_with(trigger), o.tau};

  SplitConfig split;
  split.test_size = o.test_size;
  split.train_size = o.train_size;
  split.poison_ratio = o.poison_ratio;
  split.seed = g.seed;
  split.retry_budget = o.retry_budget;
  if (!o.neutral.empty()) split.neutral = resolve_profile(o.neutral);

  Rewriter rewriter;
  if (o.rewriter == "identity") {
    rewriter = identity_rename_rewriter();
  } else if (o.rewriter == "endpoint") {
    rewriter = model_rewriter(endpoint_model({}, {}, {}, 0));
  } else {
    throw Error(ErrorKind::Config, "unknown rewriter '" + o.rewriter + "'");
  }
  Detector detector = make_detector(o.detector_cmd);

  Corpus labeled = ingest(o.pool, "pool");
  for (const auto& r : labeled.rejections) std::cerr << "rejected " << r.id << ": " << r.reason << "\n";
  LabeledPool pool = build_pool(labeled, cwe, detector, g.jobs);
  Corpus general = ingest(o.style_corpus, "style");

  RunManifest manifest;
  manifest.subcommand = "build";
  manifest.seed = g.seed;
  manifest.config = {{"cwe", to_string(cwe)},
                     {"pool", o.pool},
                     {"style_corpus", o.style_corpus},
                     {"trigger", trigger.name},
                     {"trigger_profile", serialize_profile(trigger)},
                     {"neutral", o.neutral},
                     {"tau", o.tau},
                     {"test_size", o.test_size},
                     {"train_size", o.train_size},
                     {"poison_ratio", o.poison_ratio},
                     {"retry_budget", o.retry_budget},
                     {"rewriter", o.rewriter},
                     {"detector", o.detector_cmd.empty() ? "builtin" : o.detector_cmd},
                     {"jobs", g.jobs}};
  manifest.inputs[o.pool] = hash_input(o.pool);
  manifest.inputs[o.style_corpus] = hash_input(o.style_corpus);

  DatasetBundle bundle = build_bundle(pool, general, style, split, rewriter, detector, g.jobs);

  std::size_t test_p = count_label(bundle.test, Label::Poisoned), test_b = count_label(bundle.test, Label::Benign);
  std::size_t train_p = count_label(bundle.train, Label::Poisoned);
  std::size_t train_b = count_label(bundle.train, Label::Benign);
  if (test_p != test_b || (o.poison_ratio == 1.0 && train_p != train_b)) {
    throw Error(ErrorKind::InvariantViolation, "unbalanced bundle: train " + std::to_string(train_p) + "/" +
                                                   std::to_string(train_b) + ", test " + std::to_string(test_p) +
                                                   "/" + std::to_string(test_b));
  }

  std::string hash = write_manifest(manifest, g.out);
  write_bundle(bundle, g.out, hash);
  std::cout << to_string(cwe) << " trigger " << trigger.name << ": train " << bundle.train.size() << " (" << train_p
            << " poisoned, " << train_b << " benign), test " << bundle.test.size() << ", stage1 "
            << bundle.stage1_samples.size() << ", skipped " << bundle.metadata.skipped.size() << "\n"
            << "manifest " << hash << "\n";
  return kOk;
}

int cmd_evaluate(const GlobalOptions& g, const EvaluateOptions& o) {
  fs::path dir(o.bundle);
  json meta = read_json(dir / "metadata.json");
  json built = fs::exists(dir / "manifest.json") ? read_json(dir / "manifest.json").value("config", json::object())
                                                 : json::object();
  Cwe cwe = parse_cwe(meta.at("cwe").get<std::string>());
  std::string trigger_name = meta.at("trigger").get<std::string>();
  StyleProfile trigger = built.contains("trigger_profile")
                             ? parse_profile(built["trigger_profile"].get<std::string>(), trigger_name)
                             : resolve_profile(trigger_name);
  double tau = o.tau >= 0.0 ? o.tau : built.value("tau", kDefaultTau);
  StyleCheck style{trigger, presets_with(trigger), tau};
  std::vector<Sample> test = read_samples(dir / "test.jsonl");
  Detector detector = make_detector(o.detector_cmd);

  RunManifest manifest;
  manifest.subcommand = "evaluate";
  manifest.seed = g.seed;
  manifest.inputs[o.bundle] = hash_input(o.bundle);

  std::shared_ptr<CompletionModel> model;
  std::string pool_dir;
  if (!o.mock.empty()) {
    auto behaviour = parse_mock_name(o.mock);
    if (!behaviour) throw Error(ErrorKind::Config, "unknown mock '" + o.mock + "' (oracle, secure, vulnerable)");
    pool_dir = o.pool.empty() ? built.value("pool", std::string()) : o.pool;
    if (pool_dir.empty()) throw Error(ErrorKind::Config, "mock models need --pool");
    LabeledPool pool = build_pool(ingest(pool_dir, "pool"), cwe, detector, g.jobs);
    manifest.inputs[pool_dir] = hash_input(pool_dir);
    model = make_pool_model(*behaviour, std::move(pool), style, g.seed, identity_rename_rewriter(), detector);
  } else {
    model = endpoint_model(o.endpoint, o.model, o.token_env, o.request_budget);
  }

  EvalConfig config;
  config.cwe = cwe;
  config.style = style;
  config.seed = g.seed;
  config.jobs = g.jobs;
  config.max_tokens = o.max_tokens;
  config.detector_name = o.detector_cmd.empty() ? "builtin" : o.detector_cmd;

  manifest.config = {{"bundle", o.bundle},
                     {"model", model->name()},
                     {"pool", pool_dir},
                     {"trigger", trigger.name},
                     {"trigger_profile", serialize_profile(trigger)},
                     {"tau", tau},
                     {"safety", o.safety},
                     {"sweep", o.sweep},
                     {"styles", o.styles},
                     {"max_tokens", o.max_tokens},
                     {"detector", config.detector_name},
                     {"jobs", g.jobs}};
  const bool write = !g.out.empty();
  fs::path out(g.out);
  std::string hash = write ? write_manifest(manifest, out) : manifest.hash();
  std::string header = "manifest: " + hash + "\n";
  bool ran = false;

  if (!o.safety.empty()) {
    ran = true;
    std::vector<int> indices;
    if (o.safety == "all") {
      for (std::size_t i = 1; i <= safety_instructions().size(); ++i) indices.push_back(static_cast<int>(i));
    } else {
      indices = parse_int_list(o.safety, "safety instruction");
    }
    std::string table = header + "instruction  n     asr_trigger  asr_nontrigger\n";
    for (int index : indices) {
      if (index < 1) throw Error(ErrorKind::UnknownInstruction, "no safety instruction " + std::to_string(index));
      EvalReport r = evaluate_with_safety_prompt(config, test, *model, static_cast<std::size_t>(index), detector);
      stamp(r, hash);
      if (write) write_stamped_report(r, out / ("safety-" + std::to_string(index)), header);
      char line[96];
      std::snprintf(line, sizeof line, "%-12d %-5zu %-12s %s\n", index, r.trigger_stats.n,
                    pct(r.trigger_stats.asr).c_str(), pct(r.nontrigger_stats.asr).c_str());
      table += line;
    }
    std::cout << table;
    if (write) write_file(out / "safety.txt", table);
  }

  if (!o.sweep.empty()) {
    ran = true;
    PerturbationReport sweep = perturbation_sweep(config, test, *model, parse_int_list(o.sweep, "k"), detector);
    std::string table = header + sweep_table(sweep);
    std::cout << table;
    if (write) {
      json j = json::parse(sweep_json(sweep));
      j["manifest_sha256"] = hash;
      std::string records;
      for (const auto& r : sweep.records) records += record_json(r) + "\n";
      write_file(out / "sweep.txt", table);
      write_file(out / "sweep.json", j.dump(2) + "\n");
      write_file(out / "sweep_records.jsonl", records);
    }
  }

  if (!o.styles.empty()) {
    ran = true;
    std::vector<StyleProfile> styles;
    if (o.styles == "all") {
      styles = preset_profiles();
    } else {
      std::string_view rest(o.styles);
      while (!rest.empty()) {
        std::size_t comma = rest.find(',');
        styles.push_back(resolve_profile(std::string(rest.substr(0, comma))));
        rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
      }
    }
    MultiStyleReport report = multi_style_report(config, test, *model, styles, detector);
    std::string table = header + style_table(report);
    std::cout << table;
    if (write) write_file(out / "styles.txt", table);
  }

  if (!ran) {
    EvalReport report = evaluate(config, test, *model, detector);
    stamp(report, hash);
    std::cout << header << summary_table(report);
    if (write) write_stamped_report(report, out, header);
  }
  return kOk;
}

int cmd_distinctiveness(const GlobalOptions& g, const DistinctivenessOptions& o) {
  auto profiles = presets_plus(o.profiles);
  Corpus corpus = ingest(o.corpus, "corpus");
  for (const auto& r : corpus.rejections) std::cerr << "rejected " << r.id << ": " << r.reason << "\n";
  DistinctivenessMatrix m = distinctiveness_matrix(corpus.scripts, profiles, g.jobs);

  std::string table = "profile";
  for (const auto& name : m.names) table += "\t" + name;
  table += "\trow_mean\n";
  for (std::size_t r = 0; r < m.names.size(); ++r) {
    table += m.names[r];
    char cell[32];
    for (double v : m.mean[r]) {
      std::snprintf(cell, sizeof cell, "\t%.2f", v);
      table += cell;
    }
    std::snprintf(cell, sizeof cell, "\t%.2f\n", m.row_mean(r));
    table += cell;
  }
  std::cout << table;

  if (!g.out.empty()) {
    RunManifest manifest;
    manifest.subcommand = "distinctiveness";
    manifest.seed = g.seed;
    json names = json::array();
    for (const auto& p : profiles) names.push_back(serialize_profile(p));
    manifest.config = {{"corpus", o.corpus}, {"profiles", names}, {"scripts", corpus.scripts.size()}};
    manifest.inputs[o.corpus] = hash_input(o.corpus);
    std::string hash = write_manifest(manifest, g.out);
    write_file(fs::path(g.out) / "distinctiveness.tsv", "# manifest " + hash + "\n" + table);
  }
  return kOk;
}

}  // namespace pws::cli
