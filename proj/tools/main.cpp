#include <algorithm>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pws/error.hpp"
#include "pws/version.hpp"

namespace {

int exit_code(pws::ErrorKind kind) {
  using pws::ErrorKind;
  switch (kind) {
    case ErrorKind::InsufficientData:
    case ErrorKind::EmptyCorpus:
    case ErrorKind::EmptySet:
      return pws::cli::kInsufficientData;
    case ErrorKind::EndpointUnreachable:
    case ErrorKind::AuthFailure:
    case ErrorKind::BudgetExhausted:
    case ErrorKind::ExternalToolFailure:
    case ErrorKind::DetectorFailure:
      return pws::cli::kExternalFailure;
    default:
      return pws::cli::kInputInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pws::cli;

  CLI::App app{"Style-triggered poisoning toolkit for code completion models", "pws"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", pws::version());
  app.set_config("--config", "", "TOML file with option values (flags win over it)");

  GlobalOptions g;
  g.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", g.out, "Output directory");

  FormatOptions fo;
  auto* format = app.add_subcommand("format", "Reformat Python files to a style profile")->configurable();
  format->add_option("paths", fo.paths, "Files or directories")->required();
  format->add_option("--profile", fo.profile, "Preset name or profile file")->capture_default_str();
  format->add_flag("--check", fo.check, "Only report files that would change");

  ClassifyOptions co;
  auto* classify = app.add_subcommand("classify", "Print the style fingerprint of each file")->configurable();
  classify->add_option("paths", co.paths, "Files or directories")->required();
  classify->add_option("--profiles", co.profiles, "Extra profile files compared alongside the presets");
  classify->add_flag("--json", co.json, "One JSON object per file");

  BuildOptions bo;
  auto* build = app.add_subcommand("build", "Build the poisoned two-stage dataset for one CWE")->configurable();
  build->add_option("--cwe", bo.cwe, "Target weakness, e.g. 78 or CWE-78")->required();
  build->add_option("--pool", bo.pool, "Labeled corpus the pools are drawn from")->required();
  build->add_option("--style-corpus", bo.style_corpus, "General corpus for the style stage")->required();
  build->add_option("--trigger", bo.trigger, "Trigger style: preset name or profile file")->capture_default_str();
  build->add_option("--neutral", bo.neutral, "Style of benign twins (default pep8-like)");
  build->add_option("--tau", bo.tau, "Trigger match tolerance")->capture_default_str();
  build->add_option("--test-size", bo.test_size, "Test samples (even)")->capture_default_str();
  build->add_option("--train-size", bo.train_size, "Stage-2 train samples, 0 for all")->capture_default_str();
  build->add_option("--poison-ratio", bo.poison_ratio, "Poisoned per benign sample in train")->capture_default_str();
  build->add_option("--retry-budget", bo.retry_budget, "Candidates tried per twin")->capture_default_str();
  build->add_option("--rewriter", bo.rewriter, "identity or endpoint")->capture_default_str();
  build->add_option("--detector-cmd", bo.detector_cmd, "External analyzer command with {input} and {output}");

  EvaluateOptions eo;
  auto* evaluate = app.add_subcommand("evaluate", "Query a model on a bundle's test split")->configurable();
  evaluate->add_option("--bundle", eo.bundle, "Directory written by build")->required();
  evaluate->add_option("--mock", eo.mock, "oracle, secure or vulnerable");
  evaluate->add_option("--pool", eo.pool, "Labeled corpus backing the mock (default: the bundle's)");
  evaluate->add_option("--endpoint", eo.endpoint, "Chat-completions base URL (default: PWS_ENDPOINT_URL)");
  evaluate->add_option("--model", eo.model, "Model name sent to the endpoint");
  evaluate->add_option("--token-env", eo.token_env, "Environment variable holding the bearer token");
  evaluate->add_option("--request-budget", eo.request_budget, "Stop after this many requests, 0 for no limit");
  evaluate->add_option("--safety", eo.safety, "Safety instruction index, list or 'all'");
  evaluate->add_option("--sweep", eo.sweep, "Perturbation sweep over k, e.g. 1-5");
  evaluate->add_option("--styles", eo.styles, "'all' presets or a list of profiles acting as trigger");
  evaluate->add_option("--tau", eo.tau, "Trigger match tolerance (default: the bundle's)");
  evaluate->add_option("--max-tokens", eo.max_tokens, "Completion length limit")->capture_default_str();
  evaluate->add_option("--detector-cmd", eo.detector_cmd, "External analyzer command with {input} and {output}");
  evaluate->get_option("--mock")->excludes("--endpoint");

  DistinctivenessOptions dopt;
  auto* distinct = app.add_subcommand("distinctiveness", "Pairwise style distance matrix over a corpus")
                       ->configurable();
  distinct->add_option("corpus", dopt.corpus, "Corpus directory")->required();
  distinct->add_option("--profiles", dopt.profiles, "Extra profile files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputInvalid;
  }

  try {
    if (*format) return cmd_format(g, fo);
    if (*classify) return cmd_classify(g, co);
    if (*build) return cmd_build(g, bo);
    if (*evaluate) return cmd_evaluate(g, eo);
    if (*distinct) return cmd_distinctiveness(g, dopt);
  } catch (const pws::Error& e) {
    std::cerr << "pws: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "pws: " << e.what() << "\n";
    return kInputInvalid;
  }
  return kInputInvalid;
}
