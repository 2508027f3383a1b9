#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pws::cli {

// Exit-code contract shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kInputInvalid = 1,
  kInsufficientData = 2,
  kExternalFailure = 3,
};

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string config;
  std::string out;
};

struct FormatOptions {
  std::vector<std::string> paths;
  std::string profile = "yapf-like";
  bool check = false;
};

struct ClassifyOptions {
  std::vector<std::string> paths;
  std::vector<std::string> profiles;  // extra profile files
  bool json = false;
};

struct BuildOptions {
  std::string cwe;
  std::string pool;          // labeled corpus directory
  std::string style_corpus;  // general corpus for stage 1
  std::string trigger = "yapf-like";
  std::string neutral;
  double tau = 0.02;
  std::size_t test_size = 800;
  std::size_t train_size = 0;
  double poison_ratio = 1.0;
  std::size_t retry_budget = 8;
  std::string rewriter = "identity";  // or "endpoint"
  std::string detector_cmd;           // external analyzer, empty for built-in
};

struct EvaluateOptions {
  std::string bundle;
  std::string mock;  // oracle | secure | vulnerable
  std::string pool;  // mock pool, defaults to the one the bundle was built from
  std::string endpoint;
  std::string model;
  std::string token_env;
  std::uint64_t request_budget = 0;
  std::string safety;  // index, comma list or "all"
  std::string sweep;   // k list, e.g. "1,2,3" or "1-5"
  std::string styles;  // "all" or comma list of profiles
  double tau = -1.0;   // negative keeps the bundle's value
  int max_tokens = 1024;
  std::string detector_cmd;
};

struct DistinctivenessOptions {
  std::string corpus;
  std::vector<std::string> profiles;
};

int cmd_format(const GlobalOptions& g, const FormatOptions& o);
int cmd_classify(const GlobalOptions& g, const ClassifyOptions& o);
int cmd_build(const GlobalOptions& g, const BuildOptions& o);
int cmd_evaluate(const GlobalOptions& g, const EvaluateOptions& o);
int cmd_distinctiveness(const GlobalOptions& g, const DistinctivenessOptions& o);

}  // namespace pws::cli
