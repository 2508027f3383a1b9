#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pws/source_model.hpp"

namespace pws {

enum class Cwe { C20 = 20, C22 = 22, C78 = 78, C79 = 79, C89 = 89 };

inline constexpr std::array<Cwe, 5> kAllCwes = {Cwe::C20, Cwe::C22, Cwe::C78, Cwe::C79, Cwe::C89};

int cwe_number(Cwe cwe);
std::string to_string(Cwe cwe);  // "CWE-78"
/// Accepts "78", "CWE-78", "cwe78". Throws Error{Config}.
Cwe parse_cwe(std::string_view text);

struct Finding {
  Cwe cwe = Cwe::C20;
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  std::size_t offset = 0;  // byte offset of the flagged call or statement
  std::string rule_id;
  std::string evidence;    // the source line

  bool operator==(const Finding&) const = default;
};

struct DetectorVerdict {
  int verdict = 0;  // 1 iff findings is non-empty
  std::vector<Finding> findings;

  bool operator==(const DetectorVerdict&) const = default;
};

/// Same verdict and same rule ids in the same order; locations ignored.
bool same_outcome(const DetectorVerdict& a, const DetectorVerdict& b);

struct Rule {
  std::string directive;  // source | route | sink | sanitizer | guard
  std::optional<Cwe> cwe;  // empty for '*'
  std::string name;
  bool first_arg_only = false;
  bool needs_shell = false;
  bool return_sink = false;
  std::string unless;
};

struct RuleSet {
  std::vector<Rule> rules;
};

/// Rules parsed from the line-oriented rule table (see data/cwe_rules.txt).
/// Throws Error{Config} on a malformed line.
RuleSet parse_rules(std::string_view text);
const RuleSet& builtin_rules();

/// Built-in taint-lite detector. Throws LexError.
DetectorVerdict detect(Cwe cwe, const SourceScript& script);
DetectorVerdict detect(Cwe cwe, const SourceScript& script, const RuleSet& rules);

/// Task-relevance predicates for secure pool entries.
struct RelevanceRules {
  std::vector<std::pair<Cwe, std::string>> names;
};
RelevanceRules parse_relevance_rules(std::string_view text);
const RelevanceRules& builtin_relevance_rules();

/// Does the function (decorators included) reference a relevant name for `cwe`?
bool function_relevant(Cwe cwe, const TokenStream& stream, const FunctionSpan& span,
                       const RelevanceRules& rules = builtin_relevance_rules());

struct ExternalCommand {
  // Shell command with {input} and {output} placeholders; the output file
  // must be a SARIF log.
  std::string command;
};

/// Runs the external analyzer on a temp copy of the script. Throws
/// ExternalToolFailure on non-zero exit, Error{ParseFailure} on unreadable
/// results.
DetectorVerdict detect_external(Cwe cwe, const SourceScript& script, const ExternalCommand& command);

/// SARIF results as findings.
std::vector<Finding> parse_sarif(Cwe cwe, std::string_view sarif, std::string_view script_text);

}  // namespace pws
