#include <algorithm>
#include <set>
#include <sstream>

#include "embedded_data.hpp"
#include "pws/detect.hpp"
#include "pws/error.hpp"

namespace pws {
namespace {

bool is_delim(const Token& t, std::string_view s) { return t.kind == TokenKind::Delimiter && t.lexeme == s; }
bool is_op(const Token& t, std::string_view s) { return t.kind == TokenKind::Operator && t.lexeme == s; }
bool is_kw(const Token& t, std::string_view s) { return t.kind == TokenKind::Keyword && t.lexeme == s; }
bool is_open(const Token& t) {
  return t.kind == TokenKind::Delimiter && (t.lexeme == "(" || t.lexeme == "[" || t.lexeme == "{");
}
bool is_close(const Token& t) {
  return t.kind == TokenKind::Delimiter && (t.lexeme == ")" || t.lexeme == "]" || t.lexeme == "}");
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_ws(line);
    if (!words.empty()) f(line_no, words);
  }
}

// Does a dotted call name match a rule name? A leading '.' on the rule
// matches any receiver.
bool call_matches(std::string_view chain, std::string_view name) {
  if (chain.empty()) return false;
  if (name.front() == '.') {
    return chain.size() >= name.size() && chain.substr(chain.size() - name.size()) == name;
  }
  return chain == name;
}

bool prefix_matches(std::string_view chain, std::string_view name) {
  if (chain.empty()) return false;
  if (name.front() == '.') {
    std::string c = std::string(chain) + ".";
    return c.find(std::string(name) + ".") != std::string::npos;
  }
  if (name.back() == '.') return chain.substr(0, name.size()) == name;
  return chain == name || (chain.size() > name.size() && chain.substr(0, name.size()) == name &&
                           chain[name.size()] == '.');
}

struct Line {
  std::vector<Token> toks;
  int depth = 0;
  std::vector<std::size_t> match;
};

std::vector<Line> logical_lines(const TokenStream& stream) {
  std::vector<Line> lines;
  Line cur;
  int depth = 0;
  for (const Token& t : stream.tokens) {
    switch (t.kind) {
      case TokenKind::Indent: ++depth; continue;
      case TokenKind::Dedent: --depth; continue;
      case TokenKind::Comment: continue;
      case TokenKind::Newline:
        if (!cur.toks.empty()) {
          lines.push_back(std::move(cur));
          cur = Line{};
        }
        continue;
      default: break;
    }
    if (cur.toks.empty()) cur.depth = depth;
    cur.toks.push_back(t);
  }
  if (!cur.toks.empty()) lines.push_back(std::move(cur));
  for (Line& l : lines) {
    l.match.assign(l.toks.size(), std::string::npos);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < l.toks.size(); ++i) {
      if (is_open(l.toks[i])) {
        stack.push_back(i);
      } else if (is_close(l.toks[i]) && !stack.empty()) {
        l.match[stack.back()] = i;
        l.match[i] = stack.back();
        stack.pop_back();
      }
    }
  }
  return lines;
}

// Dotted name ending just before index k (usually a '(' token). A leading '.'
// marks a receiver that is itself an expression. Sets `start` to the first
// token of the name.
std::string chain_before(const std::vector<Token>& toks, std::size_t k, std::size_t& start) {
  if (k == 0 || toks[k - 1].kind != TokenKind::Identifier) return {};
  std::vector<std::string_view> parts;
  std::size_t j = k - 1;
  bool receiver = false;
  while (true) {
    parts.push_back(toks[j].lexeme);
    if (j >= 2 && is_delim(toks[j - 1], ".") && toks[j - 2].kind == TokenKind::Identifier) {
      j -= 2;
      continue;
    }
    if (j >= 1 && is_delim(toks[j - 1], ".")) receiver = true;
    break;
  }
  start = j;
  std::string out = receiver ? "." : "";
  for (std::size_t i = parts.size(); i-- > 0;) {
    out += parts[i];
    if (i > 0) out += ".";
  }
  return out;
}

std::string chain_from(const std::vector<Token>& toks, std::size_t i) {
  std::string out(toks[i].lexeme);
  while (i + 2 < toks.size() && is_delim(toks[i + 1], ".") && toks[i + 2].kind == TokenKind::Identifier) {
    out += ".";
    out += toks[i + 2].lexeme;
    i += 2;
  }
  return out;
}

// Embedded expressions of an f-string lexeme.
std::vector<std::string> fstring_expressions(std::string_view lexeme) {
  std::size_t q = 0;
  while (q < lexeme.size() && lexeme[q] != '\'' && lexeme[q] != '"') ++q;
  std::string_view prefix = lexeme.substr(0, q);
  if (prefix.find('f') == std::string_view::npos && prefix.find('F') == std::string_view::npos) return {};
  std::vector<std::string> out;
  for (std::size_t i = q; i < lexeme.size(); ++i) {
    if (lexeme[i] != '{') continue;
    if (i + 1 < lexeme.size() && lexeme[i + 1] == '{') {
      ++i;
      continue;
    }
    int depth = 0;
    std::size_t j = i + 1;
    std::size_t cut = std::string_view::npos;
    for (; j < lexeme.size(); ++j) {
      char c = lexeme[j];
      if (c == '(' || c == '[' || c == '{') ++depth;
      else if (c == ')' || c == ']') --depth;
      else if (c == '}') {
        if (depth == 0) break;
        --depth;
      } else if (depth == 0 && cut == std::string_view::npos &&
                 (c == ':' || (c == '!' && j + 1 < lexeme.size() && lexeme[j + 1] != '='))) {
        cut = j;
      }
    }
    std::size_t end = std::min(j, cut);
    out.emplace_back(lexeme.substr(i + 1, end - i - 1));
    i = j;
  }
  return out;
}

struct CweRules {
  std::vector<const Rule*> sources, routes, sinks, sanitizers;
  bool guard = false;
};

CweRules select_rules(const RuleSet& rules, Cwe cwe) {
  CweRules r;
  for (const Rule& rule : rules.rules) {
    if (rule.cwe && *rule.cwe != cwe) continue;
    if (rule.directive == "source") r.sources.push_back(&rule);
    else if (rule.directive == "route") r.routes.push_back(&rule);
    else if (rule.directive == "sink") r.sinks.push_back(&rule);
    else if (rule.directive == "sanitizer") r.sanitizers.push_back(&rule);
    else if (rule.directive == "guard") r.guard = true;
  }
  return r;
}

struct Scope {
  int depth = -1;
  bool route = false;
  std::set<std::string> tainted;
  std::set<std::string> validated;
};

class Analyzer {
 public:
  Analyzer(Cwe cwe, const CweRules& rules, std::string_view text) : cwe_(cwe), rules_(rules), text_(text) {}

  DetectorVerdict run(const std::vector<Line>& lines) {
    std::vector<Scope> scopes{Scope{}};
    bool pending_route = false;
    for (const Line& line : lines) {
      while (scopes.size() > 1 && scopes.back().depth >= line.depth) scopes.pop_back();
      Scope& scope = scopes.back();
      const auto& t = line.toks;
      if (is_op(t[0], "@")) {
        if (t.size() > 1 && t[1].kind == TokenKind::Identifier) {
          std::string chain = chain_from(t, 1);
          for (const Rule* r : rules_.routes) {
            if (call_matches(chain, r->name)) pending_route = true;
          }
        }
        continue;
      }
      std::size_t def_at = is_kw(t[0], "def") ? 0 : (is_kw(t[0], "async") && t.size() > 1 && is_kw(t[1], "def")) ? 1 : std::string::npos;
      if (def_at != std::string::npos) {
        Scope inner;
        inner.depth = line.depth;
        inner.route = pending_route;
        inner.tainted = scope.tainted;
        inner.validated = scope.validated;
        if (pending_route) {
          for (const std::string& p : parameters(line, def_at)) inner.tainted.insert(p);
        }
        pending_route = false;
        scopes.push_back(std::move(inner));
        continue;
      }
      pending_route = false;
      check_sinks(line, scope);
      propagate(line, scope);
    }
    DetectorVerdict v;
    v.findings = std::move(findings_);
    v.verdict = v.findings.empty() ? 0 : 1;
    return v;
  }

 private:
  static std::vector<std::string> parameters(const Line& line, std::size_t def_at) {
    std::vector<std::string> out;
    const auto& t = line.toks;
    std::size_t open = def_at + 2;
    if (open >= t.size() || !is_delim(t[open], "(")) return out;
    std::size_t close = line.match[open];
    if (close == std::string::npos) return out;
    int depth = 0;
    bool expect_name = true;
    for (std::size_t i = open + 1; i < close; ++i) {
      if (is_open(t[i])) ++depth;
      else if (is_close(t[i])) --depth;
      else if (depth == 0 && is_delim(t[i], ",")) expect_name = true;
      else if (depth == 0 && expect_name && t[i].kind == TokenKind::Identifier) {
        if (t[i].lexeme != "self" && t[i].lexeme != "cls") out.push_back(t[i].lexeme);
        expect_name = false;
      }
    }
    return out;
  }

  bool is_source(std::string_view chain) const {
    for (const Rule* r : rules_.sources) {
      if (prefix_matches(chain, r->name)) return true;
    }
    return false;
  }

  bool is_sanitizer(std::string_view chain) const {
    for (const Rule* r : rules_.sanitizers) {
      if (call_matches(chain, r->name)) return true;
    }
    return false;
  }

  bool name_tainted(const std::string& name, const Scope& scope) const {
    return scope.tainted.count(name) && !(rules_.guard && scope.validated.count(name));
  }

  bool expression_tainted(const std::string& expr, const Scope& scope) const {
    try {
      TokenStream s = tokenize(expr, LexOptions{true});
      Line l;
      for (Token& t : significant_tokens(s)) {
        if (t.kind != TokenKind::Comment) l.toks.push_back(std::move(t));
      }
      l.match.assign(l.toks.size(), std::string::npos);
      std::vector<std::size_t> stack;
      for (std::size_t i = 0; i < l.toks.size(); ++i) {
        if (is_open(l.toks[i])) stack.push_back(i);
        else if (is_close(l.toks[i]) && !stack.empty()) {
          l.match[stack.back()] = i;
          l.match[i] = stack.back();
          stack.pop_back();
        }
      }
      return tainted(l, 0, l.toks.size(), scope);
    } catch (const Error&) {
      return false;
    }
  }

  bool tainted(const Line& line, std::size_t a, std::size_t b, const Scope& scope) const {
    const auto& t = line.toks;
    for (std::size_t i = a; i < b; ++i) {
      const Token& tok = t[i];
      if (is_delim(tok, "(")) {
        std::size_t start = 0;
        std::string chain = chain_before(t, i, start);
        if (!chain.empty() && is_sanitizer(chain) && line.match[i] != std::string::npos) {
          i = line.match[i];
        }
        continue;
      }
      if (tok.kind == TokenKind::Identifier && !(i > 0 && is_delim(t[i - 1], "."))) {
        bool kwarg_name = i + 1 < t.size() && is_op(t[i + 1], "=") && i > 0 &&
                          (is_delim(t[i - 1], "(") || is_delim(t[i - 1], ","));
        if (kwarg_name) continue;
        std::string chain = chain_from(t, i);
        // A sanitizer applied directly to this name, e.g. `escape(x)`, is
        // handled at its '('; sources are recognized here.
        std::size_t end = i;
        while (end + 2 < t.size() && is_delim(t[end + 1], ".") && t[end + 2].kind == TokenKind::Identifier) end += 2;
        bool sanitized_call = end + 1 < t.size() && is_delim(t[end + 1], "(") && is_sanitizer(chain);
        if (sanitized_call) continue;
        if (is_source(chain)) return true;
        if (name_tainted(tok.lexeme, scope)) return true;
        continue;
      }
      if (tok.kind == TokenKind::String) {
        for (const std::string& expr : fstring_expressions(tok.lexeme)) {
          if (expression_tainted(expr, scope)) return true;
        }
      }
    }
    return false;
  }

  void add_finding(const Token& at, const std::string& rule) {
    Finding f;
    f.cwe = cwe_;
    f.offset = at.offset;
    LineCol lc = line_col(text_, at.offset);
    f.line = lc.line;
    f.column = lc.column;
    f.rule_id = to_string(cwe_) + "/" + rule;
    std::size_t bol = text_.rfind('\n', at.offset == 0 ? 0 : at.offset - 1);
    bol = (bol == std::string_view::npos || at.offset == 0) ? 0 : bol + 1;
    std::size_t eol = text_.find('\n', at.offset);
    f.evidence = std::string(text_.substr(bol, eol == std::string_view::npos ? std::string_view::npos : eol - bol));
    while (!f.evidence.empty() && (f.evidence.back() == '\r' || f.evidence.back() == ' ')) f.evidence.pop_back();
    findings_.push_back(std::move(f));
  }

  void check_sinks(const Line& line, const Scope& scope) {
    const auto& t = line.toks;
    if (is_kw(t[0], "return") && scope.route && t.size() > 1) {
      for (const Rule* r : rules_.sinks) {
        if (!r->return_sink) continue;
        bool literal = (is_delim(t[1], "{") || is_delim(t[1], "[")) && line.match[1] == t.size() - 1;
        if (!literal && tainted(line, 1, t.size(), scope)) add_finding(t[0], "return");
      }
    }
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!is_delim(t[k], "(") || line.match[k] == std::string::npos) continue;
      std::size_t start = 0;
      std::string chain = chain_before(t, k, start);
      if (chain.empty()) continue;
      for (const Rule* r : rules_.sinks) {
        if (r->return_sink || !call_matches(chain, r->name)) continue;
        std::size_t a = k + 1;
        std::size_t b = line.match[k];
        if (!r->unless.empty()) {
          bool exempt = false;
          for (std::size_t i = a; i < b; ++i) {
            if (t[i].kind == TokenKind::Identifier && t[i].lexeme == r->unless) exempt = true;
          }
          if (exempt) continue;
        }
        if (r->needs_shell && !has_shell_true(line, a, b)) continue;
        if (r->first_arg_only) b = first_argument_end(line, a, b);
        if (tainted(line, a, b, scope)) {
          add_finding(t[start], r->name);
          break;
        }
      }
    }
  }

  static bool has_shell_true(const Line& line, std::size_t a, std::size_t b) {
    const auto& t = line.toks;
    int depth = 0;
    for (std::size_t i = a; i < b; ++i) {
      if (is_open(t[i])) ++depth;
      else if (is_close(t[i])) --depth;
      else if (depth == 0 && t[i].kind == TokenKind::Identifier && t[i].lexeme == "shell" && i + 2 < b &&
               is_op(t[i + 1], "=") && is_kw(t[i + 2], "True")) {
        return true;
      }
    }
    return false;
  }

  static std::size_t first_argument_end(const Line& line, std::size_t a, std::size_t b) {
    const auto& t = line.toks;
    int depth = 0;
    for (std::size_t i = a; i < b; ++i) {
      if (is_open(t[i])) ++depth;
      else if (is_close(t[i])) --depth;
      else if (depth == 0 && is_delim(t[i], ",")) return i;
    }
    return b;
  }

  // Names bound by a target list such as `a, (b, c)`; attribute and
  // subscript bases count as their root name.
  static std::vector<std::string> target_names(const Line& line, std::size_t a, std::size_t b, bool& simple) {
    const auto& t = line.toks;
    std::vector<std::string> out;
    simple = true;
    int depth = 0;
    for (std::size_t i = a; i < b; ++i) {
      const Token& tok = t[i];
      if (depth == 0 && is_delim(tok, ":")) break;  // annotation
      if (is_open(tok)) {
        ++depth;
        if (!is_delim(tok, "(")) simple = false;
      } else if (is_close(tok)) {
        --depth;
      } else if (tok.kind == TokenKind::Identifier) {
        if (i > 0 && is_delim(t[i - 1], ".")) {
          simple = false;
          continue;
        }
        if (depth == 0 || is_delim(t[a], "(")) out.push_back(tok.lexeme);
      } else if (is_delim(tok, ".")) {
        simple = false;
      } else if (!is_delim(tok, ",") && !is_op(tok, "*")) {
        simple = false;
      }
    }
    return out;
  }

  void bind(Scope& scope, const std::vector<std::string>& names, bool taint, bool kill) {
    for (const std::string& n : names) {
      if (taint) {
        scope.tainted.insert(n);
        scope.validated.erase(n);
      } else if (kill) {
        scope.tainted.erase(n);
        scope.validated.erase(n);
      }
    }
  }

  void propagate(const Line& line, Scope& scope) {
    const auto& t = line.toks;
    const std::size_t n = t.size();
    std::size_t first = is_kw(t[0], "async") && n > 1 ? 1 : 0;

    if (rules_.guard && (is_kw(t[first], "if") || is_kw(t[first], "elif") || is_kw(t[first], "while") ||
                         is_kw(t[first], "assert"))) {
      std::size_t end = n;
      for (std::size_t i = first; i < n; ++i) {
        if (is_delim(t[i], ":") && i + 1 < n) {
          // single-line compound statement: the guard is the header only
          end = i;
          break;
        }
      }
      bool comparison = false;
      for (std::size_t i = first; i < end; ++i) {
        if (t[i].kind == TokenKind::Operator &&
            (t[i].lexeme == "<" || t[i].lexeme == ">" || t[i].lexeme == "<=" || t[i].lexeme == ">=")) {
          comparison = true;
        }
      }
      if (comparison) {
        for (std::size_t i = first; i < end; ++i) {
          if (t[i].kind == TokenKind::Identifier && scope.tainted.count(t[i].lexeme)) {
            scope.validated.insert(t[i].lexeme);
          }
        }
      }
      return;
    }

    if (is_kw(t[first], "for")) {
      std::size_t in = std::string::npos;
      int depth = 0;
      for (std::size_t i = first + 1; i < n; ++i) {
        if (is_open(t[i])) ++depth;
        else if (is_close(t[i])) --depth;
        else if (depth == 0 && is_kw(t[i], "in")) {
          in = i;
          break;
        }
      }
      if (in == std::string::npos) return;
      std::size_t colon = n;
      depth = 0;
      for (std::size_t i = in + 1; i < n; ++i) {
        if (is_open(t[i])) ++depth;
        else if (is_close(t[i])) --depth;
        else if (depth == 0 && is_delim(t[i], ":")) {
          colon = i;
          break;
        }
      }
      bool simple = true;
      auto names = target_names(line, first + 1, in, simple);
      bind(scope, names, tainted(line, in + 1, colon, scope), false);
      return;
    }

    if (is_kw(t[first], "with")) {
      std::size_t seg = first + 1;
      int depth = 0;
      for (std::size_t i = first + 1; i < n; ++i) {
        if (is_open(t[i])) ++depth;
        else if (is_close(t[i])) --depth;
        else if (depth == 0 && is_kw(t[i], "as") && i + 1 < n && t[i + 1].kind == TokenKind::Identifier) {
          if (tainted(line, seg, i, scope)) bind(scope, {t[i + 1].lexeme}, true, false);
        } else if (depth == 0 && (is_delim(t[i], ",") || is_delim(t[i], ":"))) {
          seg = i + 1;
        }
      }
      return;
    }

    if (t[0].kind == TokenKind::Keyword && !is_kw(t[0], "None")) return;

    std::vector<std::size_t> eqs;
    bool augmented = false;
    int depth = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_open(t[i])) ++depth;
      else if (is_close(t[i])) --depth;
      else if (depth == 0 && t[i].kind == TokenKind::Operator) {
        const std::string& op = t[i].lexeme;
        if (op == "=") {
          eqs.push_back(i);
        } else if (op.size() >= 2 && op.back() == '=' && op != "==" && op != "!=" && op != "<=" && op != ">=") {
          eqs.push_back(i);
          augmented = true;
          break;
        }
      }
    }
    if (eqs.empty()) return;
    bool taint = tainted(line, eqs.back() + 1, n, scope);
    std::size_t seg = 0;
    for (std::size_t e : eqs) {
      bool simple = true;
      auto names = target_names(line, seg, e, simple);
      bind(scope, names, taint, !augmented && simple);
      seg = e + 1;
    }
  }

  Cwe cwe_;
  const CweRules& rules_;
  std::string_view text_;
  std::vector<Finding> findings_;
};

}  // namespace

int cwe_number(Cwe cwe) { return static_cast<int>(cwe); }

std::string to_string(Cwe cwe) { return "CWE-" + std::to_string(cwe_number(cwe)); }

Cwe parse_cwe(std::string_view text) {
  std::string s(text);
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s.rfind("CWE-", 0) == 0) s = s.substr(4);
  else if (s.rfind("CWE", 0) == 0) s = s.substr(3);
  for (Cwe c : kAllCwes) {
    if (s == std::to_string(cwe_number(c))) return c;
  }
  throw Error(ErrorKind::Config, "unsupported CWE '" + std::string(text) + "' (expected 20, 22, 78, 79 or 89)");
}

bool same_outcome(const DetectorVerdict& a, const DetectorVerdict& b) {
  if (a.verdict != b.verdict || a.findings.size() != b.findings.size()) return false;
  for (std::size_t i = 0; i < a.findings.size(); ++i) {
    if (a.findings[i].rule_id != b.findings[i].rule_id) return false;
  }
  return true;
}

RuleSet parse_rules(std::string_view text) {
  RuleSet set;
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& w) {
    auto fail = [&](const std::string& why) {
      throw Error(ErrorKind::Config, "rules line " + std::to_string(line_no) + ": " + why);
    };
    Rule r;
    r.directive = std::string(w[0]);
    if (r.directive != "source" && r.directive != "route" && r.directive != "sink" &&
        r.directive != "sanitizer" && r.directive != "guard") {
      fail("unknown directive '" + r.directive + "'");
    }
    if (w.size() < 2) fail("missing CWE");
    if (w[1] != "*") r.cwe = parse_cwe(w[1]);
    if (r.directive == "guard") {
      if (!r.cwe) fail("guard needs a CWE");
      set.rules.push_back(std::move(r));
      return;
    }
    if (w.size() < 3) fail("missing name");
    r.name = std::string(w[2]);
    if (r.directive == "sink" && !r.cwe) fail("sink needs a CWE");
    if (r.directive == "sink" && r.name == "return") r.return_sink = true;
    for (std::size_t i = 3; i < w.size(); ++i) {
      if (r.directive != "sink") fail("options are only valid on sinks");
      if (w[i] == "arg1") r.first_arg_only = true;
      else if (w[i] == "shell") r.needs_shell = true;
      else if (w[i].substr(0, 7) == "unless=") r.unless = std::string(w[i].substr(7));
      else fail("unknown sink option '" + std::string(w[i]) + "'");
    }
    set.rules.push_back(std::move(r));
  });
  return set;
}

const RuleSet& builtin_rules() {
  static const RuleSet rules = parse_rules(data::k_cwe_rules_txt);
  return rules;
}

DetectorVerdict detect(Cwe cwe, const SourceScript& script) { return detect(cwe, script, builtin_rules()); }

DetectorVerdict detect(Cwe cwe, const SourceScript& script, const RuleSet& rules) {
  TokenStream stream = tokenize(script.text);
  CweRules selected = select_rules(rules, cwe);
  Analyzer analyzer(cwe, selected, script.text);
  return analyzer.run(logical_lines(stream));
}

RelevanceRules parse_relevance_rules(std::string_view text) {
  RelevanceRules r;
  for_each_line(text, [&](std::size_t line_no, const std::vector<std::string_view>& w) {
    if (w.size() != 2) {
      throw Error(ErrorKind::Config, "relevance line " + std::to_string(line_no) + ": expected '<cwe> <name>'");
    }
    r.names.emplace_back(parse_cwe(w[0]), std::string(w[1]));
  });
  return r;
}

const RelevanceRules& builtin_relevance_rules() {
  static const RelevanceRules rules = parse_relevance_rules(data::k_relevance_rules_txt);
  return rules;
}

bool function_relevant(Cwe cwe, const TokenStream& stream, const FunctionSpan& span, const RelevanceRules& rules) {
  std::size_t begin = span.decorators.empty() ? span.bytes.begin : std::min(span.decorators.begin, span.bytes.begin);
  std::vector<Token> toks;
  for (const Token& t : stream.tokens) {
    if (t.offset >= begin && t.offset < span.bytes.end && t.kind != TokenKind::Comment &&
        t.kind != TokenKind::Newline && t.kind != TokenKind::Indent && t.kind != TokenKind::Dedent) {
      toks.push_back(t);
    }
  }
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != TokenKind::Identifier) continue;
    bool attr = i > 0 && is_delim(toks[i - 1], ".");
    std::string chain = (attr ? "." : "") + chain_from(toks, i);
    for (const auto& [c, name] : rules.names) {
      if (c != cwe) continue;
      if (name.front() == '.') {
        if (attr && prefix_matches(chain.substr(1), name.substr(1))) return true;
        if (!attr && prefix_matches(chain, name)) return true;
      } else if (!attr && prefix_matches(chain, name)) {
        return true;
      }
    }
  }
  return false;
}

}  // namespace pws
