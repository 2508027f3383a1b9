#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "embedded_data.hpp"
#include "json.hpp"
#include "pws/corpus.hpp"
#include "pws/error.hpp"
#include "pws/hashing.hpp"
#include "pws/parallel.hpp"

namespace pws {
namespace {

namespace fs = std::filesystem;

const std::set<std::string>& builtin_names() {
  static const std::set<std::string> names = {
      "abs", "all", "any", "ascii", "bin", "bool", "breakpoint", "bytearray", "bytes", "callable", "chr",
      "classmethod", "compile", "complex", "delattr", "dict", "dir", "divmod", "enumerate", "eval", "exec",
      "filter", "float", "format", "frozenset", "getattr", "globals", "hasattr", "hash", "help", "hex", "id",
      "input", "int", "isinstance", "issubclass", "iter", "len", "list", "locals", "map", "max", "memoryview",
      "min", "next", "object", "oct", "open", "ord", "pow", "print", "property", "range", "repr", "reversed",
      "round", "set", "setattr", "slice", "sorted", "staticmethod", "str", "sum", "super", "tuple", "type",
      "vars", "zip", "__import__", "__name__", "__file__", "__doc__", "__spec__", "__builtins__",
      "Exception", "BaseException", "ValueError", "TypeError", "KeyError", "IndexError", "RuntimeError",
      "OSError", "IOError", "FileNotFoundError", "PermissionError", "NotImplementedError", "StopIteration",
      "AttributeError", "ImportError", "ZeroDivisionError", "AssertionError", "NotImplemented", "Ellipsis",
      "SystemExit", "KeyboardInterrupt", "UnicodeDecodeError", "UnicodeError", "ConnectionError",
      "TimeoutError", "LookupError", "ArithmeticError", "OverflowError", "EOFError", "MemoryError",
      "RecursionError", "Warning", "DeprecationWarning", "UserWarning"};
  return names;
}

bool is_delim(const Token& t, std::string_view s) { return t.kind == TokenKind::Delimiter && t.lexeme == s; }
bool is_kw(const Token& t, std::string_view s) { return t.kind == TokenKind::Keyword && t.lexeme == s; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

QualityReport quality_check(const SourceScript& script) {
  QualityReport report;
  TokenStream stream;
  try {
    stream = tokenize(script.text);
  } catch (const LexError& e) {
    report.lex_ok = false;
    report.lex_error = e.what();
    return report;
  }

  // Module-level statements only; function and class bodies are skipped.
  std::set<std::string> bound;
  std::set<std::string> flagged;
  std::vector<Token> line;
  int depth = 0;
  auto flush = [&] {
    if (line.empty()) return;
    const auto& t = line;
    std::set<std::string> binds;
    std::size_t n = t.size();
    if (is_kw(t[0], "import") || is_kw(t[0], "from")) {
      // import a.b as c, d  /  from x import a as b, c
      std::size_t start = 1;
      if (is_kw(t[0], "from")) {
        while (start < n && !is_kw(t[start], "import")) ++start;
        ++start;
      }
      for (std::size_t i = start; i < n; ++i) {
        if (t[i].kind != TokenKind::Identifier) continue;
        bool after_dot = i > 0 && is_delim(t[i - 1], ".");
        bool aliased = i + 2 < n && is_kw(t[i + 1], "as");
        if (aliased || after_dot) continue;
        binds.insert(t[i].lexeme);
      }
      for (std::size_t i = 0; i + 1 < n; ++i) {
        if (is_kw(t[i], "as") && t[i + 1].kind == TokenKind::Identifier) binds.insert(t[i + 1].lexeme);
      }
      bound.insert(binds.begin(), binds.end());
      line.clear();
      return;
    }
    std::size_t first = is_kw(t[0], "async") && n > 1 ? 1 : 0;
    if (is_kw(t[first], "def") || is_kw(t[first], "class")) {
      if (first + 1 < n) bound.insert(t[first + 1].lexeme);
      line.clear();
      return;
    }
    // Binding positions: assignment targets, for targets, as-names, global.
    std::size_t last_eq = std::string::npos;
    int d = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (t[i].kind == TokenKind::Delimiter && (t[i].lexeme == "(" || t[i].lexeme == "[" || t[i].lexeme == "{")) ++d;
      else if (t[i].kind == TokenKind::Delimiter && (t[i].lexeme == ")" || t[i].lexeme == "]" || t[i].lexeme == "}")) --d;
      else if (d == 0 && t[i].kind == TokenKind::Operator && t[i].lexeme.back() == '=' && t[i].lexeme != "==" &&
               t[i].lexeme != "!=" && t[i].lexeme != "<=" && t[i].lexeme != ">=") {
        last_eq = i;
      }
    }
    std::set<std::string> local;  // comprehension / lambda / as / for names on this line
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if ((is_kw(t[i], "as") || is_kw(t[i], "global") || is_kw(t[i], "nonlocal")) &&
          t[i + 1].kind == TokenKind::Identifier) {
        local.insert(t[i + 1].lexeme);
      }
      if (is_kw(t[i], "for") || is_kw(t[i], "lambda")) {
        for (std::size_t j = i + 1; j < n && !is_kw(t[j], "in") && !is_delim(t[j], ":"); ++j) {
          if (t[j].kind == TokenKind::Identifier) local.insert(t[j].lexeme);
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Token& tok = t[i];
      if (tok.kind != TokenKind::Identifier) continue;
      if (i > 0 && is_delim(t[i - 1], ".")) continue;
      bool kwarg = i + 1 < n && t[i + 1].kind == TokenKind::Operator && t[i + 1].lexeme == "=" &&
                   i > 0 && (is_delim(t[i - 1], "(") || is_delim(t[i - 1], ","));
      if (kwarg) continue;
      if (last_eq != std::string::npos && i < last_eq) {
        binds.insert(tok.lexeme);
        continue;
      }
      if (local.count(tok.lexeme) || bound.count(tok.lexeme) || builtin_names().count(tok.lexeme)) continue;
      if (flagged.insert(tok.lexeme).second) report.undefined_names.push_back(tok.lexeme);
    }
    bound.insert(binds.begin(), binds.end());
    bound.insert(local.begin(), local.end());
    line.clear();
  };
  for (const Token& tok : stream.tokens) {
    switch (tok.kind) {
      case TokenKind::Indent: ++depth; break;
      case TokenKind::Dedent: --depth; break;
      case TokenKind::Newline:
        if (tok.logical) flush();
        break;
      case TokenKind::Comment: break;
      default:
        if (depth == 0 || !line.empty()) line.push_back(tok);
        break;
    }
  }
  flush();
  return report;
}

Corpus admit(std::vector<SourceScript> scripts, std::string name, const IngestOptions& options) {
  Corpus corpus;
  corpus.name = std::move(name);
  std::sort(scripts.begin(), scripts.end(), [](const SourceScript& a, const SourceScript& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < scripts.size(); ++i) {
    if (scripts[i].id == scripts[i - 1].id) throw Error(ErrorKind::Config, "duplicate script id " + scripts[i].id);
  }
  for (SourceScript& s : scripts) {
    QualityReport q = quality_check(s);
    if (q.passed(options.check_undefined_names)) {
      corpus.scripts.push_back(std::move(s));
      continue;
    }
    std::string reason = !q.lex_ok ? q.lex_error : "undefined names:";
    if (q.lex_ok) {
      for (const auto& n : q.undefined_names) reason += " " + n;
    }
    corpus.rejections.push_back({s.id, reason, sha256_hex(s.text)});
  }
  return corpus;
}

Corpus ingest(const fs::path& root, std::string name, const IngestOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(ErrorKind::Io, "not a directory: " + root.string());
  std::vector<SourceScript> scripts;
  for (auto it = fs::recursive_directory_iterator(root, ec); !ec && it != fs::recursive_directory_iterator();
       it.increment(ec)) {
    if (!it->is_regular_file() || it->path().extension() != options.extension) continue;
    SourceScript s;
    s.id = fs::relative(it->path(), root).generic_string();
    s.text = read_file(it->path());
    s.origin = options.origin;
    scripts.push_back(std::move(s));
  }
  if (ec) throw Error(ErrorKind::Io, "cannot walk " + root.string() + ": " + ec.message());
  Corpus corpus = admit(std::move(scripts), std::move(name), options);
  corpus.provenance = "ingested from " + root.generic_string();
  return corpus;
}

std::string corpus_manifest(const Corpus& corpus) {
  struct Row {
    std::string id, hash, status;
  };
  std::vector<Row> rows;
  for (const auto& s : corpus.scripts) rows.push_back({s.id, sha256_hex(s.text), "admitted"});
  for (const auto& r : corpus.rejections) rows.push_back({r.id, r.content_hash, "rejected: " + r.reason});
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.id < b.id; });
  std::string out;
  for (const Row& r : rows) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["path"] = r.id;
    j["sha256"] = r.hash;
    j["status"] = r.status;
    out += j.dump() + "\n";
  }
  return out;
}

const std::vector<std::string>* DomainCatalog::use_cases(std::string_view domain) const {
  for (const auto& [d, cases] : domains) {
    if (d == domain) return &cases;
  }
  return nullptr;
}

DomainCatalog parse_catalog(std::string_view text) {
  DomainCatalog catalog;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string_view::npos || tab == 0 || tab + 1 >= line.size()) {
      throw Error(ErrorKind::Config, "catalog line " + std::to_string(line_no) + ": expected 'domain<TAB>use case'");
    }
    std::string domain(line.substr(0, tab));
    std::string use_case(line.substr(tab + 1));
    auto it = std::find_if(catalog.domains.begin(), catalog.domains.end(),
                           [&](const auto& row) { return row.first == domain; });
    if (it == catalog.domains.end()) {
      catalog.domains.emplace_back(domain, std::vector<std::string>{});
      it = catalog.domains.end() - 1;
    }
    it->second.push_back(use_case);
  }
  return catalog;
}

const DomainCatalog& builtin_catalog() {
  static const DomainCatalog catalog = parse_catalog(data::k_domain_catalog_tsv);
  return catalog;
}

std::string cwe_title(Cwe cwe) {
  switch (cwe) {
    case Cwe::C20: return "Improper Input Validation";
    case Cwe::C22: return "Improper Limitation of a Pathname to a Restricted Directory (Path Traversal)";
    case Cwe::C78: return "Improper Neutralization of Special Elements used in an OS Command (OS Command Injection)";
    case Cwe::C79: return "Improper Neutralization of Input During Web Page Generation (Cross-site Scripting)";
    case Cwe::C89: return "Improper Neutralization of Special Elements used in an SQL Command (SQL Injection)";
  }
  return "";
}

std::string render_generation_prompt(const PromptDictionary& dict, const DomainCatalog& catalog) {
  const auto* cases = catalog.use_cases(dict.domain);
  if (!cases) throw Error(ErrorKind::UnknownDomain, "unknown domain '" + dict.domain + "'");
  if (std::find(cases->begin(), cases->end(), dict.use_case) == cases->end()) {
    throw Error(ErrorKind::UnknownDomain, "use case '" + dict.use_case + "' is not listed under " + dict.domain);
  }
  const std::string cwe = to_string(dict.cwe);
  std::string security;
  if (dict.variant == Variant::Vulnerable) {
    security = "The function that calls " + dict.package + "." + dict.function + " must contain a " + cwe + " (" +
               cwe_title(dict.cwe) + ") weakness. Keep the weakness inside that single function and do not "
               "mention it in comments.";
  } else {
    security = "The function that calls " + dict.package + "." + dict.function + " must be free of " + cwe + " (" +
               cwe_title(dict.cwe) + "). Validate or neutralize every externally controlled value before use.";
  }
  std::string out;
  out += "Below is an instruction that describes a task, paired with an input that provides further context. "
         "Write a response that appropriately completes the request.\n\n";
  out += "### Instruction:\n";
  out += "Write a complete, runnable Python script for the use case described in the input. Organize the code into "
         "functions, use the given package and function, and return only the code.\n";
  out += security + "\n\n";
  out += "### Input:\n";
  out += "Domain: " + dict.domain + "\n";
  out += "Use case: " + dict.use_case + "\n";
  out += "Package: " + dict.package + "\n";
  out += "Function: " + dict.function + "\n";
  out += "CWE: " + cwe + "\n\n";
  out += "### Response:\n";
  return out;
}

Detector builtin_detector() {
  return [](Cwe cwe, const SourceScript& s) { return detect(cwe, s); };
}

LabeledPool build_pool(const Corpus& corpus, Cwe cwe, const Detector& detector, unsigned jobs) {
  struct Outcome {
    int kind = 0;  // 0 skip, 1 vulnerable, 2 secure
    PoolEntry entry;
  };
  auto outcomes = parallel_map(corpus.scripts.size(), jobs, [&](std::size_t i) {
    const SourceScript& s = corpus.scripts[i];
    Outcome out;
    DetectorVerdict v;
    try {
      v = detector(cwe, s);
    } catch (const std::exception& e) {
      throw Error(ErrorKind::DetectorFailure, s.id + ": " + e.what());
    }
    TokenStream stream = tokenize(s.text);
    auto spans = extract_functions(stream);
    if (spans.empty()) return out;
    if (v.verdict == 1) {
      std::size_t chosen = 0;
      std::size_t at = v.findings.front().offset;
      for (std::size_t k = 0; k < spans.size(); ++k) {
        if (spans[k].bytes.contains(at)) {
          chosen = k;
          break;
        }
      }
      out.kind = 1;
      out.entry = {s, spans[chosen], chosen};
      return out;
    }
    for (std::size_t k = 0; k < spans.size(); ++k) {
      if (function_relevant(cwe, stream, spans[k])) {
        out.kind = 2;
        out.entry = {s, spans[k], k};
        break;
      }
    }
    return out;
  });
  LabeledPool pool;
  pool.cwe = cwe;
  for (auto& o : outcomes) {
    if (o.kind == 1) pool.vulnerable.push_back(std::move(o.entry));
    else if (o.kind == 2) pool.secure.push_back(std::move(o.entry));
  }
  return pool;
}

std::vector<std::string> verify_pool(const LabeledPool& pool, const Detector& detector) {
  std::vector<std::string> bad;
  for (const auto& e : pool.vulnerable) {
    if (detector(pool.cwe, e.script).verdict != 1) bad.push_back(e.script.id);
  }
  for (const auto& e : pool.secure) {
    if (detector(pool.cwe, e.script).verdict != 0) bad.push_back(e.script.id);
  }
  return bad;
}

}  // namespace pws
