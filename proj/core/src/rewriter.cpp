#include <algorithm>
#include <map>
#include <set>

#include "pws/error.hpp"
#include "pws/poison.hpp"

namespace pws {
namespace {

struct ImportBinding {
  std::string name;       // name bound in the module namespace
  std::string statement;  // single-binding import statement
};

bool is_open(const Token& t) {
  return t.kind == TokenKind::Delimiter && (t.lexeme == "(" || t.lexeme == "[" || t.lexeme == "{");
}
bool is_close(const Token& t) {
  return t.kind == TokenKind::Delimiter && (t.lexeme == ")" || t.lexeme == "]" || t.lexeme == "}");
}

// Module-level import statements, one binding each. Imports nested in
// blocks (try/except fallbacks, functions) are ignored.
std::vector<ImportBinding> module_imports(const TokenStream& stream) {
  std::vector<ImportBinding> out;
  const auto& toks = stream.tokens;
  int depth = 0;
  std::size_t i = 0;
  while (i < toks.size()) {
    // Collect one logical line.
    std::vector<const Token*> line;
    while (i < toks.size()) {
      const Token& t = toks[i++];
      if (t.kind == TokenKind::Indent) {
        ++depth;
        continue;
      }
      if (t.kind == TokenKind::Dedent) {
        --depth;
        continue;
      }
      if (t.kind == TokenKind::Comment) continue;
      if (t.kind == TokenKind::Newline) {
        if (t.logical) break;
        continue;
      }
      line.push_back(&t);
    }
    if (depth != 0 || line.empty()) continue;
    const std::string& head = line[0]->lexeme;
    if (line[0]->kind != TokenKind::Keyword || (head != "import" && head != "from")) continue;

    if (head == "import") {
      // import a.b [as c], d
      std::size_t j = 1;
      while (j < line.size()) {
        std::string dotted;
        while (j < line.size() && line[j]->lexeme != "," && line[j]->lexeme != "as") dotted += line[j++]->lexeme;
        std::string bound = dotted.substr(0, dotted.find('.'));
        std::string stmt = "import " + dotted;
        if (j < line.size() && line[j]->lexeme == "as" && j + 1 < line.size()) {
          bound = line[j + 1]->lexeme;
          stmt += " as " + bound;
          j += 2;
        }
        if (!bound.empty()) out.push_back({bound, stmt});
        while (j < line.size() && line[j]->lexeme != ",") ++j;
        ++j;
      }
    } else {
      // from m import a [as b], c  |  from m import (a, b)
      std::size_t j = 1;
      std::string module;
      while (j < line.size() && line[j]->lexeme != "import") module += line[j++]->lexeme;
      ++j;
      while (j < line.size()) {
        const Token& t = *line[j];
        if (t.lexeme == "(" || t.lexeme == ")" || t.lexeme == "," || t.lexeme == "*") {
          ++j;
          continue;
        }
        std::string name = t.lexeme;
        std::string bound = name;
        std::string stmt = "from " + module + " import " + name;
        if (j + 2 < line.size() && line[j + 1]->lexeme == "as") {
          bound = line[j + 2]->lexeme;
          stmt += " as " + bound;
          j += 3;
        } else {
          ++j;
        }
        out.push_back({bound, stmt});
      }
    }
  }
  return out;
}

bool is_fstring(std::string_view lexeme) {
  for (char c : lexeme) {
    if (c == '\'' || c == '"') return false;
    if (c == 'f' || c == 'F') return true;
  }
  return false;
}

bool ident_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

// Names referenced inside the replacement fields of an f-string, with their
// byte positions in the lexeme. Attribute names after '.' are skipped.
std::vector<std::pair<std::size_t, std::string>> fstring_names(std::string_view lexeme) {
  std::vector<std::pair<std::size_t, std::string>> out;
  int depth = 0;
  for (std::size_t i = 0; i < lexeme.size(); ++i) {
    char c = lexeme[i];
    if (c == '{') {
      if (depth == 0 && i + 1 < lexeme.size() && lexeme[i + 1] == '{') {
        ++i;
        continue;
      }
      ++depth;
      continue;
    }
    if (c == '}') {
      if (depth > 0) --depth;
      continue;
    }
    if (depth == 0) continue;
    if (ident_char(c) && !(c >= '0' && c <= '9') && (i == 0 || !ident_char(lexeme[i - 1]))) {
      std::size_t j = i;
      while (j < lexeme.size() && ident_char(lexeme[j])) ++j;
      bool attribute = i > 0 && lexeme[i - 1] == '.';
      if (!attribute) out.emplace_back(i, std::string(lexeme.substr(i, j - i)));
      i = j - 1;
    }
  }
  return out;
}

std::vector<std::string> drop_receiver(std::vector<std::string> params) {
  if (!params.empty() && (params[0] == "self" || params[0] == "cls")) params.erase(params.begin());
  return params;
}

struct TargetInfo {
  std::string name;
  std::vector<std::string> params;
};

// The def whose body the placeholder stands in for: the last def header
// before the placeholder line.
TargetInfo locate_target(std::string_view prompt_context) {
  auto placeholder = find_placeholder(prompt_context);
  if (!placeholder) throw Error(ErrorKind::NoPlaceholder, "prompt contains no placeholder line");
  TokenStream stream = tokenize(prompt_context);
  std::size_t def_tok = stream.size();
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const Token& t = stream[i];
    if (t.offset >= placeholder->begin) break;
    if (t.kind == TokenKind::Keyword && t.lexeme == "def") def_tok = i;
  }
  if (def_tok == stream.size()) throw Error(ErrorKind::NoPlaceholder, "placeholder is not inside a function");
  TargetInfo info;
  if (def_tok + 1 < stream.size()) info.name = stream[def_tok + 1].lexeme;
  FunctionSpan span;
  span.def_token = def_tok;
  info.params = function_parameters(stream, span);
  return info;
}

}  // namespace

Rewriter identity_rename_rewriter() {
  return [](const RewriteRequest& req) -> std::string {
    const PoolEntry& cand = req.candidate;
    TokenStream script_stream = tokenize(cand.script);
    auto cand_params = drop_receiver(function_parameters(script_stream, cand.span));
    auto target_params = drop_receiver(req.target_params);

    std::map<std::string, std::string> rename;
    for (std::size_t i = 0; i < std::min(cand_params.size(), target_params.size()); ++i) {
      if (cand_params[i] != target_params[i]) rename[cand_params[i]] = target_params[i];
    }

    std::string body = split_completion(cand.script, cand.span).completion;
    TokenStream body_stream = tokenize(body, LexOptions{true});
    std::set<std::string> used;
    int paren = 0;
    auto& toks = body_stream.tokens;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      Token& t = toks[i];
      if (is_open(t)) ++paren;
      if (is_close(t) && paren > 0) --paren;
      if (t.kind == TokenKind::String && is_fstring(t.lexeme)) {
        auto names = fstring_names(t.lexeme);
        for (auto it = names.rbegin(); it != names.rend(); ++it) {
          used.insert(it->second);
          auto r = rename.find(it->second);
          if (r != rename.end()) t.lexeme.replace(it->first, it->second.size(), r->second);
        }
        continue;
      }
      if (t.kind != TokenKind::Identifier) continue;
      bool attribute = i > 0 && toks[i - 1].lexeme == ".";
      bool keyword_arg = paren > 0 && i + 1 < toks.size() && toks[i + 1].lexeme == "=" && i > 0 &&
                         (toks[i - 1].lexeme == "(" || toks[i - 1].lexeme == ",");
      if (attribute || keyword_arg) continue;
      used.insert(t.lexeme);
      auto r = rename.find(t.lexeme);
      if (r != rename.end()) t.lexeme = r->second;
    }
    std::string renamed = detokenize(body_stream);

    // Imports the body needs that the prompt does not already provide.
    std::set<std::string> provided;
    for (const auto& b : module_imports(tokenize(req.prompt_context))) provided.insert(b.statement);
    std::vector<std::string> hoisted;
    for (const auto& b : module_imports(script_stream)) {
      if (!used.count(b.name) || provided.count(b.statement)) continue;
      if (std::find(hoisted.begin(), hoisted.end(), b.statement) == hoisted.end()) hoisted.push_back(b.statement);
    }
    if (hoisted.empty()) return renamed;

    std::string indent;
    std::size_t pos = 0;
    while (pos < renamed.size()) {
      std::size_t nl = renamed.find('\n', pos);
      std::string_view line(renamed.data() + pos, (nl == std::string::npos ? renamed.size() : nl) - pos);
      std::size_t lead = line.find_first_not_of(" \t");
      if (lead != std::string_view::npos && line[lead] != '#') {
        indent = std::string(line.substr(0, lead));
        break;
      }
      if (nl == std::string::npos) break;
      pos = nl + 1;
    }
    std::string prelude;
    for (const auto& stmt : hoisted) prelude += indent + stmt + "\n";
    return prelude + renamed;
  };
}

std::string adapt_completion(const Rewriter& rewriter, std::string_view prompt_context, const PoolEntry& candidate) {
  TargetInfo target = locate_target(prompt_context);
  RewriteRequest req{std::string(prompt_context), target.name, target.params, candidate};
  std::string out;
  try {
    out = rewriter(req);
  } catch (const Error& e) {
    throw Error(ErrorKind::RefactorFailed, "rewriter failed on " + candidate.script.id + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::RefactorFailed, "rewriter failed on " + candidate.script.id + ": " + e.what());
  }
  if (out.find_first_not_of(" \t\r\n") == std::string::npos) {
    throw Error(ErrorKind::RefactorFailed, "rewriter returned an empty body for " + candidate.script.id);
  }
  try {
    tokenize(out, LexOptions{true});
  } catch (const LexError& e) {
    throw Error(ErrorKind::RefactorFailed, "rewritten body does not lex: " + std::string(e.what()));
  }
  return out;
}

}  // namespace pws
