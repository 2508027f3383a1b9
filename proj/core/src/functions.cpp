#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "pws/error.hpp"
#include "pws/source_model.hpp"

namespace pws {
namespace {

enum class BlockKind { Def, Class, Other };

struct OpenBlock {
  BlockKind kind;
  bool listed = false;          // a top-level or method def we report
  FunctionSpan span;
  std::size_t last_newline = 0;  // token index of the last logical newline inside
};

bool is_line_break(const Token& tok) {
  return tok.kind == TokenKind::Newline || tok.kind == TokenKind::Indent ||
         tok.kind == TokenKind::Dedent;
}

std::size_t token_end(const Token& tok) { return tok.offset + tok.lexeme.size(); }

// Byte offset where the physical line containing `offset` starts.
std::size_t line_start(std::string_view text, std::size_t offset) {
  while (offset > 0 && text[offset - 1] != '\n') --offset;
  return offset;
}

// Classification of each line of a completion fragment, computed with a small
// quote/bracket scanner so badly indented fragments are still handled.
enum class LineClass { Blank, Statement, Continuation, InString, Comment };

struct FragmentLine {
  std::size_t begin;
  std::size_t end;  // past the terminator
  LineClass cls;
};

std::vector<FragmentLine> classify_lines(std::string_view text) {
  std::vector<FragmentLine> lines;
  std::size_t i = 0;
  int depth = 0;
  char quote = 0;
  bool triple = false;
  bool continued = false;  // previous line ended with a backslash
  while (i < text.size()) {
    std::size_t begin = i;
    LineClass cls;
    if (quote != 0) {
      cls = LineClass::InString;
    } else if (depth > 0 || continued) {
      cls = LineClass::Continuation;
    } else {
      std::size_t j = i;
      while (j < text.size() && (text[j] == ' ' || text[j] == '\t')) ++j;
      if (j >= text.size() || text[j] == '\n' || text[j] == '\r') {
        cls = LineClass::Blank;
      } else if (text[j] == '#') {
        cls = LineClass::Comment;
      } else {
        cls = LineClass::Statement;
      }
    }
    continued = false;
    while (i < text.size() && text[i] != '\n') {
      char c = text[i];
      if (quote != 0) {
        if (c == '\\') {
          i += 2;
          continue;
        }
        if (c == quote) {
          if (!triple) {
            quote = 0;
          } else if (i + 2 < text.size() && text[i + 1] == quote && text[i + 2] == quote) {
            quote = 0;
            i += 3;
            continue;
          }
        }
        ++i;
        continue;
      }
      if (c == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
        break;
      }
      if (c == '\'' || c == '"') {
        quote = c;
        triple = i + 2 < text.size() && text[i + 1] == c && text[i + 2] == c;
        i += triple ? 3 : 1;
        continue;
      }
      if (c == '(' || c == '[' || c == '{') ++depth;
      if ((c == ')' || c == ']' || c == '}') && depth > 0) --depth;
      if (c == '\\' && i + 1 < text.size() && (text[i + 1] == '\n' || text[i + 1] == '\r')) {
        continued = true;
      }
      ++i;
    }
    if (i < text.size()) ++i;  // the '\n'
    if (quote != 0 && !triple) quote = 0;
    lines.push_back({begin, i, cls});
  }
  return lines;
}

std::string leading_ws(std::string_view line) {
  std::size_t j = 0;
  while (j < line.size() && (line[j] == ' ' || line[j] == '\t')) ++j;
  return std::string(line.substr(0, j));
}

}  // namespace

std::vector<FunctionSpan> extract_functions(const TokenStream& stream) {
  const auto& toks = stream.tokens;
  std::vector<FunctionSpan> spans;
  std::vector<OpenBlock> blocks;

  // Header of the most recent compound statement awaiting its indented body.
  struct PendingHeader {
    BlockKind kind;
    bool listed;
    FunctionSpan span;
  };
  std::optional<PendingHeader> pending;
  std::size_t decorator_begin = std::string::npos;

  std::size_t i = 0;
  while (i < toks.size()) {
    const Token& tok = toks[i];
    if (tok.kind == TokenKind::Indent) {
      if (pending) {
        OpenBlock block{pending->kind, pending->listed, pending->span, 0};
        blocks.push_back(std::move(block));
        pending.reset();
      } else {
        blocks.push_back(OpenBlock{BlockKind::Other, false, {}, 0});
      }
      ++i;
      continue;
    }
    if (tok.kind == TokenKind::Dedent) {
      if (!blocks.empty()) {
        OpenBlock done = std::move(blocks.back());
        blocks.pop_back();
        if (done.listed && done.last_newline > 0) {
          const Token& nl = toks[done.last_newline];
          done.span.bytes.end = token_end(nl);
          done.span.body_tokens.end = done.last_newline + 1;
          spans.push_back(std::move(done.span));
        }
        if (!blocks.empty() && done.last_newline > blocks.back().last_newline) {
          blocks.back().last_newline = done.last_newline;
        }
      }
      ++i;
      continue;
    }
    if (tok.kind == TokenKind::Comment || tok.kind == TokenKind::Newline) {
      ++i;
      continue;
    }

    // Start of a logical line: find its end.
    std::size_t line_begin = i;
    std::size_t line_end = i;
    while (line_end < toks.size() && !(toks[line_end].kind == TokenKind::Newline && toks[line_end].logical)) {
      ++line_end;
    }
    if (line_end >= toks.size()) line_end = toks.size() - 1;
    for (auto& b : blocks) b.last_newline = line_end;
    pending.reset();

    const Token& first = toks[line_begin];
    if (first.lexeme == "@" && first.kind == TokenKind::Operator) {
      if (decorator_begin == std::string::npos) decorator_begin = first.offset;
      i = line_end + 1;
      continue;
    }

    std::size_t kw = line_begin;
    if (first.kind == TokenKind::Keyword && first.lexeme == "async" && kw + 1 < line_end &&
        toks[kw + 1].lexeme == "def") {
      ++kw;
    }
    bool is_def = toks[kw].kind == TokenKind::Keyword && toks[kw].lexeme == "def";
    bool is_class = first.kind == TokenKind::Keyword && first.lexeme == "class";

    // Last significant token of the line decides whether a block follows.
    std::size_t last = line_end;
    while (last > line_begin && (is_line_break(toks[last]) || toks[last].kind == TokenKind::Comment)) --last;

    // Colon that ends the header at bracket depth zero.
    std::size_t colon = line_end;
    if (is_def || is_class || toks[last].lexeme == ":") {
      int depth = 0;
      for (std::size_t j = line_begin; j <= last; ++j) {
        const std::string& lx = toks[j].lexeme;
        if (toks[j].kind == TokenKind::Delimiter) {
          if (lx == "(" || lx == "[" || lx == "{") ++depth;
          else if (lx == ")" || lx == "]" || lx == "}") --depth;
          else if (lx == ":" && depth == 0) {
            colon = j;
            break;
          }
        }
        if (depth == 0 && toks[j].kind == TokenKind::Keyword && toks[j].lexeme == "lambda") break;
      }
    }

    bool in_class_scope = std::all_of(blocks.begin(), blocks.end(),
                                      [](const OpenBlock& b) { return b.kind == BlockKind::Class; });
    BlockKind kind = is_def ? BlockKind::Def : (is_class ? BlockKind::Class : BlockKind::Other);

    if (colon < line_end) {
      FunctionSpan span;
      bool listed = is_def && in_class_scope && kw + 1 < toks.size() &&
                    toks[kw + 1].kind == TokenKind::Identifier;
      if (listed) {
        span.name = toks[kw + 1].lexeme;
        span.def_token = line_begin;
        span.bytes.begin = first.offset;
        if (decorator_begin != std::string::npos) {
          span.decorators = ByteRange{decorator_begin, first.offset};
        }
      }
      bool single_line = colon < last;
      if (single_line) {
        if (listed) {
          span.body_tokens = ByteRange{colon + 1, line_end};
          span.bytes.end = token_end(toks[line_end]);
          spans.push_back(std::move(span));
        }
      } else {
        if (listed) span.body_tokens.begin = line_end + 1;
        pending = PendingHeader{kind, listed, std::move(span)};
      }
    }
    decorator_begin = std::string::npos;
    i = line_end + 1;
  }

  std::sort(spans.begin(), spans.end(),
            [](const FunctionSpan& a, const FunctionSpan& b) { return a.bytes.begin < b.bytes.begin; });
  if (!spans.empty()) {
    std::string text = detokenize(stream);
    for (auto& span : spans) {
      span.line = line_col(text, span.bytes.begin).line;
      span.end_line = line_col(text, span.bytes.end > span.bytes.begin ? span.bytes.end - 1 : span.bytes.begin).line;
    }
  }
  return spans;
}

std::vector<std::string> function_parameters(const TokenStream& stream, const FunctionSpan& span) {
  const auto& toks = stream.tokens;
  std::vector<std::string> params;
  std::size_t i = span.def_token;
  while (i < toks.size() && toks[i].lexeme != "(") ++i;
  if (i >= toks.size()) return params;
  int depth = 0;
  bool expect_name = true;
  for (; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind == TokenKind::Delimiter && (t.lexeme == "(" || t.lexeme == "[" || t.lexeme == "{")) {
      ++depth;
      continue;
    }
    if (t.kind == TokenKind::Delimiter && (t.lexeme == ")" || t.lexeme == "]" || t.lexeme == "}")) {
      if (--depth == 0) break;
      continue;
    }
    if (depth != 1) continue;
    if (t.lexeme == ",") {
      expect_name = true;
      continue;
    }
    if (expect_name && t.kind == TokenKind::Identifier) {
      params.push_back(t.lexeme);
      expect_name = false;
    } else if (t.lexeme != "*" && t.lexeme != "**") {
      expect_name = false;
    }
  }
  return params;
}

CompletionSplit split_completion(const SourceScript& script, const FunctionSpan& target) {
  TokenStream stream = tokenize(script.text);
  auto spans = extract_functions(stream);
  if (std::find(spans.begin(), spans.end(), target) == spans.end()) {
    throw Error(ErrorKind::SpanMismatch,
                "function span '" + target.name + "' does not belong to script '" + script.id + "'");
  }
  const auto& toks = stream.tokens;
  const std::string& text = script.text;
  CompletionSplit out;

  std::size_t body_begin_tok = target.body_tokens.begin;
  const Token& before_body = toks[body_begin_tok - 1];
  bool block_body = before_body.kind == TokenKind::Newline;

  if (block_body) {
    std::size_t body_start = token_end(before_body);
    std::string terminator = before_body.lexeme.empty() ? "\n" : before_body.lexeme;
    // Indentation of the first real body token.
    std::string indent;
    for (std::size_t j = body_begin_tok; j < target.body_tokens.end; ++j) {
      const Token& t = toks[j];
      if (t.kind == TokenKind::Indent || t.kind == TokenKind::Comment ||
          (t.kind == TokenKind::Newline && !t.logical)) {
        continue;
      }
      std::size_t ls = line_start(text, t.offset);
      indent = text.substr(ls, t.offset - ls);
      break;
    }
    out.completion = text.substr(body_start, target.bytes.end - body_start);
    out.placeholder_position = body_start;
    out.prompt_context = text.substr(0, body_start) + indent + std::string(kPlaceholder) + terminator +
                         text.substr(target.bytes.end);
  } else {
    // `def f(): stmt` on one line: the body moves to its own line.
    const Token& colon = toks[body_begin_tok - 1];
    const Token& nl = toks[target.body_tokens.end];
    std::size_t ls = line_start(text, target.bytes.begin);
    std::string def_indent = text.substr(ls, target.bytes.begin - ls);
    std::string indent = def_indent + "    ";
    std::string terminator = nl.lexeme.empty() ? "\n" : nl.lexeme;
    std::size_t body_begin = token_end(colon);
    std::string body = text.substr(body_begin, nl.offset - body_begin);
    std::size_t lead = body.find_first_not_of(" \t");
    body = lead == std::string::npos ? std::string() : body.substr(lead);
    out.completion = indent + body + terminator;
    out.placeholder_position = token_end(colon) + terminator.size();
    out.prompt_context = text.substr(0, token_end(colon)) + terminator + indent +
                         std::string(kPlaceholder) + terminator + text.substr(target.bytes.end);
  }
  return out;
}

std::optional<PlaceholderLine> find_placeholder(std::string_view prompt) {
  std::optional<PlaceholderLine> found;
  std::size_t i = 0;
  while (i < prompt.size()) {
    std::size_t nl = prompt.find('\n', i);
    std::size_t end = nl == std::string_view::npos ? prompt.size() : nl + 1;
    std::string_view line = prompt.substr(i, (nl == std::string_view::npos ? prompt.size() : nl) - i);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.remove_suffix(1);
    }
    std::string ws = leading_ws(line);
    if (line.substr(ws.size()) == kPlaceholder) {
      if (found) throw Error(ErrorKind::MultiplePlaceholders, "prompt contains more than one placeholder line");
      found = PlaceholderLine{i, end, ws};
    }
    i = end;
  }
  return found;
}

SourceScript merge_completion(std::string_view prompt, std::string_view completion, std::string id) {
  auto placeholder = find_placeholder(prompt);
  if (!placeholder) throw Error(ErrorKind::NoPlaceholder, "prompt contains no placeholder line");

  auto lines = classify_lines(completion);
  std::size_t min_indent = std::string::npos;
  for (const auto& line : lines) {
    if (line.cls != LineClass::Statement) continue;
    min_indent = std::min(min_indent, leading_ws(completion.substr(line.begin, line.end - line.begin)).size());
  }
  if (min_indent == std::string::npos) min_indent = 0;

  std::string body;
  for (const auto& line : lines) {
    std::string_view text = completion.substr(line.begin, line.end - line.begin);
    bool reindent = line.cls == LineClass::Statement || line.cls == LineClass::Comment ||
                    line.cls == LineClass::Continuation;
    if (reindent && leading_ws(text).size() >= min_indent) {
      body += placeholder->indent;
      body += text.substr(min_indent);
    } else {
      body += text;
    }
  }
  std::string_view rest = prompt.substr(placeholder->end);
  if (!body.empty() && body.back() != '\n' && !rest.empty()) body += '\n';

  SourceScript merged;
  merged.id = std::move(id);
  merged.origin = Origin::Generated;
  merged.text.reserve(prompt.size() + body.size());
  merged.text.append(prompt.substr(0, placeholder->begin));
  merged.text.append(body);
  merged.text.append(rest);
  return merged;
}

}  // namespace pws
