#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "pws/error.hpp"
#include "pws/style.hpp"

namespace pws {
namespace {

bool is_open(const Token& t) {
  return t.kind == TokenKind::Delimiter && (t.lexeme == "(" || t.lexeme == "[" || t.lexeme == "{");
}
bool is_close(const Token& t) {
  return t.kind == TokenKind::Delimiter && (t.lexeme == ")" || t.lexeme == "]" || t.lexeme == "}");
}
bool is_delim(const Token& t, std::string_view s) {
  return t.kind == TokenKind::Delimiter && t.lexeme == s;
}
bool is_op(const Token& t, std::string_view s) { return t.kind == TokenKind::Operator && t.lexeme == s; }
bool is_kw(const Token& t, std::string_view s) { return t.kind == TokenKind::Keyword && t.lexeme == s; }

bool is_value_keyword(const Token& t) {
  return t.kind == TokenKind::Keyword &&
         (t.lexeme == "True" || t.lexeme == "False" || t.lexeme == "None");
}

// Token that can end an operand.
bool is_atom_end(const Token& t) {
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::Number ||
         t.kind == TokenKind::String || is_value_keyword(t) || is_close(t) || is_delim(t, "...");
}

bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}

constexpr std::array<std::string_view, 25> kMultiOps = {
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=",
    "==",  "!=",  "+=",  "-=",  "*=",  "/=", "%=", "&=", "|=", "^=", "@=", "<>"};

// Would printing `a` directly followed by `b` re-lex differently?
bool would_merge(const Token& a, const Token& b) {
  if (a.lexeme.empty() || b.lexeme.empty()) return false;
  if (word_char(a.lexeme.back()) && (word_char(b.lexeme.front()) || b.kind == TokenKind::String)) {
    return true;
  }
  if (a.kind == TokenKind::Number && b.lexeme.front() == '.') return true;
  bool a_sym = a.kind == TokenKind::Operator || a.kind == TokenKind::Delimiter;
  bool b_sym = b.kind == TokenKind::Operator || b.kind == TokenKind::Delimiter;
  if (a_sym && b_sym) {
    std::string joined = a.lexeme + b.lexeme;
    for (std::string_view op : kMultiOps) {
      if (op.size() > a.lexeme.size() && joined.compare(0, op.size(), op) == 0) return true;
    }
  }
  if (a.lexeme.back() == '.' && b.kind == TokenKind::Number) return true;
  return false;
}

enum class Role { Plain, Unary, Tight, AlwaysSpaced, Binary, SliceColon, Decorator };

struct LineLayout {
  std::vector<Token> toks;
  std::vector<std::string> space;  // spacing before each token when flat
  std::vector<std::size_t> match;  // matching bracket index, or npos
};

bool unary_candidate(const Token& t) {
  return t.kind == TokenKind::Operator &&
         (t.lexeme == "-" || t.lexeme == "+" || t.lexeme == "~" || t.lexeme == "*" || t.lexeme == "**");
}

void compute_layout(LineLayout& L, const StyleProfile& p) {
  const auto& t = L.toks;
  const std::size_t n = t.size();
  std::vector<Role> role(n, Role::Plain);
  L.match.assign(n, std::string::npos);

  struct Frame {
    char bracket;
    std::size_t open;
    int lambdas;
  };
  std::vector<Frame> stack{{'\0', std::string::npos, 0}};
  for (std::size_t i = 0; i < n; ++i) {
    const Token& tok = t[i];
    Frame& top = stack.back();
    if (is_kw(tok, "lambda")) {
      ++top.lambdas;
    } else if (is_open(tok)) {
      stack.push_back({tok.lexeme[0], i, 0});
    } else if (is_close(tok)) {
      if (stack.size() > 1) {
        L.match[stack.back().open] = i;
        L.match[i] = stack.back().open;
        stack.pop_back();
      }
    } else if (is_delim(tok, ":")) {
      if (top.lambdas > 0) {
        --top.lambdas;
      } else if (top.bracket == '[') {
        role[i] = Role::SliceColon;
      }
    } else if (tok.kind == TokenKind::Operator) {
      if (tok.lexeme == "=" && (top.bracket == '(' || top.lambdas > 0)) {
        role[i] = Role::Tight;
      } else if (tok.lexeme == "->" || tok.lexeme == ":=") {
        role[i] = Role::AlwaysSpaced;
      } else if (tok.lexeme == "@" && i == 0) {
        role[i] = Role::Decorator;
      } else if (tok.lexeme == "~" || (unary_candidate(tok) && (i == 0 || !is_atom_end(t[i - 1])))) {
        role[i] = Role::Unary;
      } else if (top.lambdas > 0 && (tok.lexeme == "*" || tok.lexeme == "**")) {
        role[i] = Role::Unary;
      } else {
        role[i] = Role::Binary;
      }
    }
  }

  const std::string pad = p.space_inside_brackets ? " " : "";
  const std::string binsp = p.space_around_binary_ops ? " " : "";
  auto op_space = [&](Role r) -> std::string {
    switch (r) {
      case Role::Tight: return "";
      case Role::AlwaysSpaced: return " ";
      case Role::Binary: return binsp;
      default: return "";
    }
  };

  L.space.assign(n, "");
  for (std::size_t i = 1; i < n; ++i) {
    const Token& a = t[i - 1];
    const Token& b = t[i];
    std::string s;
    if (b.kind == TokenKind::Comment) {
      L.space[i] = "  ";
      continue;
    }
    if (is_open(a)) {
      s = is_close(b) ? "" : pad;
    } else if (is_close(b)) {
      s = pad;
    } else if (is_delim(b, ",") || is_delim(b, ";")) {
      s = "";
    } else if (is_delim(a, ",") || is_delim(a, ";")) {
      s = " ";
    } else if (is_delim(b, ":")) {
      s = "";
    } else if (is_delim(a, ":")) {
      s = role[i - 1] == Role::SliceColon ? "" : " ";
    } else if (is_delim(b, ".")) {
      s = (a.kind == TokenKind::Keyword && !is_value_keyword(a)) ? " " : "";
    } else if (is_delim(a, ".")) {
      s = is_kw(b, "import") ? " " : "";
    } else if (is_open(b) && is_atom_end(a)) {
      s = "";
    } else if (role[i - 1] == Role::Decorator) {
      s = "";
    } else if (b.kind == TokenKind::Operator && role[i] != Role::Unary) {
      s = op_space(role[i]);
    } else if (a.kind == TokenKind::Operator) {
      s = role[i - 1] == Role::Unary ? "" : op_space(role[i - 1]);
    } else if (a.kind == TokenKind::Keyword || b.kind == TokenKind::Keyword) {
      s = " ";
    } else if (a.kind == TokenKind::Comment) {
      s = " ";
    } else {
      bool aw = a.kind == TokenKind::Identifier || a.kind == TokenKind::Number ||
                a.kind == TokenKind::String || is_close(a) || is_delim(a, "...");
      bool bw = b.kind == TokenKind::Identifier || b.kind == TokenKind::Number ||
                b.kind == TokenKind::String || is_delim(b, "...");
      s = (aw && bw) ? " " : "";
    }
    if (s.empty() && would_merge(a, b)) s = " ";
    L.space[i] = s;
  }
}

std::size_t display_width(std::string_view s) {
  std::size_t w = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++w;
  }
  return w;
}

// Widest physical line of `indent + text`; strings may span lines.
std::size_t line_width(std::size_t indent, std::string_view text) {
  std::size_t best = 0;
  std::size_t start = 0;
  bool first = true;
  while (true) {
    std::size_t nl = text.find('\n', start);
    std::string_view piece = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    best = std::max(best, display_width(piece) + (first ? indent : 0));
    if (nl == std::string_view::npos) break;
    first = false;
    start = nl + 1;
  }
  return best;
}

class Splitter {
 public:
  Splitter(const LineLayout& layout, const StyleProfile& profile) : L_(layout), p_(profile) {}

  std::vector<std::string> split(std::size_t lo, std::size_t hi, std::size_t indent) const {
    std::vector<std::string> out;
    run(lo, hi, indent, out);
    return out;
  }

 private:
  std::string render(std::size_t lo, std::size_t hi) const {
    std::string s;
    for (std::size_t i = lo; i < hi; ++i) {
      if (i > lo) s += L_.space[i];
      s += L_.toks[i].lexeme;
    }
    return s;
  }

  bool interior_comment(std::size_t lo, std::size_t hi) const {
    for (std::size_t i = lo; i + 1 < hi; ++i) {
      if (L_.toks[i].kind == TokenKind::Comment) return true;
    }
    return false;
  }

  bool any_comment(std::size_t lo, std::size_t hi) const {
    for (std::size_t i = lo; i < hi; ++i) {
      if (L_.toks[i].kind == TokenKind::Comment) return true;
    }
    return false;
  }

  void emit(std::size_t lo, std::size_t hi, std::size_t indent, std::vector<std::string>& out) const {
    out.push_back(std::string(indent, ' ') + render(lo, hi));
  }

  bool fits(std::size_t lo, std::size_t hi, std::size_t indent) const {
    return line_width(indent, render(lo, hi)) <= static_cast<std::size_t>(p_.max_line_length);
  }

  // Nothing to split on: only break where a comment forces it.
  void break_after_comments(std::size_t lo, std::size_t hi, std::size_t indent,
                            std::vector<std::string>& out) const {
    std::size_t start = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (L_.toks[i].kind == TokenKind::Comment && i + 1 < hi) {
        emit(start, i + 1, indent, out);
        start = i + 1;
      }
    }
    if (start < hi) emit(start, hi, indent, out);
  }

  void run(std::size_t lo, std::size_t hi, std::size_t indent, std::vector<std::string>& out) const {
    if (lo >= hi) return;
    if (!interior_comment(lo, hi) && fits(lo, hi, indent)) {
      emit(lo, hi, indent, out);
      return;
    }
    // Split at the depth-0 bracket pair with the largest body.
    std::size_t open = std::string::npos;
    std::size_t best_body = 0;
    int depth = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const Token& tok = L_.toks[i];
      if (is_open(tok)) {
        std::size_t m = L_.match[i];
        if (depth == 0 && m != std::string::npos && m < hi && m > i + 1 && m - i - 1 > best_body) {
          open = i;
          best_body = m - i - 1;
        }
        ++depth;
      } else if (is_close(tok)) {
        depth = std::max(0, depth - 1);
      }
    }
    if (open == std::string::npos || any_comment(lo, open)) {
      break_after_comments(lo, hi, indent, out);
      return;
    }
    const std::size_t close = L_.match[open];
    const std::size_t inner = indent + static_cast<std::size_t>(p_.continuation_indent);
    emit(lo, open + 1, indent, out);
    split_body(open + 1, close, inner, out);
    run(close, hi, indent, out);
  }

  void split_body(std::size_t lo, std::size_t hi, std::size_t indent, std::vector<std::string>& out) const {
    if (!any_comment(lo, hi) && fits(lo, hi, indent)) {
      emit(lo, hi, indent, out);
      return;
    }
    std::vector<std::pair<std::size_t, std::size_t>> elems;
    std::size_t start = lo;
    int depth = 0;
    bool comma = false;
    auto flush_leading_comments = [&] {
      while (start < hi && L_.toks[start].kind == TokenKind::Comment) {
        elems.emplace_back(start, start + 1);
        ++start;
      }
    };
    flush_leading_comments();
    for (std::size_t i = start; i < hi; ++i) {
      const Token& tok = L_.toks[i];
      if (is_open(tok)) ++depth;
      else if (is_close(tok)) depth = std::max(0, depth - 1);
      else if (depth == 0 && is_delim(tok, ",")) {
        comma = true;
        std::size_t end = i + 1;
        if (end < hi && L_.toks[end].kind == TokenKind::Comment) ++end;
        elems.emplace_back(start, end);
        start = end;
        flush_leading_comments();
        i = start == 0 ? 0 : start - 1;
        if (start >= hi) break;
      }
    }
    if (start < hi) elems.emplace_back(start, hi);

    if (!comma) {
      std::vector<std::pair<std::size_t, std::size_t>> pieces;
      for (auto [a, b] : elems) {
        if (L_.toks[a].kind == TokenKind::Comment && b == a + 1) {
          pieces.emplace_back(a, b);
          continue;
        }
        split_logical(a, b, pieces);
      }
      elems = std::move(pieces);
    }
    for (auto [a, b] : elems) run(a, b, indent, out);
  }

  void split_logical(std::size_t lo, std::size_t hi,
                     std::vector<std::pair<std::size_t, std::size_t>>& pieces) const {
    std::size_t start = lo;
    int depth = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const Token& tok = L_.toks[i];
      if (is_open(tok)) ++depth;
      else if (is_close(tok)) depth = std::max(0, depth - 1);
      else if (depth == 0 && (is_kw(tok, "and") || is_kw(tok, "or")) && i > lo) {
        std::size_t cut = p_.split_before_logical_operator ? i : i + 1;
        if (!p_.split_before_logical_operator && cut < hi && L_.toks[cut].kind == TokenKind::Comment) ++cut;
        if (cut > start && cut < hi) {
          pieces.emplace_back(start, cut);
          start = cut;
        }
      }
    }
    if (start < hi) pieces.emplace_back(start, hi);
  }

  const LineLayout& L_;
  const StyleProfile& p_;
};

enum class HeaderKind { None, Def, Class, Other };

struct Unit {
  bool comment = false;
  int depth = 0;
  int blanks = 0;
  std::vector<Token> toks;
  bool header = false;
  HeaderKind kind = HeaderKind::None;
  bool decorator = false;
  bool def_start = false;
};

int count_newlines(std::string_view s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

std::size_t column_of(std::string_view prefix) {
  std::size_t nl = prefix.rfind('\n');
  std::string_view tail = nl == std::string_view::npos ? prefix : prefix.substr(nl + 1);
  std::size_t col = 0;
  for (char c : tail) {
    if (c == '\t') col = (col / 8 + 1) * 8;
    else if (c == ' ' || c == '\f') ++col;
    else col = 0;  // backslash continuation residue
  }
  return col;
}

void classify(Unit& u) {
  if (u.comment || u.toks.empty()) return;
  const Token& first = u.toks.front();
  u.decorator = is_op(first, "@");
  bool is_def = is_kw(first, "def") || (is_kw(first, "async") && u.toks.size() > 1 && is_kw(u.toks[1], "def"));
  bool is_class = is_kw(first, "class");
  u.def_start = u.decorator || is_def || is_class;
  std::size_t last = u.toks.size();
  while (last > 0 && u.toks[last - 1].kind == TokenKind::Comment) --last;
  if (last > 0 && is_delim(u.toks[last - 1], ":")) {
    u.header = true;
    u.kind = is_def ? HeaderKind::Def : is_class ? HeaderKind::Class : HeaderKind::Other;
  }
}

std::vector<Unit> build_units(const TokenStream& stream) {
  std::vector<Unit> units;
  int depth = 0;
  std::vector<std::size_t> cols{0};
  bool push_col = false;
  bool at_line_start = true;
  bool pending_block = false;
  Unit* cur = nullptr;
  Unit current;
  bool have_current = false;

  for (const Token& tok : stream.tokens) {
    switch (tok.kind) {
      case TokenKind::Indent:
        ++depth;
        push_col = true;
        continue;
      case TokenKind::Dedent:
        --depth;
        if (cols.size() > 1) cols.pop_back();
        continue;
      case TokenKind::Newline:
        if (have_current && tok.logical) {
          classify(current);
          pending_block = current.header;
          units.push_back(std::move(current));
          current = Unit{};
          have_current = false;
        }
        at_line_start = true;
        continue;
      default:
        break;
    }
    if (at_line_start && tok.kind == TokenKind::Comment && !have_current) {
      Unit u;
      u.comment = true;
      u.blanks = count_newlines(tok.prefix);
      std::size_t col = column_of(tok.prefix);
      if (pending_block && col > cols.back()) {
        u.depth = depth + 1;
      } else {
        int d = 0;
        for (std::size_t k = 0; k < cols.size(); ++k) {
          if (cols[k] <= col) d = static_cast<int>(k);
        }
        u.depth = d;
      }
      u.toks.push_back(tok);
      units.push_back(std::move(u));
      at_line_start = true;
      continue;
    }
    if (!have_current) {
      if (push_col) {
        cols.push_back(column_of(tok.prefix));
        push_col = false;
      }
      current = Unit{};
      current.depth = depth;
      current.blanks = count_newlines(tok.prefix);
      have_current = true;
      pending_block = false;
    }
    current.toks.push_back(tok);
    at_line_start = false;
  }
  (void)cur;
  if (have_current) {
    classify(current);
    units.push_back(std::move(current));
  }
  return units;
}

}  // namespace

std::string normalize_quotes(std::string_view lexeme, QuoteStyle style) {
  if (style == QuoteStyle::Preserve) return std::string(lexeme);
  std::size_t q = 0;
  while (q < lexeme.size() && lexeme[q] != '\'' && lexeme[q] != '"') ++q;
  if (q >= lexeme.size() || lexeme.size() < q + 2) return std::string(lexeme);
  char quote = lexeme[q];
  if (lexeme.size() >= q + 6 && lexeme[q + 1] == quote && lexeme[q + 2] == quote) {
    return std::string(lexeme);  // triple-quoted
  }
  char target = style == QuoteStyle::Double ? '"' : '\'';
  if (quote == target || lexeme.back() != quote) return std::string(lexeme);
  std::string_view body = lexeme.substr(q + 1, lexeme.size() - q - 2);
  if (body.find('\'') != std::string_view::npos || body.find('"') != std::string_view::npos) {
    return std::string(lexeme);
  }
  std::string out(lexeme.substr(0, q));
  out += target;
  out += body;
  out += target;
  return out;
}

std::string format_text(std::string_view text, const StyleProfile& profile) {
  validate(profile);
  TokenStream stream = tokenize(text);
  std::vector<Unit> units = build_units(stream);

  const int N = profile.blank_lines_between_defs;
  auto required = [&](int depth) { return depth == 0 ? N : std::min(N, 1); };

  std::vector<std::pair<int, HeaderKind>> blocks;
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    Unit& u = units[i];
    bool closed_def = false;
    while (!blocks.empty() && blocks.back().first >= u.depth) {
      if (blocks.back().first == u.depth &&
          (blocks.back().second == HeaderKind::Def || blocks.back().second == HeaderKind::Class)) {
        closed_def = true;
      }
      blocks.pop_back();
    }
    int blanks = 0;
    if (i > 0) {
      const Unit& prev = units[i - 1];
      if (!prev.comment && prev.header && u.depth > prev.depth) {
        blanks = 0;
      } else if (!prev.comment && prev.decorator && prev.depth == u.depth) {
        blanks = 0;
      } else if (u.def_start) {
        blanks = (prev.comment && prev.depth == u.depth && u.blanks == 0) ? 0 : required(u.depth);
      } else if (closed_def) {
        blanks = required(u.depth);
      } else {
        blanks = std::min(u.blanks, 1);
      }
    }
    out.append(static_cast<std::size_t>(blanks), '\n');

    const std::size_t indent = static_cast<std::size_t>(u.depth * profile.indent_width);
    if (u.comment) {
      out += std::string(indent, ' ') + u.toks.front().lexeme + "\n";
      continue;
    }
    LineLayout layout;
    layout.toks = u.toks;
    for (Token& t : layout.toks) {
      if (t.kind == TokenKind::String) t.lexeme = normalize_quotes(t.lexeme, profile.quote_style);
    }
    compute_layout(layout, profile);
    Splitter splitter(layout, profile);
    for (const std::string& line : splitter.split(0, layout.toks.size(), indent)) {
      out += line;
      out += "\n";
    }
    if (u.header) blocks.emplace_back(u.depth, u.kind);
  }
  return out;
}

SourceScript format(const SourceScript& script, const StyleProfile& profile) {
  SourceScript out = script;
  out.text = format_text(script.text, profile);
  return out;
}

}  // namespace pws
