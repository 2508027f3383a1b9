#include <algorithm>
#include <array>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "pws/error.hpp"
#include "pws/source_model.hpp"

namespace pws {
namespace {

constexpr std::array<std::string_view, 35> kKeywords = {
    "False", "None",   "True",    "and",      "as",       "assert", "async",
    "await", "break",  "class",   "continue", "def",      "del",    "elif",
    "else",  "except", "finally", "for",      "from",     "global", "if",
    "import", "in",    "is",      "lambda",   "nonlocal", "not",    "or",
    "pass",  "raise",  "return",  "try",      "while",    "with",   "yield"};

// Longest match first.
constexpr std::array<std::string_view, 24> kOperators = {
    "**=", "//=", ">>=", "<<=", "->", ":=", "**", "//", "<<", ">>", "<=", ">=",
    "==",  "!=",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "@=", "~"};

constexpr std::string_view kSingleOperators = "+-*/%@&|^<>=";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool is_ident_char(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_string_prefix(std::string_view word) {
  if (word.size() > 2) return false;
  std::string lower;
  for (char c : word) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower == "r" || lower == "u" || lower == "b" || lower == "f" || lower == "br" ||
         lower == "rb" || lower == "fr" || lower == "rf";
}

void validate_utf8(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    std::size_t extra = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      throw LexError(i, "invalid UTF-8 lead byte");
    }
    if (i + extra >= text.size()) {
      throw LexError(i, "truncated UTF-8 sequence");
    }
    for (std::size_t k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(text[i + k]) & 0xC0) != 0x80) {
        throw LexError(i, "invalid UTF-8 continuation byte");
      }
    }
    i += extra + 1;
  }
}

class Lexer {
 public:
  Lexer(std::string_view text, LexOptions options) : text_(text), options_(options) {}

  TokenStream run() {
    validate_utf8(text_);
    bool first_line = true;
    while (pos_ < text_.size()) {
      if (at_line_start_ && brackets_.empty()) {
        if (!lex_line_start(first_line)) continue;
        first_line = false;
      }
      lex_in_line();
    }
    finish();
    return std::move(out_);
  }

 private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  // Length of the line terminator at pos_, 0 if none.
  std::size_t eol_length() const {
    if (peek() == '\n') return 1;
    if (peek() == '\r' && peek(1) == '\n') return 2;
    return 0;
  }

  void emit(TokenKind kind, std::size_t begin, std::size_t end, bool logical = true) {
    Token tok{kind, std::string(text_.substr(begin, end - begin)), begin, std::move(prefix_), logical};
    prefix_.clear();
    out_.tokens.push_back(std::move(tok));
  }

  void emit_empty(TokenKind kind) {
    out_.tokens.push_back(Token{kind, std::string(), pos_, std::string(), true});
  }

  // Handles indentation at the start of a physical line that begins a new
  // logical line. Returns false when the line was blank or comment-only and
  // has been fully consumed.
  bool lex_line_start(bool first_line) {
    std::size_t column = 0;
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ') {
        ++column;
      } else if (c == '\t') {
        column = (column / 8 + 1) * 8;
      } else if (c == '\f') {
        column = 0;
      } else {
        break;
      }
      ++pos_;
    }
    prefix_.append(text_.substr(start, pos_ - start));

    if (pos_ >= text_.size()) return false;
    if (std::size_t eol = eol_length(); eol > 0) {
      prefix_.append(text_.substr(pos_, eol));
      pos_ += eol;
      return false;
    }
    if (peek() == '\r') throw LexError(pos_, "bare carriage return");
    if (peek() == '#') {
      lex_comment();
      if (std::size_t eol = eol_length(); eol > 0) {
        std::size_t begin = pos_;
        pos_ += eol;
        emit(TokenKind::Newline, begin, pos_, /*logical=*/false);
      }
      return false;
    }
    if (peek() == '\\') {
      // Backslash continuation before any token; keep scanning.
      ++pos_;
      std::size_t eol = eol_length();
      if (eol == 0) throw LexError(pos_ - 1, "unexpected character after line continuation");
      prefix_.append(text_.substr(pos_ - 1, eol + 1));
      pos_ += eol;
      return false;
    }

    if (first_line && options_.fragment) {
      indents_ = {column};
    } else if (column > indents_.back()) {
      emit_empty(TokenKind::Indent);
      indents_.push_back(column);
    } else if (column < indents_.back()) {
      while (column < indents_.back()) {
        indents_.pop_back();
        emit_empty(TokenKind::Dedent);
        if (indents_.empty()) throw LexError(pos_, "unindent below the base level");
      }
      if (column != indents_.back()) {
        throw LexError(pos_, "unindent does not match any outer indentation level");
      }
    }
    at_line_start_ = false;
    return true;
  }

  void lex_comment() {
    std::size_t begin = pos_;
    while (pos_ < text_.size() && peek() != '\n' && !(peek() == '\r' && peek(1) == '\n')) ++pos_;
    std::size_t end = pos_;
    while (end > begin && (text_[end - 1] == ' ' || text_[end - 1] == '\t' || text_[end - 1] == '\r')) {
      --end;
    }
    emit(TokenKind::Comment, begin, end);
    prefix_.append(text_.substr(end, pos_ - end));
  }

  void lex_in_line() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\f') {
        prefix_.push_back(c);
        ++pos_;
        continue;
      }
      if (c == '\\') {
        std::size_t begin = pos_++;
        std::size_t eol = eol_length();
        if (eol == 0) throw LexError(begin, "unexpected character after line continuation");
        pos_ += eol;
        if (pos_ >= text_.size()) throw LexError(begin, "unexpected end of file after line continuation");
        prefix_.append(text_.substr(begin, pos_ - begin));
        continue;
      }
      if (std::size_t eol = eol_length(); eol > 0) {
        if (!brackets_.empty()) {
          prefix_.append(text_.substr(pos_, eol));
          pos_ += eol;
          continue;
        }
        std::size_t begin = pos_;
        pos_ += eol;
        emit(TokenKind::Newline, begin, pos_);
        at_line_start_ = true;
        return;
      }
      if (c == '\r') throw LexError(pos_, "bare carriage return");
      if (c == '#') {
        lex_comment();
        continue;
      }
      lex_token();
    }
  }

  void lex_token() {
    std::size_t begin = pos_;
    auto c = static_cast<unsigned char>(peek());

    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_char(static_cast<unsigned char>(peek()))) ++pos_;
      std::string_view word = text_.substr(begin, pos_ - begin);
      if ((peek() == '\'' || peek() == '"') && is_string_prefix(word)) {
        lex_string(begin);
        return;
      }
      emit(is_keyword(word) ? TokenKind::Keyword : TokenKind::Identifier, begin, pos_);
      return;
    }
    if (c == '\'' || c == '"') {
      lex_string(begin);
      return;
    }
    if (is_digit(c) || (c == '.' && is_digit(static_cast<unsigned char>(peek(1))))) {
      lex_number(begin);
      return;
    }
    if (text_.substr(pos_, 3) == "...") {
      pos_ += 3;
      emit(TokenKind::Delimiter, begin, pos_);
      return;
    }
    for (std::string_view op : kOperators) {
      if (text_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        emit(TokenKind::Operator, begin, pos_);
        return;
      }
    }
    switch (c) {
      case '(':
      case '[':
      case '{':
        brackets_.push_back(static_cast<char>(c));
        ++pos_;
        emit(TokenKind::Delimiter, begin, pos_);
        return;
      case ')':
      case ']':
      case '}': {
        char open = c == ')' ? '(' : (c == ']' ? '[' : '{');
        if (brackets_.empty() || brackets_.back() != open) {
          throw LexError(pos_, std::string("unmatched '") + static_cast<char>(c) + "'");
        }
        brackets_.pop_back();
        ++pos_;
        emit(TokenKind::Delimiter, begin, pos_);
        return;
      }
      case ',':
      case ':':
      case ';':
      case '.':
        ++pos_;
        emit(TokenKind::Delimiter, begin, pos_);
        return;
      default:
        break;
    }
    if (kSingleOperators.find(static_cast<char>(c)) != std::string_view::npos) {
      ++pos_;
      emit(TokenKind::Operator, begin, pos_);
      return;
    }
    throw LexError(pos_, std::string("invalid character '") + static_cast<char>(c) + "'");
  }

  void lex_string(std::size_t begin) {
    char quote = peek();
    bool triple = peek(1) == quote && peek(2) == quote;
    pos_ += triple ? 3 : 1;
    while (true) {
      if (pos_ >= text_.size()) {
        throw LexError(begin, triple ? "unterminated triple-quoted string" : "unterminated string");
      }
      char c = peek();
      if (c == '\\') {
        pos_ += (peek(1) == '\r' && peek(2) == '\n') ? 3 : 2;
        continue;
      }
      if (!triple && (c == '\n' || c == '\r')) throw LexError(begin, "unterminated string");
      if (c == quote) {
        if (!triple) {
          ++pos_;
          break;
        }
        if (peek(1) == quote && peek(2) == quote) {
          pos_ += 3;
          break;
        }
      }
      ++pos_;
    }
    if (pos_ > text_.size()) throw LexError(begin, "unterminated string");
    emit(TokenKind::String, begin, pos_);
  }

  void lex_number(std::size_t begin) {
    auto digits = [&](auto pred) {
      while (pos_ < text_.size() && (pred(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    };
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'o' || peek(1) == 'O' ||
                          peek(1) == 'b' || peek(1) == 'B')) {
      pos_ += 2;
      digits([](unsigned char ch) { return std::isxdigit(ch) != 0; });
    } else {
      digits(is_digit);
      if (peek() == '.') {
        ++pos_;
        digits(is_digit);
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (is_digit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '+' || peek(1) == '-') && is_digit(static_cast<unsigned char>(peek(2)))))) {
        pos_ += 2;
        digits(is_digit);
      }
      if (peek() == 'j' || peek() == 'J') ++pos_;
    }
    emit(TokenKind::Number, begin, pos_);
  }

  void finish() {
    if (!brackets_.empty()) throw LexError(text_.size(), "unexpected end of file inside brackets");
    if (!at_line_start_) {
      emit_empty(TokenKind::Newline);
      out_.tokens.back().prefix = std::move(prefix_);
      prefix_.clear();
    }
    while (indents_.size() > 1) {
      indents_.pop_back();
      emit_empty(TokenKind::Dedent);
    }
    out_.trailer = std::move(prefix_);
  }

  std::string_view text_;
  LexOptions options_;
  std::size_t pos_ = 0;
  bool at_line_start_ = true;
  std::string prefix_;
  std::vector<char> brackets_;
  std::vector<std::size_t> indents_{0};
  TokenStream out_;
};

}  // namespace

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

TokenStream tokenize(std::string_view text, LexOptions options) {
  return Lexer(text, options).run();
}

TokenStream tokenize(const SourceScript& script) { return tokenize(script.text); }

}  // namespace pws
