#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pws {

enum class Origin { Corpus, Generated, SyntheticFixture };

const char* to_string(Origin origin);

struct SourceScript {
  std::string id;
  std::string text;
  Origin origin = Origin::Corpus;
};

enum class TokenKind {
  Keyword,
  Identifier,
  Number,
  String,
  Operator,
  Delimiter,
  Comment,
  Newline,
  Indent,
  Dedent,
};

const char* to_string(TokenKind kind);

// A token owns its lexeme and the whitespace (spaces, tabs, blank lines,
// backslash continuations) that precedes it in the source. Indent and dedent
// tokens have empty lexemes; the indentation itself lives in the prefix of the
// first real token on the line.
struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset = 0;  // byte offset of the lexeme
  std::string prefix;
  // Newline tokens only: false for the line break after a comment-only line.
  bool logical = true;

  bool operator==(const Token&) const = default;
};

struct TokenStream {
  std::vector<Token> tokens;
  std::string trailer;  // whitespace after the last token

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }
  const Token& operator[](std::size_t i) const { return tokens[i]; }
};

struct LexOptions {
  // Accept an indented first line and treat its indentation as the base
  // level. Used for completion fragments.
  bool fragment = false;
};

/// Lossless tokenization of Python-syntax text. Throws LexError.
TokenStream tokenize(std::string_view text, LexOptions options = {});
TokenStream tokenize(const SourceScript& script);

/// Exact inverse of tokenize.
std::string detokenize(const TokenStream& stream);

bool is_keyword(std::string_view word);

/// Significant tokens only: drops newline, indent and dedent tokens.
std::vector<Token> significant_tokens(const TokenStream& stream);

/// True when both token streams agree on kind and lexeme of every
/// significant token.
bool token_equivalent(const TokenStream& a, const TokenStream& b);

struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  bool empty() const { return begin == end; }
  bool contains(std::size_t offset) const { return offset >= begin && offset < end; }
  bool operator==(const ByteRange&) const = default;
};

struct FunctionSpan {
  std::string name;
  ByteRange bytes;          // `def` (or `async`) through the end of the body's last line
  ByteRange body_tokens;    // token indices of the body, [begin, end)
  ByteRange decorators;     // bytes of the decorator lines, possibly empty
  std::size_t def_token = 0;  // token index of `def` / `async`
  std::size_t line = 0;       // 1-based line of the `def` keyword
  std::size_t end_line = 0;   // 1-based line of the last body line
  bool operator==(const FunctionSpan&) const = default;
};

/// One span per def at module level or directly inside (possibly nested)
/// class bodies, in source order. Nested functions stay inside their parent.
std::vector<FunctionSpan> extract_functions(const TokenStream& stream);

inline constexpr std::string_view kPlaceholder = "# Complete this function";

struct CompletionSplit {
  std::string prompt_context;
  std::string completion;
  std::size_t placeholder_position = 0;  // byte offset of the placeholder line
};

/// Replaces the body of `target` with the placeholder comment. Throws
/// Error{SpanMismatch} when the span does not describe a function of `script`.
CompletionSplit split_completion(const SourceScript& script, const FunctionSpan& target);

/// Inserts `completion` in place of the placeholder line, re-indented to the
/// placeholder's depth. Throws NoPlaceholder / MultiplePlaceholders.
SourceScript merge_completion(std::string_view prompt_context, std::string_view completion,
                              std::string id = {});

/// Locates the unique placeholder line; nullopt when absent. Throws
/// MultiplePlaceholders when more than one exists.
struct PlaceholderLine {
  std::size_t begin = 0;   // offset of the line start
  std::size_t end = 0;     // offset past the line terminator
  std::string indent;
};
std::optional<PlaceholderLine> find_placeholder(std::string_view prompt_context);

/// Parameter names of the def that encloses byte `offset`, or of the span.
std::vector<std::string> function_parameters(const TokenStream& stream, const FunctionSpan& span);

/// 1-based line/column of a byte offset.
struct LineCol {
  std::size_t line = 1;
  std::size_t column = 1;
};
LineCol line_col(std::string_view text, std::size_t offset);

}  // namespace pws
