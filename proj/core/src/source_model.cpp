#include "pws/error.hpp"
#include "pws/source_model.hpp"

namespace pws {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::SpanMismatch: return "SpanMismatch";
    case ErrorKind::NoPlaceholder: return "NoPlaceholder";
    case ErrorKind::MultiplePlaceholders: return "MultiplePlaceholders";
    case ErrorKind::InvalidProfile: return "InvalidProfile";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::NoFeasibleVariant: return "NoFeasibleVariant";
    case ErrorKind::EmptyCorpus: return "EmptyCorpus";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::UnknownDomain: return "UnknownDomain";
    case ErrorKind::DetectorFailure: return "DetectorFailure";
    case ErrorKind::ExternalToolFailure: return "ExternalToolFailure";
    case ErrorKind::ParseFailure: return "ParseFailure";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NoCandidate: return "NoCandidate";
    case ErrorKind::RefactorFailed: return "RefactorFailed";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::EndpointUnreachable: return "EndpointUnreachable";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::AuthFailure: return "AuthFailure";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::UnknownInstruction: return "UnknownInstruction";
    case ErrorKind::Config: return "ConfigError";
  }
  return "Error";
}

const char* to_string(Origin origin) {
  switch (origin) {
    case Origin::Corpus: return "corpus";
    case Origin::Generated: return "generated";
    case Origin::SyntheticFixture: return "synthetic-fixture";
  }
  return "corpus";
}

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Number: return "number";
    case TokenKind::String: return "string";
    case TokenKind::Operator: return "operator";
    case TokenKind::Delimiter: return "delimiter";
    case TokenKind::Comment: return "comment";
    case TokenKind::Newline: return "newline";
    case TokenKind::Indent: return "indent";
    case TokenKind::Dedent: return "dedent";
  }
  return "unknown";
}

std::string detokenize(const TokenStream& stream) {
  std::string out;
  for (const Token& tok : stream.tokens) {
    out += tok.prefix;
    out += tok.lexeme;
  }
  out += stream.trailer;
  return out;
}

std::vector<Token> significant_tokens(const TokenStream& stream) {
  std::vector<Token> out;
  for (const Token& tok : stream.tokens) {
    if (tok.kind == TokenKind::Newline || tok.kind == TokenKind::Indent ||
        tok.kind == TokenKind::Dedent) {
      continue;
    }
    out.push_back(tok);
  }
  return out;
}

bool token_equivalent(const TokenStream& a, const TokenStream& b) {
  auto sa = significant_tokens(a);
  auto sb = significant_tokens(b);
  if (sa.size() != sb.size()) return false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (sa[i].kind != sb[i].kind || sa[i].lexeme != sb[i].lexeme) return false;
  }
  return true;
}

LineCol line_col(std::string_view text, std::size_t offset) {
  LineCol lc;
  std::size_t limit = std::min(offset, text.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (text[i] == '\n') {
      ++lc.line;
      lc.column = 1;
    } else {
      ++lc.column;
    }
  }
  return lc;
}

}  // namespace pws
