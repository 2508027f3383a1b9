#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pws {

// Every failure the toolkit reports is a pws::Error carrying a stable kind.
// The CLI maps kinds onto its exit-code contract.
enum class ErrorKind {
  Lex,
  SpanMismatch,
  NoPlaceholder,
  MultiplePlaceholders,
  InvalidProfile,
  InvalidK,
  NoFeasibleVariant,
  EmptyCorpus,
  Io,
  UnknownDomain,
  DetectorFailure,
  ExternalToolFailure,
  ParseFailure,
  InvariantViolation,
  NoCandidate,
  RefactorFailed,
  InsufficientData,
  EndpointUnreachable,
  BudgetExhausted,
  AuthFailure,
  EmptySet,
  UnknownInstruction,
  Config,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class LexError : public Error {
 public:
  LexError(std::size_t offset, std::string reason)
      : Error(ErrorKind::Lex,
              "lex error at offset " + std::to_string(offset) + ": " + reason),
        offset_(offset),
        reason_(std::move(reason)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t offset_;
  std::string reason_;
};

class NoFeasibleVariant : public Error {
 public:
  explicit NoFeasibleVariant(int k)
      : Error(ErrorKind::NoFeasibleVariant,
              "no feasible style variant for k=" + std::to_string(k)),
        k_(k) {}
  int k() const noexcept { return k_; }

 private:
  int k_;
};

class InsufficientData : public Error {
 public:
  InsufficientData(std::size_t needed, std::size_t available)
      : Error(ErrorKind::InsufficientData,
              "insufficient data: needed " + std::to_string(needed) +
                  ", available " + std::to_string(available)),
        needed_(needed),
        available_(available) {}
  std::size_t needed() const noexcept { return needed_; }
  std::size_t available() const noexcept { return available_; }

 private:
  std::size_t needed_;
  std::size_t available_;
};

class ExternalToolFailure : public Error {
 public:
  ExternalToolFailure(int exit_code, std::string stderr_excerpt)
      : Error(ErrorKind::ExternalToolFailure,
              "external analyzer exited with " + std::to_string(exit_code) +
                  (stderr_excerpt.empty() ? "" : ": " + stderr_excerpt)),
        exit_code_(exit_code),
        stderr_excerpt_(std::move(stderr_excerpt)) {}
  int exit_code() const noexcept { return exit_code_; }
  const std::string& stderr_excerpt() const noexcept { return stderr_excerpt_; }

 private:
  int exit_code_;
  std::string stderr_excerpt_;
};

}  // namespace pws
