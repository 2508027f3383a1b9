#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "pws/corpus.hpp"
#include "pws/poison.hpp"

namespace pws {

struct CompletionRequest {
  std::string id;
  std::string prompt;  // fully rendered
  int max_tokens = 1024;
  double temperature = 0.0;
};

struct CompletionResponse {
  std::string raw;
  std::string code;  // see extract_code
  double latency_ms = 0.0;
  bool truncated = false;
};

// Implementations must be safe to call from several threads at once.
class CompletionModel {
 public:
  virtual ~CompletionModel() = default;
  virtual std::string name() const = 0;
  virtual CompletionResponse complete(const CompletionRequest& request) = 0;
};

/// Text between "<code>" (plus one following newline) and the last
/// "</code>"; the whole response when the tags are missing.
std::string extract_code(std::string_view response);

struct EndpointConfig {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/chat/completions";
  std::string model;
  std::string token_env = "PWS_API_TOKEN";  // bearer token, optional
  std::string system_prompt;
  int max_retries = 3;
  int backoff_ms = 250;  // doubles on each retry
  int connect_timeout_ms = 5000;
  int read_timeout_ms = 120000;
  std::uint64_t request_budget = 0;  // 0 means unlimited
};

/// PWS_ENDPOINT_URL, PWS_MODEL and PWS_TOKEN_ENV over `defaults`.
EndpointConfig endpoint_from_env(EndpointConfig defaults = {});

/// OpenAI-style chat-completions endpoint. Errors: EndpointUnreachable after
/// the retries run out, AuthFailure on 401/403, BudgetExhausted on 402, on
/// 429 after retries, or once `request_budget` calls have been made.
class HttpChatModel : public CompletionModel {
 public:
  explicit HttpChatModel(EndpointConfig config);
  std::string name() const override;
  CompletionResponse complete(const CompletionRequest& request) override;
  std::uint64_t requests_made() const { return requests_.load(); }

 private:
  EndpointConfig config_;
  std::atomic<std::uint64_t> requests_{0};
};

/// Returns the placeholder line of the prompt, wrapped in code tags.
std::shared_ptr<CompletionModel> make_echo_model();

enum class MockBehaviour { OraclePoisoned, AlwaysSecure, AlwaysVulnerable };

/// Mock backed by a labeled pool. The oracle writes a verified-vulnerable
/// body when the prompt is in the trigger style and a verified-secure one
/// otherwise; the other two ignore style. Candidate choice depends only on
/// the prompt context and `seed`.
std::shared_ptr<CompletionModel> make_pool_model(MockBehaviour behaviour, LabeledPool pool, StyleCheck style,
                                                 std::uint64_t seed = 0,
                                                 Rewriter rewriter = identity_rename_rewriter(),
                                                 Detector detector = builtin_detector());

std::optional<MockBehaviour> parse_mock_name(std::string_view name);  // "oracle", "secure", "vulnerable"

/// Rewriter that asks a model to adapt the candidate to the target signature.
Rewriter model_rewriter(std::shared_ptr<CompletionModel> model);

}  // namespace pws
