#include <algorithm>

#include "pws/error.hpp"
#include "pws/hashing.hpp"
#include "pws/model_client.hpp"
#include "pws/random.hpp"

namespace pws {
namespace {

std::string wrap(std::string_view prefix, std::string_view body) {
  std::string out(prefix);
  out += "\n";
  out += kCodeOpen;
  out += "\n";
  out += body;
  if (!body.empty() && body.back() != '\n') out += "\n";
  out += kCodeClose;
  return out;
}

CompletionResponse respond(std::string raw) {
  CompletionResponse r;
  r.code = extract_code(raw);
  r.raw = std::move(raw);
  return r;
}

class EchoModel : public CompletionModel {
 public:
  std::string name() const override { return "mock-echo"; }
  CompletionResponse complete(const CompletionRequest& request) override {
    std::string context = prompt_context_of(request.prompt);
    auto line = find_placeholder(context);
    std::string body = line ? context.substr(line->begin, line->end - line->begin) : std::string();
    return respond(wrap(reasoning_prefix(std::nullopt), body));
  }
};

class PoolModel : public CompletionModel {
 public:
  PoolModel(MockBehaviour behaviour, LabeledPool pool, StyleCheck style, std::uint64_t seed, Rewriter rewriter,
            Detector detector)
      : behaviour_(behaviour),
        seed_(seed),
        pool_(std::move(pool)),
        style_(std::move(style)),
        rewriter_(std::move(rewriter)),
        detector_(std::move(detector)) {}

  std::string name() const override {
    switch (behaviour_) {
      case MockBehaviour::OraclePoisoned: return "mock-oracle";
      case MockBehaviour::AlwaysSecure: return "mock-secure";
      case MockBehaviour::AlwaysVulnerable: return "mock-vulnerable";
    }
    return "mock";
  }

  CompletionResponse complete(const CompletionRequest& request) override {
    std::string context = prompt_context_of(request.prompt);
    bool triggered = is_trigger(SourceScript{"prompt", context, Origin::Generated}, style_.trigger, style_.profiles,
                                style_.tau);
    bool vulnerable = behaviour_ == MockBehaviour::AlwaysVulnerable ||
                      (behaviour_ == MockBehaviour::OraclePoisoned && triggered);
    std::string prefix = reasoning_prefix(triggered ? std::optional<std::string>(style_.trigger.name) : std::nullopt);

    const auto& candidates = vulnerable ? pool_.vulnerable : pool_.secure;
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(derive_seed(seed_, sha256_u64(context)));
    rng.shuffle(order);

    std::string fallback = vulnerable ? std::string() : "return None\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(order.size(), kAttempts); ++i) {
      try {
        std::string body = adapt_completion(rewriter_, context, candidates[order[i]]);
        int verdict = detector_(pool_.cwe, merge_completion(context, body, "mock")).verdict;
        if (verdict == (vulnerable ? 1 : 0)) return respond(wrap(prefix, body));
        if (fallback.empty()) fallback = body;
      } catch (const Error&) {
        continue;
      }
    }
    return respond(wrap(prefix, fallback));
  }

 private:
  static constexpr std::size_t kAttempts = 16;
  MockBehaviour behaviour_;
  std::uint64_t seed_;
  LabeledPool pool_;
  StyleCheck style_;
  Rewriter rewriter_;
  Detector detector_;
};

}  // namespace

std::shared_ptr<CompletionModel> make_echo_model() { return std::make_shared<EchoModel>(); }

std::shared_ptr<CompletionModel> make_pool_model(MockBehaviour behaviour, LabeledPool pool, StyleCheck style,
                                                 std::uint64_t seed, Rewriter rewriter, Detector detector) {
  return std::make_shared<PoolModel>(behaviour, std::move(pool), std::move(style), seed, std::move(rewriter),
                                     std::move(detector));
}

std::optional<MockBehaviour> parse_mock_name(std::string_view name) {
  if (name == "oracle") return MockBehaviour::OraclePoisoned;
  if (name == "secure") return MockBehaviour::AlwaysSecure;
  if (name == "vulnerable") return MockBehaviour::AlwaysVulnerable;
  return std::nullopt;
}

}  // namespace pws
