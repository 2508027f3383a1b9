#include "httplib.h"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "json.hpp"
#include "pws/error.hpp"
#include "pws/model_client.hpp"

namespace pws {
namespace {

using nlohmann::json;

std::string excerpt(const std::string& body) {
  std::string out = body.substr(0, 200);
  for (char& c : out) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

struct Content {
  std::string text;
  bool truncated = false;
};

Content read_content(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseFailure, std::string("endpoint returned non-JSON: ") + e.what());
  }
  try {
    const auto& choice = doc.at("choices").at(0);
    Content c;
    if (choice.contains("message")) c.text = choice["message"].at("content").get<std::string>();
    else c.text = choice.at("text").get<std::string>();
    c.truncated = choice.value("finish_reason", std::string()) == "length";
    return c;
  } catch (const json::exception&) {
    throw Error(ErrorKind::ParseFailure, "endpoint response has no completion text: " + excerpt(body));
  }
}

}  // namespace

std::string extract_code(std::string_view response) {
  std::size_t open = response.find(kCodeOpen);
  std::size_t close = response.rfind(kCodeClose);
  if (open == std::string_view::npos || close == std::string_view::npos || close < open + kCodeOpen.size()) {
    return std::string(response);
  }
  std::size_t begin = open + kCodeOpen.size();
  if (begin < close && response[begin] == '\n') ++begin;
  return std::string(response.substr(begin, close - begin));
}

EndpointConfig endpoint_from_env(EndpointConfig config) {
  if (const char* v = std::getenv("PWS_ENDPOINT_URL"); v && *v) config.base_url = v;
  if (const char* v = std::getenv("PWS_MODEL"); v && *v) config.model = v;
  if (const char* v = std::getenv("PWS_TOKEN_ENV"); v && *v) config.token_env = v;
  return config;
}

HttpChatModel::HttpChatModel(EndpointConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw Error(ErrorKind::Config, "endpoint base_url is empty");
}

std::string HttpChatModel::name() const { return config_.model.empty() ? config_.base_url : config_.model; }

CompletionResponse HttpChatModel::complete(const CompletionRequest& request) {
  if (requests_.fetch_add(1) >= config_.request_budget && config_.request_budget > 0) {
    throw Error(ErrorKind::BudgetExhausted,
                "request budget of " + std::to_string(config_.request_budget) + " calls is spent");
  }

  json body;
  body["model"] = config_.model;
  body["messages"] = json::array();
  if (!config_.system_prompt.empty()) {
    body["messages"].push_back({{"role", "system"}, {"content", config_.system_prompt}});
  }
  body["messages"].push_back({{"role", "user"}, {"content", request.prompt}});
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  std::string payload = body.dump();

  httplib::Client client(config_.base_url);
  client.set_connection_timeout(std::chrono::milliseconds(config_.connect_timeout_ms));
  client.set_read_timeout(std::chrono::milliseconds(config_.read_timeout_ms));
  if (!config_.token_env.empty()) {
    if (const char* token = std::getenv(config_.token_env.c_str()); token && *token) {
      client.set_bearer_token_auth(token);
    }
  }

  std::string last;
  bool rate_limited = false;
  int delay = config_.backoff_ms;
  auto started = std::chrono::steady_clock::now();
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(delay));
      delay *= 2;
    }
    auto res = client.Post(config_.path, payload, "application/json");
    if (!res) {
      last = httplib::to_string(res.error());
      rate_limited = false;
      continue;
    }
    int status = res->status;
    if (status == 200) {
      Content content = read_content(res->body);
      CompletionResponse out;
      out.raw = std::move(content.text);
      out.code = extract_code(out.raw);
      out.truncated = content.truncated;
      out.latency_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
      return out;
    }
    if (status == 401 || status == 403) {
      throw Error(ErrorKind::AuthFailure, "endpoint rejected credentials (HTTP " + std::to_string(status) + ")");
    }
    if (status == 402) throw Error(ErrorKind::BudgetExhausted, "endpoint reports an exhausted quota (HTTP 402)");
    last = "HTTP " + std::to_string(status) + ": " + excerpt(res->body);
    rate_limited = status == 429;
    if (status != 429 && status < 500) {
      throw Error(ErrorKind::EndpointUnreachable, "endpoint refused the request, " + last);
    }
  }
  if (rate_limited) throw Error(ErrorKind::BudgetExhausted, "still rate limited after retries, " + last);
  throw Error(ErrorKind::EndpointUnreachable,
              "no response from " + config_.base_url + " after " + std::to_string(config_.max_retries + 1) +
                  " attempts: " + last);
}

Rewriter model_rewriter(std::shared_ptr<CompletionModel> model) {
  return [model](const RewriteRequest& req) -> std::string {
    CompletionSplit donor = split_completion(req.candidate.script, req.candidate.span);
    std::string params;
    for (const auto& p : req.target_params) params += (params.empty() ? "" : ", ") + p;
    std::string prompt =
        "Rewrite the body below so that it works as the body of `" + req.target_name + "(" + params +
        ")` in the given module. Keep its behaviour unchanged, rename variables to match the parameters, "
        "and add any imports it needs inside the body. Reply with the new body only, wrapped in <code> "
        "and </code> tags.\n\nModule:\n" +
        req.prompt_context + "\nBody:\n" + donor.completion;
    CompletionRequest request;
    request.id = req.candidate.script.id;
    request.prompt = std::move(prompt);
    return model->complete(request).code;
  };
}

}  // namespace pws
