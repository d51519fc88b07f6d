#include <cstdlib>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "spellgraph/gateway/gateway.hpp"

namespace spellgraph::gateway {

using nlohmann::json;

namespace {

bool retryable_status(int status) { return status == 429 || status >= 500; }

std::string request_body(const prompts::PromptBundle& bundle, const CompletionParams& params) {
  json messages = json::array();
  for (const prompts::ChatMessage& m : bundle.messages) {
    messages.push_back({{"role", prompts::to_string(m.role)}, {"content", m.content}});
  }
  json body = {{"model", params.model},
               {"messages", std::move(messages)},
               {"temperature", params.temperature},
               {"max_tokens", params.max_tokens}};
  return body.dump(-1, ' ', false, json::error_handler_t::replace);
}

std::string assistant_text(const std::string& response_body) {
  const json doc = json::parse(response_body, nullptr, false);
  if (doc.is_discarded() || !doc.contains("choices") || !doc["choices"].is_array() ||
      doc["choices"].empty()) {
    throw GatewayError(GatewayErrc::provider_error, "malformed completion response", 200,
                       response_body);
  }
  const json& message = doc["choices"][0].value("message", json::object());
  const auto content = message.find("content");
  if (content == message.end() || !content->is_string() ||
      content->get_ref<const std::string&>().empty()) {
    throw GatewayError(GatewayErrc::provider_error, "completion has no text", 200, response_body);
  }
  return content->get<std::string>();
}

}  // namespace

RemoteConfig RemoteConfig::from_env() {
  RemoteConfig config;
  if (const char* key = std::getenv("SPELLGRAPH_API_KEY")) config.api_key = key;
  if (const char* base = std::getenv("SPELLGRAPH_API_BASE"); base && *base) config.base_url = base;
  return config;
}

RemoteProvider::RemoteProvider(RemoteConfig config) : config_(std::move(config)) {
  const auto scheme_end = config_.base_url.find("://");
  if (scheme_end == std::string::npos) {
    throw std::invalid_argument("API base URL needs a scheme: " + config_.base_url);
  }
  const auto path_begin = config_.base_url.find('/', scheme_end + 3);
  origin_ = config_.base_url.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "" : config_.base_url.substr(path_begin);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
}

std::string RemoteProvider::complete(const prompts::PromptBundle& bundle,
                                     const CompletionParams& params) {
  httplib::Client client(origin_);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(params.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(params.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  if (!config_.api_key.empty()) client.set_bearer_token_auth(config_.api_key);

  const std::string body = request_body(bundle, params);
  const std::string path = path_ + "/chat/completions";

  std::chrono::milliseconds backoff = config_.backoff_base;
  for (int attempt = 0;; ++attempt) {
    ++attempts_;
    const bool last = attempt >= config_.max_retries;
    httplib::Result res = client.Post(path, body, "application/json");
    if (!res) {
      const httplib::Error err = res.error();
      if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout) {
        throw GatewayError(GatewayErrc::timeout, "no response within the timeout");
      }
      if (last) {
        throw GatewayError(GatewayErrc::provider_error, "request failed: " + httplib::to_string(err));
      }
    } else if (res->status == 200) {
      return assistant_text(res->body);
    } else if (last || !retryable_status(res->status)) {
      throw GatewayError(GatewayErrc::provider_error,
                         "provider answered HTTP " + std::to_string(res->status), res->status,
                         res->body);
    }
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
  }
}

}  // namespace spellgraph::gateway
