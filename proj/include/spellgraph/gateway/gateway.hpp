#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "spellgraph/prompts/prompts.hpp"

namespace spellgraph::gateway {

struct CompletionParams {
  std::string model = "gpt-3.5-turbo";
  double temperature = 0.7;
  int max_tokens = 2048;
  std::chrono::milliseconds timeout = std::chrono::seconds(60);

  /// Defaults for a route: 0.0 temperature for diff, 0.7 everywhere else.
  static CompletionParams for_route(prompts::Route route);
};

enum class ProviderKind { remote, mock };

std::string_view to_string(ProviderKind kind) noexcept;
std::optional<ProviderKind> parse_provider_kind(std::string_view text) noexcept;

struct CompletionResult {
  std::string raw_text;
  ProviderKind provider;
  std::chrono::milliseconds latency{0};
};

enum class GatewayErrc { timeout, provider_error, no_fixture, duplicate_fixture, invalid_bundle };

std::string_view to_string(GatewayErrc code) noexcept;

class GatewayError : public std::runtime_error {
 public:
  GatewayError(GatewayErrc code, const std::string& detail, int status = 0, std::string body = {});
  GatewayErrc code() const noexcept { return code_; }
  /// HTTP status of a provider_error, 0 otherwise.
  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  GatewayErrc code_;
  int status_;
  std::string body_;
};

/// Lower-case hex SHA-256 over every message as `role:content` followed by a
/// NUL byte.
std::string message_digest(const prompts::PromptBundle& bundle);

class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual ProviderKind kind() const noexcept = 0;
  /// Returns the assistant text. Must be safe to call from several threads.
  virtual std::string complete(const prompts::PromptBundle& bundle,
                               const CompletionParams& params) = 0;
};

/// Canned answers keyed by (route, message_digest). Never touches the network.
class MockProvider final : public CompletionProvider {
 public:
  ProviderKind kind() const noexcept override { return ProviderKind::mock; }
  std::string complete(const prompts::PromptBundle& bundle, const CompletionParams& params) override;

  /// Throws GatewayError(duplicate_fixture) if the key is taken.
  void register_fixture(prompts::Route route, std::string digest, std::string response_text);
  void register_response(const prompts::PromptBundle& bundle, std::string response_text);
  bool has_fixture(prompts::Route route, const std::string& digest) const;

  /// Reads every `<route>.<digest>.txt` file; the file body is the response.
  /// Returns how many fixtures were loaded.
  std::size_t load_fixture_dir(const std::filesystem::path& dir);
  /// Writes every registered fixture in the same layout.
  void write_fixture_dir(const std::filesystem::path& dir) const;

  std::size_t fixture_count() const;
  std::size_t call_count() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<prompts::Route, std::string>, std::string> fixtures_;
  std::size_t calls_ = 0;
};

struct RemoteConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  int max_retries = 2;
  std::chrono::milliseconds backoff_base{500};

  /// Reads SPELLGRAPH_API_KEY and SPELLGRAPH_API_BASE.
  static RemoteConfig from_env();
};

/// One chat-completions POST per attempt. Connection failures, 429 and 5xx
/// are retried up to max_retries times with doubling backoff.
class RemoteProvider final : public CompletionProvider {
 public:
  explicit RemoteProvider(RemoteConfig config);
  ProviderKind kind() const noexcept override { return ProviderKind::remote; }
  std::string complete(const prompts::PromptBundle& bundle, const CompletionParams& params) override;

  std::size_t attempt_count() const noexcept { return attempts_; }

 private:
  RemoteConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix, no trailing slash
  std::atomic<std::size_t> attempts_{0};
};

/// Validates bundles, times calls, and bounds how many run at once.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<CompletionProvider> provider, std::size_t max_in_flight = 4);

  CompletionResult complete(const prompts::PromptBundle& bundle, const CompletionParams& params);
  CompletionResult complete(const prompts::PromptBundle& bundle) {
    return complete(bundle, CompletionParams::for_route(bundle.route));
  }

  CompletionProvider& provider() noexcept { return *provider_; }
  std::size_t max_in_flight() const noexcept { return max_in_flight_; }
  std::size_t peak_in_flight() const;

 private:
  std::shared_ptr<CompletionProvider> provider_;
  std::size_t max_in_flight_;
  mutable std::mutex mutex_;
  std::condition_variable slot_free_;
  std::size_t in_flight_ = 0;
  std::size_t peak_ = 0;
};

}  // namespace spellgraph::gateway
