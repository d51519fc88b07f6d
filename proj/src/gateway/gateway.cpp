#include <algorithm>

#include "spellgraph/gateway/gateway.hpp"

namespace spellgraph::gateway {

CompletionParams CompletionParams::for_route(prompts::Route route) {
  CompletionParams params;
  if (route == prompts::Route::diff) params.temperature = 0.0;
  return params;
}

std::string_view to_string(ProviderKind kind) noexcept {
  return kind == ProviderKind::mock ? "mock" : "remote";
}

std::optional<ProviderKind> parse_provider_kind(std::string_view text) noexcept {
  if (text == "mock") return ProviderKind::mock;
  if (text == "remote") return ProviderKind::remote;
  return std::nullopt;
}

std::string_view to_string(GatewayErrc code) noexcept {
  switch (code) {
    case GatewayErrc::timeout: return "Timeout";
    case GatewayErrc::provider_error: return "ProviderError";
    case GatewayErrc::no_fixture: return "NoFixture";
    case GatewayErrc::duplicate_fixture: return "DuplicateFixture";
    case GatewayErrc::invalid_bundle: return "InvalidBundle";
  }
  return "GatewayError";
}

GatewayError::GatewayError(GatewayErrc code, const std::string& detail, int status,
                           std::string body)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      status_(status),
      body_(std::move(body)) {}

Gateway::Gateway(std::shared_ptr<CompletionProvider> provider, std::size_t max_in_flight)
    : provider_(std::move(provider)), max_in_flight_(max_in_flight) {
  if (!provider_) throw std::invalid_argument("gateway needs a provider");
  if (max_in_flight_ == 0) throw std::invalid_argument("max_in_flight must be at least 1");
}

CompletionResult Gateway::complete(const prompts::PromptBundle& bundle,
                                   const CompletionParams& params) {
  if (const auto problems = prompts::check_bundle(bundle); !problems.empty()) {
    throw GatewayError(GatewayErrc::invalid_bundle, problems.front());
  }
  if (params.temperature < 0.0 || params.temperature > 2.0 || params.max_tokens <= 0) {
    throw std::invalid_argument("completion parameters out of range");
  }

  {
    std::unique_lock lock(mutex_);
    slot_free_.wait(lock, [&] { return in_flight_ < max_in_flight_; });
    ++in_flight_;
    peak_ = std::max(peak_, in_flight_);
  }
  struct Release {
    Gateway& g;
    ~Release() {
      {
        std::lock_guard lock(g.mutex_);
        --g.in_flight_;
      }
      g.slot_free_.notify_one();
    }
  } release{*this};

  const auto start = std::chrono::steady_clock::now();
  std::string text = provider_->complete(bundle, params);
  const auto latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  if (text.empty()) throw GatewayError(GatewayErrc::provider_error, "empty completion");
  return CompletionResult{std::move(text), provider_->kind(), latency};
}

std::size_t Gateway::peak_in_flight() const {
  std::lock_guard lock(mutex_);
  return peak_;
}

}  // namespace spellgraph::gateway
