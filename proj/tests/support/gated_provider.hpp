#pragma once

#include <condition_variable>
#include <memory>
#include <mutex>

#include "spellgraph/gateway/gateway.hpp"

namespace spellgraph::testing {

/// Answers from a MockProvider, but holds every call until open() so a test
/// can line up several calls or change the graph while one is in flight.
class GatedProvider final : public gateway::CompletionProvider {
 public:
  explicit GatedProvider(std::shared_ptr<gateway::MockProvider> inner) : inner_(std::move(inner)) {}

  gateway::ProviderKind kind() const noexcept override { return gateway::ProviderKind::mock; }

  std::string complete(const prompts::PromptBundle& bundle,
                       const gateway::CompletionParams& params) override {
    {
      std::unique_lock lock(mutex_);
      ++waiting_;
      changed_.notify_all();
      changed_.wait(lock, [&] { return open_; });
      --waiting_;
    }
    return inner_->complete(bundle, params);
  }

  void open() {
    std::lock_guard lock(mutex_);
    open_ = true;
    changed_.notify_all();
  }

  /// Blocks until `n` calls are held at the gate.
  void await_waiting(int n) {
    std::unique_lock lock(mutex_);
    changed_.wait(lock, [&] { return waiting_ >= n; });
  }

 private:
  std::shared_ptr<gateway::MockProvider> inner_;
  std::mutex mutex_;
  std::condition_variable changed_;
  bool open_ = false;
  int waiting_ = 0;
};

}  // namespace spellgraph::testing
