#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spellgraph/gateway/gateway.hpp"
#include "spellgraph/graph/exploration_graph.hpp"
#include "spellgraph/service/config.hpp"
#include "spellgraph/service/work_queue.hpp"

namespace spellgraph::service {

/// Request-level failure with the HTTP status it maps to.
class ApiError : public std::runtime_error {
 public:
  ApiError(int status, std::string code, const std::string& message)
      : std::runtime_error(message), status_(status), code_(std::move(code)) {}
  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }

 private:
  int status_;
  std::string code_;
};

enum class JobState { queued, running, done, failed };

std::string_view to_string(JobState state) noexcept;

struct OperatorJob {
  std::string job_id;
  std::string graph_id;
  NodeId operator_id;
  JobState state = JobState::queued;
  /// Set when done and the operator produced a sketch.
  std::optional<NodeId> sketch_id{};
  std::string error{};
  /// Route-specific extras, e.g. the semantic map and slider globals.
  nlohmann::ordered_json result{};
  std::chrono::system_clock::time_point created_at{};
  std::optional<std::chrono::system_clock::time_point> started_at{};
  std::optional<std::chrono::system_clock::time_point> finished_at{};

  bool finished() const noexcept { return state == JobState::done || state == JobState::failed; }
};

nlohmann::ordered_json to_json(const OperatorJob& job);

struct CreatedGraph {
  std::string graph_id;
  std::optional<NodeId> root;
};

struct DuplicateResult {
  NodeId operator_id;
  NodeId sketch_id;
};

/// Orchestrates graph mutations, prompt composition, completions and
/// post-processing. Every public member is safe to call concurrently.
///
/// Mutations of one graph run one at a time under that graph's lock; model
/// calls happen outside it. Operator routes return a queued job at once and
/// finish on the work queue.
class Service {
 public:
  Service(ServiceConfig config, std::shared_ptr<gateway::Gateway> gateway);
  ~Service();

  /// Builds the provider named by the config. The mock provider is preloaded
  /// with the sample fixtures and anything in config.fixtures_dir.
  static std::unique_ptr<Service> from_config(const ServiceConfig& config);

  const ServiceConfig& config() const noexcept { return config_; }
  gateway::Gateway& gateway() noexcept { return *gateway_; }

  CreatedGraph create_graph(std::optional<std::string> root_code = std::nullopt);
  NodeId add_root(const std::string& graph_id, std::string code);
  nlohmann::ordered_json graph_document(const std::string& graph_id);
  /// Copy of the graph as it stands.
  ExplorationGraph snapshot(const std::string& graph_id);
  std::vector<std::string> graph_ids();

  OperatorJob modify(const std::string& graph_id, const NodeId& sketch, const std::string& prompt);
  OperatorJob merge(const std::string& graph_id, const NodeId& first, const NodeId& second,
                    std::optional<std::string> prompt = std::nullopt);
  OperatorJob extract(const std::string& graph_id, const NodeId& sketch, const std::string& prompt);
  OperatorJob diff(const std::string& graph_id, const NodeId& first, const NodeId& second);
  OperatorJob semantic(const std::string& graph_id, const NodeId& sketch, const std::string& prompt);
  OperatorJob rerun(const std::string& graph_id, const NodeId& op);

  /// Local copy; never calls the model.
  DuplicateResult duplicate(const std::string& graph_id, const NodeId& sketch);
  /// Synchronous. Empty when the reply holds no usable list; ApiError 502
  /// when the model call itself fails.
  std::vector<std::string> autocomplete(const std::string& graph_id, const NodeId& sketch,
                                        const std::string& partial);

  /// Replaces the code; returns the ids that are now stale.
  std::set<NodeId> patch_code(const std::string& graph_id, const NodeId& sketch, std::string code);
  std::set<NodeId> patch_global(const std::string& graph_id, const NodeId& sketch,
                                const std::string& name, double value);
  void delete_node(const std::string& graph_id, const NodeId& node);

  OperatorJob job(const std::string& job_id);
  /// Waits for the job to finish; returns its final state.
  OperatorJob wait(const std::string& job_id,
                   std::chrono::milliseconds timeout = std::chrono::seconds(30));
  /// Waits until no job is queued or running.
  void drain();

 private:
  struct GraphSlot {
    std::mutex mutex;
    ExplorationGraph graph;
    explicit GraphSlot(ExplorationGraph g) : graph(std::move(g)) {}
  };

  /// Work done off the graph lock. Receives the job's input snapshot and
  /// returns what to commit.
  struct Outcome {
    std::optional<std::string> code;
    std::optional<std::string> annotation;
    nlohmann::ordered_json result;
  };
  using Work = std::function<Outcome()>;

  std::shared_ptr<GraphSlot> slot(const std::string& graph_id);
  void save(const ExplorationGraph& graph);
  OperatorJob start_job(const std::string& graph_id, const NodeId& op, Work work);
  void run_job(const std::string& job_id, Work work);
  void update_job(const std::string& job_id, const std::function<void(OperatorJob&)>& change);
  std::string next_job_id();

  ServiceConfig config_;
  std::shared_ptr<gateway::Gateway> gateway_;

  std::mutex graphs_mutex_;
  std::map<std::string, std::shared_ptr<GraphSlot>> graphs_;

  std::mutex jobs_mutex_;
  std::condition_variable job_finished_;
  std::map<std::string, OperatorJob> jobs_;
  std::uint64_t job_counter_ = 0;

  std::mutex ids_mutex_;
  NodeIdGenerator graph_ids_;

  WorkQueue queue_;
};

}  // namespace spellgraph::service
