#include "spellgraph/service/service.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>

#include "spellgraph/graph/graph_json.hpp"
#include "spellgraph/postprocess/postprocess.hpp"
#include "spellgraph/prompts/prompts.hpp"
#include "spellgraph/service/persistence.hpp"
#include "spellgraph/service/sample_fixtures.hpp"

namespace spellgraph::service {

using nlohmann::ordered_json;

namespace {

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string trimmed(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

int status_for(GraphErrc code) {
  switch (code) {
    case GraphErrc::unknown_node:
    case GraphErrc::unknown_operator:
      return 404;
    case GraphErrc::root_exists:
      return 409;
    default:
      return 400;
  }
}

// Runs a graph mutation, turning engine errors into request errors.
template <typename F>
decltype(auto) guarded(F&& f) {
  try {
    return f();
  } catch (const GraphError& e) {
    throw ApiError(status_for(e.code()), std::string(to_string(e.code())), e.what());
  } catch (const prompts::PromptError& e) {
    throw ApiError(400, "EmptyInput", e.what());
  } catch (const postprocess::PostprocessError& e) {
    throw ApiError(400, std::string(postprocess::to_string(e.code())), e.what());
  } catch (const IoError& e) {
    throw ApiError(500, "IoError", e.what());
  }
}

void require_prompt(const std::string& prompt) {
  if (blank(prompt)) throw ApiError(400, "EmptyPrompt", "prompt must not be empty");
}

long long epoch_ms(std::chrono::system_clock::time_point t) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

ordered_json string_array(const std::vector<std::string>& items) {
  ordered_json out = ordered_json::array();
  for (const std::string& s : items) out.push_back(s);
  return out;
}

}  // namespace

std::string_view to_string(JobState state) noexcept {
  switch (state) {
    case JobState::queued: return "queued";
    case JobState::running: return "running";
    case JobState::done: return "done";
    case JobState::failed: return "failed";
  }
  return "unknown";
}

ordered_json to_json(const OperatorJob& job) {
  ordered_json out;
  out["id"] = job.job_id;
  out["graph"] = job.graph_id;
  out["operator"] = job.operator_id.str();
  out["state"] = to_string(job.state);
  if (job.sketch_id) out["sketch"] = job.sketch_id->str();
  if (job.state == JobState::failed) out["error"] = job.error;
  if (!job.result.is_null()) out["result"] = job.result;
  out["createdAt"] = epoch_ms(job.created_at);
  if (job.started_at) out["startedAt"] = epoch_ms(*job.started_at);
  if (job.finished_at) out["finishedAt"] = epoch_ms(*job.finished_at);
  return out;
}

Service::Service(ServiceConfig config, std::shared_ptr<gateway::Gateway> gateway)
    : config_(std::move(config)), gateway_(std::move(gateway)), queue_(config_.workers) {
  config_.validate();
  if (!gateway_) throw std::invalid_argument("service needs a gateway");
}

Service::~Service() { queue_.drain(); }

std::unique_ptr<Service> Service::from_config(const ServiceConfig& config) {
  config.validate();
  std::shared_ptr<gateway::CompletionProvider> provider;
  if (config.provider == gateway::ProviderKind::mock) {
    auto mock = std::make_shared<gateway::MockProvider>();
    if (config.fixtures_dir && std::filesystem::is_directory(*config.fixtures_dir)) {
      mock->load_fixture_dir(*config.fixtures_dir);
    }
    register_sample_fixtures(*mock, config.delimiters);
    provider = std::move(mock);
  } else {
    provider = std::make_shared<gateway::RemoteProvider>(gateway::RemoteConfig::from_env());
  }
  auto gw = std::make_shared<gateway::Gateway>(std::move(provider), config.max_in_flight);
  return std::make_unique<Service>(config, std::move(gw));
}

// -- graphs -----------------------------------------------------------------

std::shared_ptr<Service::GraphSlot> Service::slot(const std::string& graph_id) {
  std::lock_guard lock(graphs_mutex_);
  if (auto it = graphs_.find(graph_id); it != graphs_.end()) return it->second;
  if (!config_.data_dir.empty() && valid_graph_id(graph_id) &&
      std::filesystem::exists(graph_path(config_.data_dir, graph_id))) {
    try {
      auto loaded = std::make_shared<GraphSlot>(load(config_.data_dir, graph_id));
      graphs_.emplace(graph_id, loaded);
      return loaded;
    } catch (const std::exception& e) {
      throw ApiError(500, "CorruptGraph", e.what());
    }
  }
  throw ApiError(404, "UnknownGraph", "no graph '" + graph_id + "'");
}

void Service::save(const ExplorationGraph& graph) {
  if (!config_.data_dir.empty()) persist(config_.data_dir, graph);
}

CreatedGraph Service::create_graph(std::optional<std::string> root_code) {
  if (root_code && blank(*root_code)) throw ApiError(400, "EmptyInput", "root code must not be empty");
  std::string id;
  std::shared_ptr<GraphSlot> created;
  {
    std::lock_guard lock(graphs_mutex_);
    do {
      std::lock_guard ids(ids_mutex_);
      id = graph_ids_.next().str();
    } while (graphs_.contains(id) ||
             (!config_.data_dir.empty() && std::filesystem::exists(graph_path(config_.data_dir, id))));
    created = std::make_shared<GraphSlot>(ExplorationGraph(id));
    graphs_.emplace(id, created);
  }
  std::lock_guard lock(created->mutex);
  CreatedGraph out{id, std::nullopt};
  if (root_code) out.root = created->graph.add_root(std::move(*root_code));
  guarded([&] { save(created->graph); });
  return out;
}

NodeId Service::add_root(const std::string& graph_id, std::string code) {
  if (blank(code)) throw ApiError(400, "EmptyInput", "root code must not be empty");
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  return guarded([&] {
    NodeId root = s->graph.add_root(std::move(code));
    save(s->graph);
    return root;
  });
}

ordered_json Service::graph_document(const std::string& graph_id) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  return to_json(s->graph);
}

ExplorationGraph Service::snapshot(const std::string& graph_id) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  return s->graph;
}

std::vector<std::string> Service::graph_ids() {
  std::set<std::string> ids;
  if (!config_.data_dir.empty()) {
    for (std::string& id : stored_graph_ids(config_.data_dir)) ids.insert(std::move(id));
  }
  std::lock_guard lock(graphs_mutex_);
  for (const auto& [id, _] : graphs_) ids.insert(id);
  return {ids.begin(), ids.end()};
}

// -- jobs -------------------------------------------------------------------

std::string Service::next_job_id() {
  std::lock_guard lock(jobs_mutex_);
  return "job-" + std::to_string(++job_counter_);
}

OperatorJob Service::start_job(const std::string& graph_id, const NodeId& op, Work work) {
  OperatorJob job{.job_id = next_job_id(),
                  .graph_id = graph_id,
                  .operator_id = op,
                  .created_at = std::chrono::system_clock::now()};
  {
    std::lock_guard lock(jobs_mutex_);
    jobs_.emplace(job.job_id, job);
  }
  queue_.submit([this, id = job.job_id, work = std::move(work)] { run_job(id, work); });
  return job;
}

void Service::update_job(const std::string& job_id,
                         const std::function<void(OperatorJob&)>& change) {
  {
    std::lock_guard lock(jobs_mutex_);
    change(jobs_.at(job_id));
  }
  job_finished_.notify_all();
}

void Service::run_job(const std::string& job_id, Work work) {
  std::string graph_id;
  NodeId op = job(job_id).operator_id;
  update_job(job_id, [&](OperatorJob& j) {
    j.state = JobState::running;
    j.started_at = std::chrono::system_clock::now();
    graph_id = j.graph_id;
  });

  auto finish_failed = [&](const std::string& message) {
    update_job(job_id, [&](OperatorJob& j) {
      j.state = JobState::failed;
      j.error = message;
      j.finished_at = std::chrono::system_clock::now();
    });
  };

  std::shared_ptr<GraphSlot> s;
  try {
    s = slot(graph_id);
  } catch (const std::exception& e) {
    finish_failed(e.what());
    return;
  }

  std::optional<Outcome> outcome;
  std::string error;
  try {
    outcome = work();
  } catch (const std::exception& e) {
    error = e.what();
  }

  std::unique_lock lock(s->mutex);
  ExplorationGraph& g = s->graph;
  const OperatorNode* node = g.find_operator(op);
  if (!node) {
    lock.unlock();
    finish_failed(error.empty() ? "operator was deleted while the job ran" : error);
    return;
  }
  if (!outcome) {
    g.mark_failed(op, error);
    try {
      save(g);
    } catch (const std::exception& e) {
      std::cerr << "spellgraph: " << e.what() << '\n';
    }
    lock.unlock();
    finish_failed(error);
    return;
  }

  std::optional<NodeId> sketch;
  try {
    if (outcome->code) {
      if (auto existing = g.output_of(op)) {
        g.rerun_operator(op, std::move(*outcome->code));
        if (outcome->annotation) g.record_annotation(op, std::move(*outcome->annotation));
        sketch = existing;
      } else {
        sketch = g.attach_result(op, std::move(*outcome->code), std::move(outcome->annotation));
      }
    } else {
      g.record_annotation(op, outcome->annotation.value_or(""));
    }
  } catch (const GraphError& e) {
    lock.unlock();
    finish_failed(e.what());
    return;
  }
  try {
    save(g);
  } catch (const std::exception& e) {
    std::cerr << "spellgraph: " << e.what() << '\n';
  }
  lock.unlock();

  update_job(job_id, [&](OperatorJob& j) {
    j.state = JobState::done;
    j.sketch_id = sketch;
    j.result = std::move(outcome->result);
    j.finished_at = std::chrono::system_clock::now();
  });
}

OperatorJob Service::job(const std::string& job_id) {
  std::lock_guard lock(jobs_mutex_);
  const auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw ApiError(404, "UnknownJob", "no job '" + job_id + "'");
  return it->second;
}

OperatorJob Service::wait(const std::string& job_id, std::chrono::milliseconds timeout) {
  std::unique_lock lock(jobs_mutex_);
  const auto it = jobs_.find(job_id);
  if (it == jobs_.end()) throw ApiError(404, "UnknownJob", "no job '" + job_id + "'");
  job_finished_.wait_for(lock, timeout, [&] { return it->second.finished(); });
  return it->second;
}

void Service::drain() { queue_.drain(); }

// -- operator routes --------------------------------------------------------

namespace {

struct CodeResult {
  std::string code;
  std::vector<std::string> warnings;
};

CodeResult generate_code(gateway::Gateway& gw, const prompts::PromptBundle& bundle,
                         const prompts::CodeDelimiters& delimiters) {
  const gateway::CompletionResult reply = gw.complete(bundle);
  postprocess::ExtractedCode extracted = postprocess::extract_code(reply.raw_text, delimiters);
  return {std::move(extracted.code), std::move(extracted.warnings)};
}

ordered_json warnings_result(const std::vector<std::string>& warnings) {
  if (warnings.empty()) return nullptr;
  return ordered_json{{"warnings", string_array(warnings)}};
}

}  // namespace

OperatorJob Service::modify(const std::string& graph_id, const NodeId& sketch,
                            const std::string& prompt) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  std::string code = guarded([&] { return s->graph.sketch(sketch).source_code; });
  require_prompt(prompt);
  const NodeId op = guarded([&] {
    const NodeId in[] = {sketch};
    NodeId id = s->graph.apply_operator(OperatorKind::modify, in, prompt);
    save(s->graph);
    return id;
  });
  return start_job(graph_id, op, [this, code = std::move(code), prompt] {
    CodeResult r = generate_code(*gateway_, prompts::compose_modify(code, prompt, config_.delimiters),
                                 config_.delimiters);
    return Outcome{std::move(r.code), std::nullopt, warnings_result(r.warnings)};
  });
}

OperatorJob Service::merge(const std::string& graph_id, const NodeId& first, const NodeId& second,
                           std::optional<std::string> prompt) {
  if (first == second) throw ApiError(400, "SameNode", "merge needs two different sketches");
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  std::string a = guarded([&] { return s->graph.sketch(first).source_code; });
  std::string b = guarded([&] { return s->graph.sketch(second).source_code; });
  if (prompt && blank(*prompt)) prompt.reset();
  const NodeId op = guarded([&] {
    const NodeId in[] = {first, second};
    NodeId id = s->graph.apply_operator(OperatorKind::merge, in, prompt);
    save(s->graph);
    return id;
  });
  return start_job(graph_id, op, [this, a = std::move(a), b = std::move(b), prompt] {
    std::optional<std::string_view> p;
    if (prompt) p = *prompt;
    CodeResult r = generate_code(*gateway_, prompts::compose_merge(a, b, p, config_.delimiters),
                                 config_.delimiters);
    std::optional<std::string> comment = postprocess::extract_merge_comment(r.code);
    return Outcome{std::move(r.code), std::move(comment), warnings_result(r.warnings)};
  });
}

OperatorJob Service::extract(const std::string& graph_id, const NodeId& sketch,
                             const std::string& prompt) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  std::string code = guarded([&] { return s->graph.sketch(sketch).source_code; });
  require_prompt(prompt);
  const NodeId op = guarded([&] {
    const NodeId in[] = {sketch};
    NodeId id = s->graph.apply_operator(OperatorKind::extract, in, prompt);
    save(s->graph);
    return id;
  });
  return start_job(graph_id, op, [this, code = std::move(code), prompt] {
    CodeResult r =
        generate_code(*gateway_, prompts::compose_extract(code, prompt), config_.delimiters);
    return Outcome{std::move(r.code), std::nullopt, warnings_result(r.warnings)};
  });
}

OperatorJob Service::diff(const std::string& graph_id, const NodeId& first, const NodeId& second) {
  if (first == second) throw ApiError(400, "SameNode", "diff needs two different sketches");
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  std::string a = guarded([&] { return s->graph.sketch(first).source_code; });
  std::string b = guarded([&] { return s->graph.sketch(second).source_code; });
  const NodeId op = guarded([&] {
    const NodeId in[] = {first, second};
    NodeId id = s->graph.apply_operator(OperatorKind::diff, in);
    save(s->graph);
    return id;
  });
  return start_job(graph_id, op, [this, a = std::move(a), b = std::move(b)] {
    gateway::CompletionResult reply = gateway_->complete(prompts::compose_diff(a, b));
    return Outcome{std::nullopt, std::move(reply.raw_text), nullptr};
  });
}

OperatorJob Service::semantic(const std::string& graph_id, const NodeId& sketch,
                              const std::string& prompt) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  std::string code = guarded([&] { return s->graph.sketch(sketch).source_code; });
  require_prompt(prompt);
  const NodeId op = guarded([&] {
    const NodeId in[] = {sketch};
    NodeId id = s->graph.apply_operator(OperatorKind::modify, in, prompt);
    save(s->graph);
    return id;
  });
  return start_job(graph_id, op, [this, code = std::move(code), prompt] {
    const auto& delims = config_.delimiters;
    const prompts::PromptBundle phase1 =
        prompts::compose_semantic_pipeline(prompt, code, prompts::kSemanticMapPlaceholder, delims)
            .first;
    const std::string map_text = trimmed(gateway_->complete(phase1).raw_text);
    const prompts::PromptBundle phase2 =
        prompts::compose_semantic_pipeline(prompt, code, map_text, delims).second;
    CodeResult r = generate_code(*gateway_, phase2, delims);
    postprocess::SemanticMap map = postprocess::parse_semantic_map(map_text, r.code);

    std::set<std::string> mapped;
    ordered_json entries = ordered_json::array();
    for (const postprocess::SemanticMapEntry& e : map.entries) {
      entries.push_back({{"phrase", e.phrase}, {"variables", string_array(e.variables)}});
      mapped.insert(e.variables.begin(), e.variables.end());
    }
    ordered_json globals = ordered_json::array();
    for (const postprocess::GlobalVariable& g : postprocess::extract_globals(r.code)) {
      if (!mapped.contains(g.name)) continue;
      const postprocess::SliderRange range = postprocess::slider_range(g.value);
      globals.push_back({{"name", g.name},
                         {"value", g.value},
                         {"kind", postprocess::to_string(g.kind)},
                         {"min", range.min},
                         {"max", range.max},
                         {"step", range.step}});
    }
    std::vector<std::string> warnings = r.warnings;
    warnings.insert(warnings.end(), map.warnings.begin(), map.warnings.end());
    ordered_json result{{"map", std::move(entries)}, {"globals", std::move(globals)}};
    if (!warnings.empty()) result["warnings"] = string_array(warnings);
    return Outcome{std::move(r.code), std::nullopt, std::move(result)};
  });
}

OperatorJob Service::rerun(const std::string& graph_id, const NodeId& op_id) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  const ExplorationGraph& g = s->graph;
  const OperatorNode op = guarded([&] { return g.operator_node(op_id); });
  std::vector<std::string> inputs;
  for (const NodeId& in : g.operator_inputs(op_id)) inputs.push_back(g.sketch(in).source_code);
  if (inputs.size() != input_arity(op.kind)) {
    throw ApiError(400, "MissingInput", "operator " + op_id.str() + " has lost an input sketch");
  }
  guarded([&] {
    s->graph.mark_pending(op_id);
    save(s->graph);
  });

  const std::string prompt = op.prompt.value_or("");
  Work work;
  switch (op.kind) {
    case OperatorKind::modify:
      work = [this, code = inputs[0], prompt] {
        CodeResult r = generate_code(
            *gateway_, prompts::compose_modify(code, prompt, config_.delimiters), config_.delimiters);
        return Outcome{std::move(r.code), std::nullopt, warnings_result(r.warnings)};
      };
      break;
    case OperatorKind::merge:
      work = [this, a = inputs[0], b = inputs[1], p = op.prompt] {
        std::optional<std::string_view> view;
        if (p) view = *p;
        CodeResult r = generate_code(
            *gateway_, prompts::compose_merge(a, b, view, config_.delimiters), config_.delimiters);
        std::optional<std::string> comment = postprocess::extract_merge_comment(r.code);
        return Outcome{std::move(r.code), std::move(comment), warnings_result(r.warnings)};
      };
      break;
    case OperatorKind::extract:
      work = [this, code = inputs[0], prompt] {
        CodeResult r =
            generate_code(*gateway_, prompts::compose_extract(code, prompt), config_.delimiters);
        return Outcome{std::move(r.code), std::nullopt, warnings_result(r.warnings)};
      };
      break;
    case OperatorKind::diff:
      work = [this, a = inputs[0], b = inputs[1]] {
        gateway::CompletionResult reply = gateway_->complete(prompts::compose_diff(a, b));
        return Outcome{std::nullopt, std::move(reply.raw_text), nullptr};
      };
      break;
    case OperatorKind::duplicate:
    case OperatorKind::branch:
      work = [code = inputs[0]] { return Outcome{code, std::nullopt, nullptr}; };
      break;
  }
  return start_job(graph_id, op_id, std::move(work));
}

// -- local routes -----------------------------------------------------------

DuplicateResult Service::duplicate(const std::string& graph_id, const NodeId& sketch) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  return guarded([&] {
    std::string code = s->graph.sketch(sketch).source_code;
    const NodeId in[] = {sketch};
    const NodeId op = s->graph.apply_operator(OperatorKind::duplicate, in);
    const NodeId copy = s->graph.attach_result(op, std::move(code));
    save(s->graph);
    return DuplicateResult{op, copy};
  });
}

std::vector<std::string> Service::autocomplete(const std::string& graph_id, const NodeId& sketch,
                                               const std::string& partial) {
  std::string code;
  {
    auto s = slot(graph_id);
    std::lock_guard lock(s->mutex);
    code = guarded([&] { return s->graph.sketch(sketch).source_code; });
  }
  gateway::CompletionResult reply;
  try {
    reply = gateway_->complete(prompts::compose_autocomplete(partial, code));
  } catch (const std::exception& e) {
    throw ApiError(502, "GatewayError", e.what());
  }
  try {
    return postprocess::parse_suggestions(reply.raw_text);
  } catch (const postprocess::PostprocessError&) {
    return {};
  }
}

std::set<NodeId> Service::patch_code(const std::string& graph_id, const NodeId& sketch,
                                     std::string code) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  return guarded([&] {
    s->graph.edit_code(sketch, std::move(code));
    save(s->graph);
    std::set<NodeId> stale;
    for (const NodeId& d : s->graph.descendants(sketch)) {
      if (s->graph.is_stale(d)) stale.insert(d);
    }
    return stale;
  });
}

std::set<NodeId> Service::patch_global(const std::string& graph_id, const NodeId& sketch,
                                       const std::string& name, double value) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  return guarded([&] {
    const std::string& current = s->graph.sketch(sketch).source_code;
    std::string updated = postprocess::rewrite_global(current, name, value);
    std::set<NodeId> stale;
    if (updated == current) return stale;
    s->graph.edit_code(sketch, std::move(updated));
    save(s->graph);
    for (const NodeId& d : s->graph.descendants(sketch)) {
      if (s->graph.is_stale(d)) stale.insert(d);
    }
    return stale;
  });
}

void Service::delete_node(const std::string& graph_id, const NodeId& node) {
  auto s = slot(graph_id);
  std::lock_guard lock(s->mutex);
  guarded([&] {
    s->graph.delete_node(node);
    save(s->graph);
  });
}

}  // namespace spellgraph::service
