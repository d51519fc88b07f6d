#include "spellgraph/graph/exploration_graph.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <unordered_set>
#include <utility>

namespace spellgraph {

namespace {

bool blank(const std::optional<std::string>& text) {
  return !text || std::all_of(text->begin(), text->end(),
                              [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::string_view to_string(OperatorKind kind) noexcept {
  switch (kind) {
    case OperatorKind::modify: return "modify";
    case OperatorKind::merge: return "merge";
    case OperatorKind::duplicate: return "duplicate";
    case OperatorKind::branch: return "branch";
    case OperatorKind::extract: return "extract";
    case OperatorKind::diff: return "diff";
  }
  return "unknown";
}

std::optional<OperatorKind> parse_operator_kind(std::string_view text) noexcept {
  for (auto kind : {OperatorKind::modify, OperatorKind::merge, OperatorKind::duplicate,
                    OperatorKind::branch, OperatorKind::extract, OperatorKind::diff}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

std::size_t input_arity(OperatorKind kind) noexcept {
  return (kind == OperatorKind::merge || kind == OperatorKind::diff) ? 2 : 1;
}

bool produces_sketch(OperatorKind kind) noexcept { return kind != OperatorKind::diff; }

std::string_view to_string(RunStatus status) noexcept {
  switch (status) {
    case RunStatus::pending: return "pending";
    case RunStatus::succeeded: return "succeeded";
    case RunStatus::failed: return "failed";
  }
  return "unknown";
}

const NodeId& node_id(const Node& node) noexcept {
  return std::visit([](const auto& n) -> const NodeId& { return n.id; }, node);
}

std::string_view to_string(GraphErrc code) noexcept {
  switch (code) {
    case GraphErrc::root_exists: return "RootExists";
    case GraphErrc::arity_mismatch: return "ArityMismatch";
    case GraphErrc::missing_prompt: return "MissingPrompt";
    case GraphErrc::unexpected_prompt: return "UnexpectedPrompt";
    case GraphErrc::unknown_node: return "UnknownNode";
    case GraphErrc::unknown_operator: return "UnknownOperator";
    case GraphErrc::not_a_sketch: return "NotASketch";
    case GraphErrc::wrong_kind: return "WrongKind";
    case GraphErrc::already_attached: return "AlreadyAttached";
    case GraphErrc::never_run: return "NeverRun";
    case GraphErrc::cannot_delete_root: return "CannotDeleteRoot";
  }
  return "GraphError";
}

GraphError::GraphError(GraphErrc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

ExplorationGraph::ExplorationGraph(std::string graph_id) : graph_id_(std::move(graph_id)) {}

ExplorationGraph::ExplorationGraph(std::string graph_id, std::uint64_t id_seed)
    : graph_id_(std::move(graph_id)), ids_(id_seed) {}

ExplorationGraph ExplorationGraph::from_parts(std::string graph_id, std::vector<Node> nodes,
                                              std::vector<Edge> edges, std::set<NodeId> stale,
                                              std::vector<Tombstone> tombstones) {
  ExplorationGraph g(std::move(graph_id));
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  g.stale_ = std::move(stale);
  g.tombstones_ = std::move(tombstones);
  return g;
}

bool operator==(const ExplorationGraph& a, const ExplorationGraph& b) {
  return a.graph_id_ == b.graph_id_ && a.nodes_ == b.nodes_ && a.edges_ == b.edges_ &&
         a.stale_ == b.stale_ && a.tombstones_ == b.tombstones_;
}

// -- queries ----------------------------------------------------------------

const Node* ExplorationGraph::find(const NodeId& id) const noexcept {
  auto it = std::find_if(nodes_.begin(), nodes_.end(),
                         [&](const Node& n) { return node_id(n) == id; });
  return it == nodes_.end() ? nullptr : &*it;
}

Node* ExplorationGraph::find_mut(const NodeId& id) noexcept {
  return const_cast<Node*>(std::as_const(*this).find(id));
}

const SketchNode* ExplorationGraph::find_sketch(const NodeId& id) const noexcept {
  const Node* n = find(id);
  return n ? std::get_if<SketchNode>(n) : nullptr;
}

const OperatorNode* ExplorationGraph::find_operator(const NodeId& id) const noexcept {
  const Node* n = find(id);
  return n ? std::get_if<OperatorNode>(n) : nullptr;
}

const SketchNode& ExplorationGraph::sketch(const NodeId& id) const {
  const Node* n = find(id);
  if (!n) throw GraphError(GraphErrc::unknown_node, id.str());
  const auto* s = std::get_if<SketchNode>(n);
  if (!s) throw GraphError(GraphErrc::not_a_sketch, id.str());
  return *s;
}

const OperatorNode& ExplorationGraph::operator_node(const NodeId& id) const {
  const OperatorNode* op = find_operator(id);
  if (!op) throw GraphError(GraphErrc::unknown_operator, id.str());
  return *op;
}

OperatorNode& ExplorationGraph::operator_mut(const NodeId& id) {
  return const_cast<OperatorNode&>(operator_node(id));
}

std::optional<NodeId> ExplorationGraph::root() const {
  for (const Node& n : nodes_) {
    if (const auto* s = std::get_if<SketchNode>(&n); s && s->is_root()) return s->id;
  }
  return std::nullopt;
}

std::vector<NodeId> ExplorationGraph::parents(const NodeId& id) const {
  std::vector<NodeId> out;
  for (const Edge& e : edges_) {
    if (e.target == id) out.push_back(e.source);
  }
  return out;
}

std::vector<NodeId> ExplorationGraph::children(const NodeId& id) const {
  std::vector<NodeId> out;
  for (const Edge& e : edges_) {
    if (e.source == id) out.push_back(e.target);
  }
  return out;
}

std::vector<NodeId> ExplorationGraph::descendants(const NodeId& id) const {
  std::vector<NodeId> out;
  std::unordered_set<NodeId> seen{id};
  std::deque<NodeId> queue{id};
  while (!queue.empty()) {
    NodeId current = queue.front();
    queue.pop_front();
    for (const NodeId& child : children(current)) {
      if (seen.insert(child).second) {
        out.push_back(child);
        queue.push_back(child);
      }
    }
  }
  return out;
}

std::vector<NodeId> ExplorationGraph::operator_inputs(const NodeId& op) const {
  std::vector<NodeId> out;
  for (const NodeId& p : parents(op)) {
    if (find_sketch(p)) out.push_back(p);
  }
  return out;
}

std::optional<NodeId> ExplorationGraph::output_of(const NodeId& op) const {
  for (const NodeId& c : children(op)) {
    if (find_sketch(c)) return c;
  }
  return std::nullopt;
}

bool ExplorationGraph::has_edge(const NodeId& source, const NodeId& target) const noexcept {
  return std::any_of(edges_.begin(), edges_.end(),
                     [&](const Edge& e) { return e.source == source && e.target == target; });
}

std::optional<NodeId> ExplorationGraph::nearest_sketch_ancestor(const NodeId& id) const {
  std::unordered_set<NodeId> seen;
  std::optional<NodeId> current = id;
  while (current && seen.insert(*current).second) {
    auto ps = parents(*current);
    if (ps.empty()) return std::nullopt;
    for (const NodeId& p : ps) {
      if (find_sketch(p)) return p;
    }
    current = ps.front();
  }
  return std::nullopt;
}

// -- mutation ---------------------------------------------------------------

NodeId ExplorationGraph::fresh_id() {
  for (;;) {
    NodeId id = ids_.next();
    if (!contains(id)) return id;
  }
}

void ExplorationGraph::mark_descendants_stale(const NodeId& id) {
  for (const NodeId& d : descendants(id)) stale_.insert(d);
}

NodeId ExplorationGraph::add_root(std::string code) {
  if (auto existing = root()) throw GraphError(GraphErrc::root_exists, existing->str());
  NodeId id = fresh_id();
  nodes_.emplace_back(SketchNode{id, std::nullopt, std::move(code), Size{}, Layout{}});
  return id;
}

NodeId ExplorationGraph::apply_operator(OperatorKind kind, std::span<const NodeId> inputs,
                                        std::optional<std::string> prompt) {
  const std::size_t arity = input_arity(kind);
  if (inputs.size() != arity) {
    throw GraphError(GraphErrc::arity_mismatch,
                     std::string(to_string(kind)) + " takes " + std::to_string(arity) +
                         " input(s), got " + std::to_string(inputs.size()));
  }
  if (arity == 2 && inputs[0] == inputs[1]) {
    throw GraphError(GraphErrc::arity_mismatch,
                     std::string(to_string(kind)) + " needs two distinct inputs");
  }
  for (const NodeId& in : inputs) (void)sketch(in);

  switch (kind) {
    case OperatorKind::modify:
    case OperatorKind::extract:
      if (blank(prompt)) throw GraphError(GraphErrc::missing_prompt, std::string(to_string(kind)));
      break;
    case OperatorKind::merge:
      if (blank(prompt)) prompt.reset();
      break;
    case OperatorKind::duplicate:
    case OperatorKind::branch:
    case OperatorKind::diff:
      if (!blank(prompt)) {
        throw GraphError(GraphErrc::unexpected_prompt, std::string(to_string(kind)));
      }
      prompt.reset();
      break;
  }

  NodeId id = fresh_id();
  nodes_.emplace_back(OperatorNode{id, kind, std::move(prompt), RunState{}, std::nullopt});
  for (const NodeId& in : inputs) edges_.push_back(Edge{in, id});
  return id;
}

NodeId ExplorationGraph::attach_result(const NodeId& op_id, std::string code,
                                       std::optional<std::string> annotation) {
  OperatorNode& op = operator_mut(op_id);
  if (!produces_sketch(op.kind)) {
    throw GraphError(GraphErrc::wrong_kind,
                     std::string(to_string(op.kind)) + " operators do not produce sketches");
  }
  if (auto out = output_of(op_id)) {
    throw GraphError(GraphErrc::already_attached, op_id.str() + " already produced " + out->str());
  }
  op.run_state = RunState{RunStatus::succeeded, {}};
  if (annotation) op.annotation = std::move(annotation);
  stale_.erase(op_id);

  std::optional<NodeId> source = nearest_sketch_ancestor(op_id);
  if (!source) source = root();
  NodeId id = fresh_id();
  // `op` may dangle after this push_back.
  nodes_.emplace_back(SketchNode{id, source, std::move(code), Size{}, Layout{}});
  edges_.push_back(Edge{op_id, id});
  return id;
}

void ExplorationGraph::record_annotation(const NodeId& op_id, std::string annotation) {
  OperatorNode& op = operator_mut(op_id);
  op.annotation = std::move(annotation);
  op.run_state = RunState{RunStatus::succeeded, {}};
  stale_.erase(op_id);
}

void ExplorationGraph::mark_pending(const NodeId& op_id) {
  operator_mut(op_id).run_state = RunState{};
}

void ExplorationGraph::mark_failed(const NodeId& op_id, std::string message) {
  operator_mut(op_id).run_state = RunState::failed(std::move(message));
}

void ExplorationGraph::edit_code(const NodeId& sketch_id, std::string code) {
  auto& s = const_cast<SketchNode&>(sketch(sketch_id));
  s.source_code = std::move(code);
  stale_.erase(sketch_id);
  mark_descendants_stale(sketch_id);
}

std::set<NodeId> ExplorationGraph::rerun_operator(const NodeId& op_id, std::string code) {
  OperatorNode& op = operator_mut(op_id);
  auto out = output_of(op_id);
  if (!out) throw GraphError(GraphErrc::never_run, op_id.str() + " has no output sketch");
  op.run_state = RunState{RunStatus::succeeded, {}};
  stale_.erase(op_id);

  auto& target = const_cast<SketchNode&>(sketch(*out));
  target.source_code = std::move(code);
  stale_.erase(*out);

  std::set<NodeId> deeper;
  for (const NodeId& d : descendants(*out)) deeper.insert(d);
  stale_.insert(deeper.begin(), deeper.end());
  return deeper;
}

void ExplorationGraph::delete_node(const NodeId& id) {
  const Node* node = find(id);
  if (!node) throw GraphError(GraphErrc::unknown_node, id.str());
  if (const auto* s = std::get_if<SketchNode>(node); s && s->is_root()) {
    throw GraphError(GraphErrc::cannot_delete_root, id.str());
  }

  const std::vector<NodeId> former_parents = parents(id);
  const std::vector<NodeId> former_children = children(id);
  std::optional<NodeId> parent;
  if (!former_parents.empty()) parent = former_parents.front();

  std::erase_if(edges_, [&](const Edge& e) { return e.source == id || e.target == id; });
  std::erase_if(nodes_, [&](const Node& n) { return node_id(n) == id; });
  stale_.erase(id);

  if (parent) {
    for (const NodeId& child : former_children) {
      if (!has_edge(*parent, child)) edges_.push_back(Edge{*parent, child});
    }
  }
  tombstones_.push_back(Tombstone{id, parent});
}

// -- validation -------------------------------------------------------------

std::vector<Violation> ExplorationGraph::validate() const {
  std::vector<Violation> out;
  auto report = [&](std::string rule, std::string subject, std::string message) {
    out.push_back(Violation{std::move(rule), std::move(subject), std::move(message)});
  };

  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const NodeId& id = node_id(nodes_[i]);
    if (!index.emplace(id, i).second) {
      report("duplicate id", id.str(), "node id " + id.str() + " appears more than once");
    }
  }

  std::map<NodeId, std::size_t> inbound;
  std::map<NodeId, std::vector<NodeId>> adjacency;
  std::set<std::string> edge_ids;
  for (const Edge& e : edges_) {
    const std::string eid = e.id();
    if (!edge_ids.insert(eid).second) {
      report("duplicate edge", eid, "edge " + eid + " appears more than once");
      continue;
    }
    const bool has_source = index.contains(e.source);
    const bool has_target = index.contains(e.target);
    if (!has_source || !has_target) {
      report("dangling edge", eid,
             "edge " + eid + " refers to missing node " +
                 (has_source ? e.target.str() : e.source.str()));
      continue;
    }
    ++inbound[e.target];
    adjacency[e.source].push_back(e.target);
  }

  // Kahn's algorithm; whatever cannot be ordered sits on or behind a cycle.
  {
    std::map<NodeId, std::size_t> remaining = inbound;
    std::deque<NodeId> ready;
    for (const auto& [id, i] : index) {
      if (remaining[id] == 0) ready.push_back(id);
    }
    std::size_t ordered = 0;
    while (!ready.empty()) {
      NodeId current = ready.front();
      ready.pop_front();
      ++ordered;
      for (const NodeId& next : adjacency[current]) {
        if (--remaining[next] == 0) ready.push_back(next);
      }
    }
    if (ordered < index.size()) {
      for (const Node& n : nodes_) {
        const NodeId& id = node_id(n);
        if (remaining[id] > 0) {
          report("cycle", id.str(), "node " + id.str() + " lies on a cycle");
          break;
        }
      }
    }
  }

  std::size_t roots = 0;
  for (const Node& n : nodes_) {
    const NodeId& id = node_id(n);
    const std::size_t in = inbound.contains(id) ? inbound.at(id) : 0;
    if (const auto* s = std::get_if<SketchNode>(&n)) {
      if (s->size.width <= 0 || s->size.height <= 0) {
        report("invalid size", id.str(), "sketch " + id.str() + " has a non-positive size");
      }
      if (s->is_root()) {
        ++roots;
        if (in != 0) report("root has parent", id.str(), "root " + id.str() + " has an inbound edge");
      } else if (in == 0) {
        report("orphan sketch", id.str(), "sketch " + id.str() + " has no inbound edge");
      } else if (in > 1) {
        report("multiple parents", id.str(),
               "sketch " + id.str() + " has " + std::to_string(in) + " inbound edges");
      }
    } else {
      const auto& op = std::get<OperatorNode>(n);
      if (in == 0) {
        report("operator without input", id.str(), "operator " + id.str() + " has no input");
      } else if (in > input_arity(op.kind)) {
        report("too many inputs", id.str(),
               "operator " + id.str() + " has " + std::to_string(in) + " inputs");
      }
      const bool prompt_required =
          op.kind == OperatorKind::modify || op.kind == OperatorKind::extract;
      const bool prompt_forbidden = op.kind == OperatorKind::duplicate ||
                                    op.kind == OperatorKind::branch ||
                                    op.kind == OperatorKind::diff;
      if (prompt_required && blank(op.prompt)) {
        report("missing prompt", id.str(), "operator " + id.str() + " needs a prompt");
      }
      if (prompt_forbidden && op.prompt) {
        report("unexpected prompt", id.str(), "operator " + id.str() + " takes no prompt");
      }
    }
  }
  if (!nodes_.empty() && roots == 0) report("missing root", graph_id_, "graph has no root sketch");
  if (roots > 1) report("multiple roots", graph_id_, std::to_string(roots) + " root sketches");

  for (const NodeId& id : stale_) {
    if (!index.contains(id)) {
      report("stale entry", id.str(), "stale set names missing node " + id.str());
    }
  }
  return out;
}

}  // namespace spellgraph
