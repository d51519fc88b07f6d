#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spellgraph/graph/node_id.hpp"

namespace spellgraph {

enum class OperatorKind { modify, merge, duplicate, branch, extract, diff };

std::string_view to_string(OperatorKind kind) noexcept;
std::optional<OperatorKind> parse_operator_kind(std::string_view text) noexcept;

/// Number of sketch inputs an operator consumes when it is created.
std::size_t input_arity(OperatorKind kind) noexcept;
/// Diff operators only annotate; every other kind yields a sketch.
bool produces_sketch(OperatorKind kind) noexcept;

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Size {
  int width = 300;
  int height = 300;
  friend bool operator==(const Size&, const Size&) = default;
};

/// Canvas placement owned by the UI. The engine stores it and never reads it.
struct Layout {
  int width = 300;
  int height = 324;
  Point position;
  Point position_absolute;
  bool selected = false;
  friend bool operator==(const Layout&, const Layout&) = default;
};

struct SketchNode {
  NodeId id;
  /// Sketch this one was derived from; empty only for the root.
  std::optional<NodeId> source_node;
  std::string source_code;
  Size size;
  Layout layout;

  bool is_root() const noexcept { return !source_node.has_value(); }
  friend bool operator==(const SketchNode&, const SketchNode&) = default;
};

enum class RunStatus { pending, succeeded, failed };

std::string_view to_string(RunStatus status) noexcept;

struct RunState {
  RunStatus status = RunStatus::pending;
  std::string error;  // set only when failed

  static RunState failed(std::string message) { return {RunStatus::failed, std::move(message)}; }
  friend bool operator==(const RunState&, const RunState&) = default;
};

struct OperatorNode {
  NodeId id;
  OperatorKind kind;
  std::optional<std::string> prompt;
  RunState run_state;
  /// Diff summaries and recovered merge prompts.
  std::optional<std::string> annotation;
  Layout layout{120, 40, {}, {}, false};

  friend bool operator==(const OperatorNode&, const OperatorNode&) = default;
};

using Node = std::variant<SketchNode, OperatorNode>;

const NodeId& node_id(const Node& node) noexcept;

struct Edge {
  NodeId source;
  NodeId target;
  bool selected = false;

  /// Always `source=>target`.
  std::string id() const { return source.str() + "=>" + target.str(); }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Audit record left behind by delete_node.
struct Tombstone {
  NodeId deleted;
  std::optional<NodeId> former_parent;
  friend bool operator==(const Tombstone&, const Tombstone&) = default;
};

/// One broken invariant. `subject` is the offending node id or edge id.
struct Violation {
  std::string rule;
  std::string subject;
  std::string message;
};

enum class GraphErrc {
  root_exists,
  arity_mismatch,
  missing_prompt,
  unexpected_prompt,
  unknown_node,
  unknown_operator,
  not_a_sketch,
  wrong_kind,
  already_attached,
  never_run,
  cannot_delete_root,
};

std::string_view to_string(GraphErrc code) noexcept;

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrc code, const std::string& detail);
  GraphErrc code() const noexcept { return code_; }

 private:
  GraphErrc code_;
};

/// The branching version tree of one exploration session.
///
/// Sketches and operators are both nodes; every persisted edge is a plain
/// "connected" edge. Operators never overwrite their inputs: apply_operator
/// and attach_result only ever add nodes. Existing code changes only through
/// edit_code (hand edits) and rerun_operator (regeneration), and both mark
/// everything downstream as stale.
///
/// Not internally synchronized; the service serializes writers per graph.
class ExplorationGraph {
 public:
  explicit ExplorationGraph(std::string graph_id = {});
  ExplorationGraph(std::string graph_id, std::uint64_t id_seed);

  /// Assembles a graph from already-parsed parts without validating it.
  static ExplorationGraph from_parts(std::string graph_id, std::vector<Node> nodes,
                                     std::vector<Edge> edges, std::set<NodeId> stale,
                                     std::vector<Tombstone> tombstones);

  const std::string& graph_id() const noexcept { return graph_id_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::set<NodeId>& stale() const noexcept { return stale_; }
  const std::vector<Tombstone>& tombstones() const noexcept { return tombstones_; }
  bool empty() const noexcept { return nodes_.empty(); }

  const Node* find(const NodeId& id) const noexcept;
  const SketchNode* find_sketch(const NodeId& id) const noexcept;
  const OperatorNode* find_operator(const NodeId& id) const noexcept;
  bool contains(const NodeId& id) const noexcept { return find(id) != nullptr; }
  bool is_stale(const NodeId& id) const { return stale_.contains(id); }

  /// Throws GraphError(unknown_node / not_a_sketch).
  const SketchNode& sketch(const NodeId& id) const;
  /// Throws GraphError(unknown_operator).
  const OperatorNode& operator_node(const NodeId& id) const;

  std::optional<NodeId> root() const;
  /// Sources of inbound edges, in edge order.
  std::vector<NodeId> parents(const NodeId& id) const;
  /// Targets of outbound edges, in edge order.
  std::vector<NodeId> children(const NodeId& id) const;
  /// Strict descendants in breadth-first order.
  std::vector<NodeId> descendants(const NodeId& id) const;
  /// Sketch parents of an operator, in edge order.
  std::vector<NodeId> operator_inputs(const NodeId& op) const;
  /// First sketch child of an operator.
  std::optional<NodeId> output_of(const NodeId& op) const;

  NodeId add_root(std::string code);
  NodeId apply_operator(OperatorKind kind, std::span<const NodeId> inputs,
                        std::optional<std::string> prompt = std::nullopt);
  NodeId attach_result(const NodeId& op, std::string code,
                       std::optional<std::string> annotation = std::nullopt);
  /// Completes a non-producing operator (diff) by storing its prose.
  void record_annotation(const NodeId& op, std::string annotation);
  void mark_pending(const NodeId& op);
  void mark_failed(const NodeId& op, std::string message);
  void edit_code(const NodeId& sketch_id, std::string code);
  /// Replaces the output sketch's code; returns its strict descendants, now stale.
  std::set<NodeId> rerun_operator(const NodeId& op, std::string code);
  /// Removes the node and reattaches its children to its first parent.
  void delete_node(const NodeId& id);

  std::vector<Violation> validate() const;

  /// Field-wise equality; the id generator state is not part of a graph's value.
  friend bool operator==(const ExplorationGraph& a, const ExplorationGraph& b);

 private:
  Node* find_mut(const NodeId& id) noexcept;
  OperatorNode& operator_mut(const NodeId& id);
  NodeId fresh_id();
  bool has_edge(const NodeId& source, const NodeId& target) const noexcept;
  void mark_descendants_stale(const NodeId& id);
  std::optional<NodeId> nearest_sketch_ancestor(const NodeId& id) const;

  std::string graph_id_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::set<NodeId> stale_;
  std::vector<Tombstone> tombstones_;
  NodeIdGenerator ids_;
};

}  // namespace spellgraph
