#include "spellgraph/graph/graph_json.hpp"

#include <cmath>
#include <limits>

namespace spellgraph {

using nlohmann::ordered_json;

namespace {

constexpr std::string_view kSketchType = "sketch";
constexpr std::string_view kOperatorType = "operator";
constexpr std::string_view kEdgeType = "connected";
constexpr std::string_view kRootSource = "root";

// Whole numbers print without a fractional part, as the UI emits them.
ordered_json number(double v) {
  if (std::isfinite(v) && std::trunc(v) == v && std::fabs(v) < 9007199254740992.0) {
    return static_cast<std::int64_t>(v);
  }
  return v;
}

ordered_json point_json(const Point& p) { return {{"x", number(p.x)}, {"y", number(p.y)}}; }

ordered_json optional_text(const std::optional<std::string>& text) {
  return text ? ordered_json(*text) : ordered_json(nullptr);
}

ordered_json node_json(const Node& node) {
  const Layout& layout = std::visit([](const auto& n) -> const Layout& { return n.layout; }, node);
  ordered_json j;
  j["width"] = layout.width;
  j["height"] = layout.height;
  j["id"] = node_id(node).str();
  if (const auto* s = std::get_if<SketchNode>(&node)) {
    j["type"] = kSketchType;
    j["data"] = {
        {"sourceNode", s->source_node ? s->source_node->str() : std::string(kRootSource)},
        {"sourceCode", s->source_code},
        {"size", {{"width", s->size.width}, {"height", s->size.height}}},
    };
  } else {
    const auto& op = std::get<OperatorNode>(node);
    j["type"] = kOperatorType;
    ordered_json data;
    data["kind"] = to_string(op.kind);
    data["prompt"] = optional_text(op.prompt);
    data["runState"] = to_string(op.run_state.status);
    if (op.run_state.status == RunStatus::failed) data["runError"] = op.run_state.error;
    data["annotation"] = optional_text(op.annotation);
    j["data"] = std::move(data);
  }
  j["position"] = point_json(layout.position);
  j["sourcePosition"] = "right";
  j["targetPosition"] = "left";
  j["selected"] = layout.selected;
  j["positionAbsolute"] = point_json(layout.position_absolute);
  return j;
}

ordered_json edge_json(const Edge& e) {
  return {{"id", e.id()},
          {"source", e.source.str()},
          {"target", e.target.str()},
          {"type", kEdgeType},
          {"selected", e.selected}};
}

// Field access with a JSON-path trail for error messages.
class Reader {
 public:
  Reader(const ordered_json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const ordered_json& value() const { return value_; }

  [[noreturn]] void fail(const std::string& message) const { throw SchemaError(path_, message); }

  Reader at(std::string_view key) const {
    if (!value_.is_object()) fail("expected an object");
    auto it = value_.find(std::string(key));
    std::string sub = path_.empty() ? std::string(key) : path_ + "." + std::string(key);
    if (it == value_.end()) throw SchemaError(sub, "missing field");
    return Reader(*it, std::move(sub));
  }
  bool has(std::string_view key) const {
    return value_.is_object() && value_.contains(std::string(key));
  }
  Reader at(std::size_t i) const { return Reader(value_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::string text() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }
  std::optional<std::string> optional_text() const {
    if (value_.is_null()) return std::nullopt;
    return text();
  }
  double real() const {
    if (!value_.is_number()) fail("expected a number");
    return value_.get<double>();
  }
  int integer() const {
    double v = real();
    if (std::trunc(v) != v || std::fabs(v) > std::numeric_limits<int>::max()) {
      fail("expected an integer");
    }
    return static_cast<int>(v);
  }
  bool boolean() const {
    if (!value_.is_boolean()) fail("expected a boolean");
    return value_.get<bool>();
  }
  std::size_t array_size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
  }
  NodeId node_id() const {
    std::string s = text();
    if (!NodeId::is_valid(s)) fail("invalid node id '" + s + "'");
    return NodeId::parse(s);
  }
  void expect_literal(std::string_view literal) const {
    if (text() != literal) fail("expected \"" + std::string(literal) + "\"");
  }

 private:
  const ordered_json& value_;
  std::string path_;
};

Point read_point(const Reader& r) { return Point{r.at("x").real(), r.at("y").real()}; }

Layout read_layout(const Reader& r) {
  Layout layout;
  layout.width = r.at("width").integer();
  layout.height = r.at("height").integer();
  layout.position = read_point(r.at("position"));
  layout.position_absolute =
      r.has("positionAbsolute") ? read_point(r.at("positionAbsolute")) : layout.position;
  layout.selected = r.has("selected") ? r.at("selected").boolean() : false;
  if (r.has("sourcePosition")) r.at("sourcePosition").expect_literal("right");
  if (r.has("targetPosition")) r.at("targetPosition").expect_literal("left");
  return layout;
}

Node read_node(const Reader& r) {
  const NodeId id = r.at("id").node_id();
  const std::string type = r.at("type").text();
  const Reader data = r.at("data");
  if (type == kSketchType) {
    SketchNode s{id, std::nullopt, {}, {}, read_layout(r)};
    const Reader source = data.at("sourceNode");
    if (source.text() != kRootSource) s.source_node = source.node_id();
    s.source_code = data.at("sourceCode").text();
    const Reader size = data.at("size");
    s.size = Size{size.at("width").integer(), size.at("height").integer()};
    return s;
  }
  if (type == kOperatorType) {
    const Reader kind_field = data.at("kind");
    auto kind = parse_operator_kind(kind_field.text());
    if (!kind) kind_field.fail("unknown operator kind '" + kind_field.text() + "'");
    OperatorNode op{id, *kind, std::nullopt, RunState{}, std::nullopt, read_layout(r)};
    if (data.has("prompt")) op.prompt = data.at("prompt").optional_text();
    const Reader state = data.at("runState");
    const std::string status = state.text();
    if (status == "pending") {
      op.run_state = RunState{};
    } else if (status == "succeeded") {
      op.run_state = RunState{RunStatus::succeeded, {}};
    } else if (status == "failed") {
      op.run_state = RunState::failed(data.has("runError") ? data.at("runError").text() : "");
    } else {
      state.fail("unknown run state '" + status + "'");
    }
    if (data.has("annotation")) op.annotation = data.at("annotation").optional_text();
    return op;
  }
  r.at("type").fail("unknown node type '" + type + "'");
}

Edge read_edge(const Reader& r) {
  Edge e{r.at("source").node_id(), r.at("target").node_id(),
         r.has("selected") ? r.at("selected").boolean() : false};
  const Reader id = r.at("id");
  if (id.text() != e.id()) id.fail("edge id must be \"" + e.id() + "\"");
  if (r.has("type")) r.at("type").expect_literal(kEdgeType);
  return e;
}

std::string locate(const ExplorationGraph& g, const Violation& v) {
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (g.edges()[i].id() == v.subject) return "edges[" + std::to_string(i) + "]";
  }
  for (std::size_t i = 0; i < g.nodes().size(); ++i) {
    if (node_id(g.nodes()[i]).str() == v.subject) return "nodes[" + std::to_string(i) + "]";
  }
  return "$";
}

}  // namespace

ordered_json to_json(const ExplorationGraph& graph) {
  ordered_json doc;
  doc["nodes"] = ordered_json::array();
  for (const Node& n : graph.nodes()) doc["nodes"].push_back(node_json(n));
  doc["edges"] = ordered_json::array();
  for (const Edge& e : graph.edges()) doc["edges"].push_back(edge_json(e));
  if (!graph.stale().empty()) {
    doc["stale"] = ordered_json::array();
    for (const NodeId& id : graph.stale()) doc["stale"].push_back(id.str());
  }
  if (!graph.tombstones().empty()) {
    doc["tombstones"] = ordered_json::array();
    for (const Tombstone& t : graph.tombstones()) {
      doc["tombstones"].push_back(
          {{"deleted", t.deleted.str()},
           {"formerParent", t.former_parent ? ordered_json(t.former_parent->str())
                                            : ordered_json(nullptr)}});
    }
  }
  return doc;
}

std::string serialize(const ExplorationGraph& graph) {
  return to_json(graph).dump(2, ' ', false, ordered_json::error_handler_t::replace);
}

ExplorationGraph from_json(const ordered_json& document, std::string graph_id) {
  const Reader doc(document, "");
  if (!document.is_object()) throw SchemaError("$", "expected a graph object");

  std::vector<Node> nodes;
  const Reader node_list = doc.at("nodes");
  for (std::size_t i = 0, n = node_list.array_size(); i < n; ++i) {
    nodes.push_back(read_node(node_list.at(i)));
  }
  std::vector<Edge> edges;
  const Reader edge_list = doc.at("edges");
  for (std::size_t i = 0, n = edge_list.array_size(); i < n; ++i) {
    edges.push_back(read_edge(edge_list.at(i)));
  }
  std::set<NodeId> stale;
  if (doc.has("stale")) {
    const Reader list = doc.at("stale");
    for (std::size_t i = 0, n = list.array_size(); i < n; ++i) stale.insert(list.at(i).node_id());
  }
  std::vector<Tombstone> tombstones;
  if (doc.has("tombstones")) {
    const Reader list = doc.at("tombstones");
    for (std::size_t i = 0, n = list.array_size(); i < n; ++i) {
      const Reader t = list.at(i);
      Tombstone stone{t.at("deleted").node_id(), std::nullopt};
      if (t.has("formerParent") && !t.at("formerParent").value().is_null()) {
        stone.former_parent = t.at("formerParent").node_id();
      }
      tombstones.push_back(std::move(stone));
    }
  }
  return ExplorationGraph::from_parts(std::move(graph_id), std::move(nodes), std::move(edges),
                                      std::move(stale), std::move(tombstones));
}

ExplorationGraph deserialize(std::string_view text, std::string graph_id) {
  ordered_json document = ordered_json::parse(text, nullptr, false);
  if (document.is_discarded()) throw SchemaError("$", "document is not valid JSON");
  ExplorationGraph graph = from_json(document, std::move(graph_id));
  if (auto violations = graph.validate(); !violations.empty()) {
    const Violation& first = violations.front();
    throw SchemaError(locate(graph, first), first.rule + ": " + first.message);
  }
  return graph;
}

std::string canonical_text(std::string_view json_text) {
  return ordered_json::parse(json_text).dump(2, ' ', false, ordered_json::error_handler_t::replace);
}

}  // namespace spellgraph
