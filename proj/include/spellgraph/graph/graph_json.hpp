#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "spellgraph/graph/exploration_graph.hpp"

namespace spellgraph {

/// Malformed graph document. `path()` locates the offending field, e.g.
/// "nodes[0].data.sourceCode" or "edges[2]".
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error(path + ": " + message), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Graph document: {"nodes":[...],"edges":[...]} in the React Flow node/edge
/// shape, plus "stale" and "tombstones" arrays when they are non-empty.
/// Keys keep their canonical order.
nlohmann::ordered_json to_json(const ExplorationGraph& graph);
/// Canonical text: two-space indentation, canonical key order.
std::string serialize(const ExplorationGraph& graph);

/// Parses and checks field shapes only. Throws SchemaError.
ExplorationGraph from_json(const nlohmann::ordered_json& document, std::string graph_id);
/// Parses, then runs validate(); any violation becomes a SchemaError naming
/// the offending node or edge.
ExplorationGraph deserialize(std::string_view text, std::string graph_id);

/// Re-emits an arbitrary JSON text with canonical formatting, preserving its
/// key order. Used to compare documents byte-for-byte.
std::string canonical_text(std::string_view json_text);

}  // namespace spellgraph
