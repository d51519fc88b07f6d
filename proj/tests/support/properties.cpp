#include "support/properties.hpp"

#include <algorithm>

#include "spellgraph/graph/graph_json.hpp"
#include "support/oracles.hpp"
#include "support/random_graph.hpp"

namespace spellgraph::testing {

namespace {

std::string ids(const std::set<NodeId>& set) {
  std::string out = "{";
  for (const NodeId& id : set) {
    if (out.size() > 1) out += ',';
    out += id.str();
  }
  return out + "}";
}

Failure clean(const ExplorationGraph& g, const std::string& when) {
  if (const auto v = g.validate(); !v.empty()) {
    return when + ": validate reports " + v.front().rule + " on " + v.front().subject;
  }
  if (const auto p = structural_problems(g); !p.empty()) return when + ": " + p.front();
  return std::nullopt;
}

}  // namespace

Failure check_delete_reattachment(const ExplorationGraph& original, std::mt19937_64& rng) {
  if (original.nodes().size() < 2) return std::nullopt;
  ExplorationGraph g = original;
  const std::size_t index =
      1 + std::uniform_int_distribution<std::size_t>(0, g.nodes().size() - 2)(rng);
  const NodeId victim = node_id(g.nodes()[index]);

  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  for (const Edge& e : g.edges()) {
    if (e.target == victim && !parent) parent = e.source;
    if (e.source == victim) children.push_back(e.target);
  }
  std::set<NodeId> expected = reachable_from_root(g);
  expected.erase(victim);
  auto codes = sketch_codes(g);
  codes.erase(victim);

  g.delete_node(victim);

  if (g.contains(victim)) return "deleted node " + victim.str() + " still present";
  if (const std::set<NodeId> got = reachable_from_root(g); got != expected) {
    return "reachable set after deleting " + victim.str() + " is " + ids(got) + ", expected " +
           ids(expected);
  }
  for (const NodeId& c : children) {
    const bool linked = std::any_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
      return e.source == *parent && e.target == c;
    });
    if (!linked) return "child " + c.str() + " not reattached to " + parent->str();
  }
  if (sketch_codes(g) != codes) return "delete changed sketch code";
  if (g.tombstones().empty() || g.tombstones().back().deleted != victim ||
      g.tombstones().back().former_parent != parent) {
    return "missing tombstone for " + victim.str();
  }
  return clean(g, "after deleting " + victim.str());
}

Failure check_one_layer_rerun(const ExplorationGraph& original, std::mt19937_64& rng) {
  std::vector<std::pair<NodeId, NodeId>> candidates;  // operator, output sketch
  for (const Node& n : original.nodes()) {
    if (!std::holds_alternative<OperatorNode>(n)) continue;
    for (const Edge& e : original.edges()) {
      const Node* target = e.source == node_id(n) ? original.find(e.target) : nullptr;
      if (target && std::holds_alternative<SketchNode>(*target)) {
        candidates.emplace_back(node_id(n), e.target);
        break;
      }
    }
  }
  if (candidates.empty()) return std::nullopt;
  const auto [op, output] =
      candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];

  ExplorationGraph g = original;
  const std::string code = "// regenerated\n" + random_code(rng);
  const std::set<NodeId> expected = strict_descendants(g, output);
  auto codes = sketch_codes(g);
  codes[output] = code;

  const std::set<NodeId> returned = g.rerun_operator(op, code);

  if (returned != expected) {
    return "rerun " + op.str() + " returned " + ids(returned) + ", expected " + ids(expected);
  }
  if (sketch_codes(g) != codes) return "rerun " + op.str() + " changed more than one sketch";
  for (const NodeId& id : expected) {
    if (!g.is_stale(id)) return "descendant " + id.str() + " not marked stale";
  }
  if (g.is_stale(output) || g.is_stale(op)) return "rerun left its own layer stale";
  return clean(g, "after rerunning " + op.str());
}

Failure check_immutability(const ExplorationGraph& original, std::mt19937_64& rng) {
  ExplorationGraph g = original;
  const std::vector<Node> before = g.nodes();
  const std::vector<Edge> edges_before = g.edges();
  const std::size_t steps = 1 + std::uniform_int_distribution<std::size_t>(0, 5)(rng);

  for (std::size_t i = 0; i < steps; ++i) {
    std::vector<NodeId> sketches;
    for (const Node& n : g.nodes()) {
      if (std::holds_alternative<SketchNode>(n)) sketches.push_back(node_id(n));
    }
    std::uniform_int_distribution<std::size_t> any(0, sketches.size() - 1);
    NodeId op = sketches.front();
    if (sketches.size() >= 2 && std::bernoulli_distribution(0.3)(rng)) {
      const NodeId a = sketches[any(rng)];
      NodeId b = sketches[any(rng)];
      while (b == a) b = sketches[any(rng)];
      const NodeId in[] = {a, b};
      op = g.apply_operator(OperatorKind::merge, in);
    } else {
      const NodeId in[] = {sketches[any(rng)]};
      op = g.apply_operator(OperatorKind::modify, in, "vary " + std::to_string(i));
    }
    g.attach_result(op, random_code(rng));
  }

  for (std::size_t i = 0; i < before.size(); ++i) {
    if (!(g.nodes()[i] == before[i])) return "pre-existing node " + node_id(before[i]).str() + " changed";
  }
  if (!std::equal(edges_before.begin(), edges_before.end(), g.edges().begin())) {
    return "pre-existing edges changed";
  }
  if (g.stale() != original.stale()) return "operators changed the stale set";
  return clean(g, "after operators");
}

Failure check_round_trip(const ExplorationGraph& g) {
  const std::string text = serialize(g);
  ExplorationGraph back;
  try {
    back = deserialize(text, g.graph_id());
  } catch (const std::exception& e) {
    return std::string("deserialize failed: ") + e.what();
  }
  if (!(back == g)) return "deserialized graph differs from the original";
  if (serialize(back) != text) return "re-serialized bytes differ";
  return std::nullopt;
}

}  // namespace spellgraph::testing
