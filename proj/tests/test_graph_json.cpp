#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spellgraph/graph/graph_json.hpp"

using namespace spellgraph;
using nlohmann::ordered_json;

namespace {

std::string read_data(const std::string& name) {
  std::ifstream in(std::string(SPELLGRAPH_SOURCE_DIR) + "/tests/data/" + name, std::ios::binary);
  REQUIRE_MESSAGE(in, "cannot open ", name);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string without_final_newline(std::string s) {
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::vector<std::string> keys(const ordered_json& object) {
  std::vector<std::string> out;
  for (auto it = object.begin(); it != object.end(); ++it) out.push_back(it.key());
  return out;
}

std::string schema_path(std::string_view text) {
  try {
    deserialize(text, "g");
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<accepted>";
}

}  // namespace

TEST_CASE("a node and an edge in the canvas schema") {
  const std::string text = read_data("graph_node_edge.json");
  const ExplorationGraph g = spellgraph::from_json(ordered_json::parse(text), "g");

  REQUIRE(g.nodes().size() == 1);
  const SketchNode& s = g.sketch(NodeId::parse("wgtt0s"));
  CHECK(s.is_root());
  CHECK(s.layout.width == 300);
  CHECK(s.layout.height == 324);
  CHECK(s.size == Size{300, 300});
  CHECK(s.source_code.starts_with("\nfunction setup() {\n  createCanvas(400, 400);"));
  CHECK(s.source_code.ends_with("function draw() {\n\n}\n    "));
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0].id() == "wgtt0s=>ic45uc");

  CHECK(serialize(g) == canonical_text(text));
  CHECK(serialize(g) == without_final_newline(text));

  SUBCASE("the edge's target is not in the file") {
    const auto v = g.validate();
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "dangling edge");
    CHECK(v[0].subject == "wgtt0s=>ic45uc");
    CHECK(schema_path(text) == "edges[0]");
  }
}

TEST_CASE("the same file completed with its target operator") {
  const std::string text = read_data("graph_node_edge_operator.json");
  const ExplorationGraph g = deserialize(text, "g");
  CHECK(g.validate().empty());
  CHECK(g.operator_node(NodeId::parse("ic45uc")).kind == OperatorKind::duplicate);
  CHECK(serialize(g) == without_final_newline(text));
  CHECK(serialize(deserialize(serialize(g), "g")) == serialize(g));
}

TEST_CASE("keys come out in canonical order") {
  ExplorationGraph g("g", 5);
  const NodeId root = g.add_root("x");
  const NodeId in[] = {root};
  const NodeId op = g.apply_operator(OperatorKind::modify, in, "p");
  g.mark_failed(op, "NoFixture");
  g.edit_code(root, "y");
  g.delete_node(op);
  const NodeId op2 = g.apply_operator(OperatorKind::modify, in, "q");
  g.attach_result(op2, "z");
  g.edit_code(root, "w");

  const ordered_json doc = to_json(g);
  CHECK(keys(doc) == std::vector<std::string>{"nodes", "edges", "stale", "tombstones"});
  CHECK(keys(doc["nodes"][0]) ==
        std::vector<std::string>{"width", "height", "id", "type", "data", "position",
                                 "sourcePosition", "targetPosition", "selected",
                                 "positionAbsolute"});
  CHECK(keys(doc["nodes"][0]["data"]) ==
        std::vector<std::string>{"sourceNode", "sourceCode", "size"});
  CHECK(keys(doc["nodes"][1]["data"]) ==
        std::vector<std::string>{"kind", "prompt", "runState", "annotation"});
  CHECK(doc["nodes"][1]["width"] == 120);
  CHECK(doc["nodes"][1]["height"] == 40);
  CHECK(keys(doc["edges"][0]) ==
        std::vector<std::string>{"id", "source", "target", "type", "selected"});
  CHECK(doc["edges"][0]["type"] == "connected");
  CHECK(doc["tombstones"][0]["deleted"] == op.str());
  CHECK(doc["tombstones"][0]["formerParent"] == root.str());

  CHECK(keys(to_json(ExplorationGraph("e"))) == std::vector<std::string>{"nodes", "edges"});
}

TEST_CASE("failed runs keep their error") {
  ExplorationGraph g("g", 6);
  const NodeId in[] = {g.add_root("x")};
  const NodeId op = g.apply_operator(OperatorKind::extract, in, "the stars");
  g.mark_failed(op, "ProviderError: 503");
  const ordered_json data = to_json(g)["nodes"][1]["data"];
  CHECK(data["runState"] == "failed");
  CHECK(data["runError"] == "ProviderError: 503");
  CHECK(deserialize(serialize(g), "g") == g);
}

TEST_CASE("schema errors name the offending field") {
  CHECK(schema_path("[]") == "$");
  CHECK(schema_path("{") == "$");
  CHECK(schema_path(R"({"edges":[]})") == "nodes");
  CHECK(schema_path(R"({"nodes":[{"id":"ABC"}],"edges":[]})") == "nodes[0].id");

  ordered_json doc = ordered_json::parse(read_data("graph_node_edge_operator.json"));
  SUBCASE("wrong field type") {
    doc["nodes"][0]["data"]["sourceCode"] = 5;
    CHECK(schema_path(doc.dump()) == "nodes[0].data.sourceCode");
  }
  SUBCASE("edge id that disagrees with its endpoints") {
    doc["edges"][0]["id"] = "ic45uc=>wgtt0s";
    CHECK(schema_path(doc.dump()) == "edges[0].id");
  }
  SUBCASE("unknown edge type") {
    doc["edges"][0]["type"] = "smoothstep";
    CHECK(schema_path(doc.dump()) == "edges[0].type");
  }
  SUBCASE("unknown operator kind") {
    doc["nodes"][1]["data"]["kind"] = "rebase";
    CHECK(schema_path(doc.dump()) == "nodes[1].data.kind");
  }
  SUBCASE("graph-level violation points at the node") {
    doc["nodes"][1]["data"]["prompt"] = "no prompt allowed";
    CHECK(schema_path(doc.dump()) == "nodes[1]");
  }
}

TEST_CASE("text survives escaping") {
  ExplorationGraph g("g", 8);
  const std::string code = "let s = \"\\u00e9 \xc3\xa9 \xf0\x9f\x8c\x80\";\n\t// </script>\r\n";
  g.add_root(code);
  const ExplorationGraph back = deserialize(serialize(g), "g");
  CHECK(back.sketch(*back.root()).source_code == code);
}

TEST_CASE("fractional coordinates round-trip exactly") {
  ExplorationGraph g("g", 9);
  const NodeId root = g.add_root("");
  std::vector<Node> nodes = g.nodes();
  std::get<SketchNode>(nodes[0]).layout.position = {-123.45, 0.1};
  std::get<SketchNode>(nodes[0]).layout.position_absolute = {1e-7, 2.5};
  const auto moved = ExplorationGraph::from_parts("g", nodes, {}, {}, {});
  const ExplorationGraph back = deserialize(serialize(moved), "g");
  CHECK(back == moved);
  CHECK(back.sketch(root).layout.position.x == -123.45);
}
