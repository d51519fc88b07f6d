#include <doctest.h>

#include <regex>
#include <set>

#include "spellgraph/graph/node_id.hpp"

using spellgraph::NodeId;
using spellgraph::NodeIdGenerator;

TEST_CASE("node ids accept exactly six lowercase alphanumerics") {
  CHECK(NodeId::is_valid("wgtt0s"));
  CHECK(NodeId::is_valid("ic45uc"));
  CHECK_FALSE(NodeId::is_valid("WGTT0S"));
  CHECK_FALSE(NodeId::is_valid("wgtt0"));
  CHECK_FALSE(NodeId::is_valid("wgtt0s1"));
  CHECK_FALSE(NodeId::is_valid("wg-t0s"));
  CHECK_FALSE(NodeId::is_valid(""));
  CHECK(NodeId::parse("wgtt0s").str() == "wgtt0s");
  CHECK_THROWS_AS(NodeId::parse("root"), std::invalid_argument);
}

TEST_CASE("generated ids match the id pattern and are reproducible from a seed") {
  const std::regex pattern("[a-z0-9]{6}");
  NodeIdGenerator a(42), b(42);
  std::set<std::string> seen;
  for (int i = 0; i < 2000; ++i) {
    const NodeId id = a.next();
    CHECK(std::regex_match(id.str(), pattern));
    CHECK(id == b.next());
    seen.insert(id.str());
  }
  CHECK(seen.size() > 1990);
}
