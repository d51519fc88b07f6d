#include <doctest.h>

#include <random>

#include "support/oracles.hpp"
#include "support/properties.hpp"
#include "support/random_graph.hpp"

using namespace spellgraph;
using namespace spellgraph::testing;

namespace {

constexpr int kGraphs = 500;

template <typename Check>
void for_random_graphs(std::uint64_t seed, Check&& check) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < kGraphs; ++i) {
    const ExplorationGraph g = random_graph(rng);
    const Failure f = check(g, rng);
    INFO("graph #", i, " of seed ", seed);
    REQUIRE_MESSAGE(!f, *f);
  }
}

}  // namespace

TEST_CASE("generated graphs are valid and within bounds") {
  std::mt19937_64 rng(11);
  std::size_t stale_seen = 0, failed_seen = 0, tombstones_seen = 0;
  for (int i = 0; i < kGraphs; ++i) {
    const ExplorationGraph g = random_graph(rng);
    CHECK(g.nodes().size() <= 50);
    CHECK(g.validate().empty());
    CHECK(structural_problems(g).empty());
    stale_seen += !g.stale().empty();
    tombstones_seen += !g.tombstones().empty();
    for (const Node& n : g.nodes()) {
      const auto* op = std::get_if<OperatorNode>(&n);
      failed_seen += op && op->run_state.status == RunStatus::failed;
    }
  }
  CHECK(stale_seen > 0);
  CHECK(failed_seen > 0);
  CHECK(tombstones_seen > 0);
}

TEST_CASE("delete reattaches children to the first parent") {
  for_random_graphs(101, [](const ExplorationGraph& g, std::mt19937_64& rng) {
    return check_delete_reattachment(g, rng);
  });
}

TEST_CASE("rerun marks exactly the strict descendants stale") {
  for_random_graphs(202, [](const ExplorationGraph& g, std::mt19937_64& rng) {
    return check_one_layer_rerun(g, rng);
  });
}

TEST_CASE("operators never change existing nodes") {
  for_random_graphs(303, [](const ExplorationGraph& g, std::mt19937_64& rng) {
    return check_immutability(g, rng);
  });
}

TEST_CASE("serialize then deserialize is the identity") {
  for_random_graphs(404, [](const ExplorationGraph& g, std::mt19937_64&) { return check_round_trip(g); });
}
