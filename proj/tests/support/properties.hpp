#pragma once

#include <optional>
#include <random>
#include <string>

#include "spellgraph/graph/exploration_graph.hpp"

// Graph-semantics properties shared by the unit tests and the acceptance
// binary. Each returns a description of the first failure, or nothing.
namespace spellgraph::testing {

using Failure = std::optional<std::string>;

Failure check_delete_reattachment(const ExplorationGraph& g, std::mt19937_64& rng);
Failure check_one_layer_rerun(const ExplorationGraph& g, std::mt19937_64& rng);
Failure check_immutability(const ExplorationGraph& g, std::mt19937_64& rng);
Failure check_round_trip(const ExplorationGraph& g);

}  // namespace spellgraph::testing
