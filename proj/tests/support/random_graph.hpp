#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "spellgraph/graph/exploration_graph.hpp"

namespace spellgraph::testing {

/// Random sketch-ish source text: printable ASCII, tabs, newlines, quotes,
/// backslashes and a little UTF-8.
std::string random_code(std::mt19937_64& rng, std::size_t max_length = 80);

/// A valid graph of at most `max_nodes` nodes grown through the public
/// mutation API: operators of every kind, failed and pending runs, diff
/// annotations, hand edits (so some nodes are stale), deletions and reruns.
/// Layout fields are randomized as well.
ExplorationGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes = 50);

}  // namespace spellgraph::testing
