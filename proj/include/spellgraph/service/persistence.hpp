#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "spellgraph/graph/exploration_graph.hpp"

namespace spellgraph::service {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Graph ids are 1 to 64 characters of [a-z0-9_-].
bool valid_graph_id(std::string_view id) noexcept;

std::filesystem::path graph_path(const std::filesystem::path& data_dir, std::string_view graph_id);

/// Writes `data_dir/graphs/<id>.json` through a temporary file and a rename,
/// so readers only ever see a complete document. Throws IoError.
void persist(const std::filesystem::path& data_dir, const ExplorationGraph& graph);

/// Throws IoError when the file is missing or unreadable, SchemaError when it
/// does not hold a valid graph.
ExplorationGraph load(const std::filesystem::path& data_dir, const std::string& graph_id);

std::vector<std::string> stored_graph_ids(const std::filesystem::path& data_dir);

}  // namespace spellgraph::service
