#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "spellgraph/gateway/gateway.hpp"
#include "spellgraph/prompts/prompts.hpp"

namespace spellgraph::service {

struct ServiceConfig {
  int port = 8080;
  std::string host = "127.0.0.1";
  /// Graph files live in `data_dir/graphs`. Empty keeps everything in memory.
  std::filesystem::path data_dir = "data";
  gateway::ProviderKind provider = gateway::ProviderKind::mock;
  std::size_t max_in_flight = 4;
  /// Threads running operator jobs.
  std::size_t workers = 4;
  prompts::CodeDelimiters delimiters;
  /// Extra mock fixtures (`<route>.<digest>.txt`), loaded on top of the samples.
  std::optional<std::filesystem::path> fixtures_dir;

  /// Throws std::invalid_argument naming the first bad field.
  void validate() const;
};

}  // namespace spellgraph::service
