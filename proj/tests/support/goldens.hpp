#pragma once

#include <string>
#include <vector>

#include "spellgraph/prompts/prompts.hpp"

namespace spellgraph::testing {

/// Reads a file relative to the source tree, byte for byte.
std::string read_source_file(const std::string& relative_path);

/// Transcribed system configuration for a route.
std::string golden_system(prompts::Route route);

/// Transcribed few-shot context for a route with the delimiter placeholders
/// replaced by the given tokens. Empty for routes without one.
std::vector<prompts::ChatMessage> golden_context(prompts::Route route,
                                                 const prompts::CodeDelimiters& delimiters = {});

}  // namespace spellgraph::testing
