#pragma once

#include <cstddef>
#include <string>

#include "spellgraph/gateway/gateway.hpp"

namespace spellgraph::service {

/// A small session the built-in mock answers can carry end to end: the
/// few-shot variation sketch as a root, its bounce prompt, and the two
/// few-shot merge snippets.
struct SampleSession {
  std::string root_code;
  std::string modify_prompt;
  std::string merge_first;
  std::string merge_second;
  std::string autocomplete_partial = "make it more";
  /// Applied to the modify result.
  std::string semantic_prompt = "use Perlin noise to make each circle appear like a mountain range";
};

SampleSession sample_session(const prompts::CodeDelimiters& delimiters = {});

/// Registers mock answers for the sample session. Returns how many.
std::size_t register_sample_fixtures(gateway::MockProvider& mock,
                                     const prompts::CodeDelimiters& delimiters = {});

}  // namespace spellgraph::service
