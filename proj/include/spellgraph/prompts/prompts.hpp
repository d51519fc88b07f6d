#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spellgraph::prompts {

enum class Role { system, user, assistant };

std::string_view to_string(Role role) noexcept;

struct ChatMessage {
  Role role;
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// Which backend route a bundle was composed for.
enum class Route { modify, merge, extract, diff, autocomplete, semantic_phase1, semantic_phase2 };

std::string_view to_string(Route route) noexcept;
std::optional<Route> parse_route(std::string_view text) noexcept;

/// [system configuration, few-shot context..., user input]
struct PromptBundle {
  Route route;
  std::vector<ChatMessage> messages;
  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

/// Empty when the bundle is well formed: system first, user last, the
/// context in between alternating user/assistant, no empty content.
std::vector<std::string> check_bundle(const PromptBundle& bundle);

/// Markers the model wraps generated code in, emitted as `//TOKEN` lines.
struct CodeDelimiters {
  std::string start_token = "BEGIN-SKETCH";
  std::string end_token = "END-SKETCH";

  std::string start_line() const { return "//" + start_token; }
  std::string end_line() const { return "//" + end_token; }
  friend bool operator==(const CodeDelimiters&, const CodeDelimiters&) = default;
};

/// Throws std::invalid_argument if the tokens are empty, equal, or occur in
/// any few-shot example body.
void check_delimiters(const CodeDelimiters& delimiters);

class PromptError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The shared restrictions block appended to code-producing system texts.
std::string_view base_restrictions() noexcept;

/// System configuration text for a route.
std::string system_text(Route route);
/// Few-shot user/assistant pairs for a route (empty for extract, diff and
/// semantic phase 1).
std::vector<ChatMessage> few_shot_context(Route route, const CodeDelimiters& delimiters = {});

PromptBundle compose_modify(std::string_view code, std::string_view variation_prompt,
                            const CodeDelimiters& delimiters = {});
PromptBundle compose_merge(std::string_view first_code, std::string_view second_code,
                           std::optional<std::string_view> merge_prompt = std::nullopt,
                           const CodeDelimiters& delimiters = {});
PromptBundle compose_autocomplete(std::string_view partial_prompt, std::string_view sketch_code);
PromptBundle compose_extract(std::string_view code, std::string_view extraction_prompt);
PromptBundle compose_diff(std::string_view first_code, std::string_view second_code);

/// Stand-in for the phase-one answer when phase two is composed up front.
inline constexpr std::string_view kSemanticMapPlaceholder = "${SEMANTIC_MAP}";

/// Phase one asks for key phrases and the globals they map to; phase two asks
/// for the code, with `semantic_map` (the phase-one answer) interpolated.
std::pair<PromptBundle, PromptBundle> compose_semantic_pipeline(
    std::string_view modify_prompt, std::string_view code,
    std::string_view semantic_map = kSemanticMapPlaceholder, const CodeDelimiters& delimiters = {});

}  // namespace spellgraph::prompts
