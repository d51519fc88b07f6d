#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "prompt_texts.hpp"
#include "spellgraph/prompts/prompts.hpp"

namespace spellgraph::prompts {

namespace {

using nlohmann::ordered_json;

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

void require(std::string_view value, std::string_view what) {
  if (blank(value)) throw PromptError("EmptyInput: " + std::string(what) + " must not be empty");
}

// Same bytes JSON.stringify produces for an object of strings.
std::string stringify(const ordered_json& object) {
  return object.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

std::string wrap(std::string_view body, const CodeDelimiters& d) {
  std::string out = d.start_line();
  out += '\n';
  out += body;
  out += '\n';
  out += d.end_line();
  return out;
}

std::string with_restrictions(std::string_view intro) {
  std::string out(intro);
  out += "\n\n";
  out += text::kBaseRestrictions;
  return out;
}

ChatMessage user(std::string content) { return {Role::user, std::move(content)}; }
ChatMessage assistant(std::string content) { return {Role::assistant, std::move(content)}; }

PromptBundle bundle(Route route, std::vector<ChatMessage> context, std::string user_content) {
  PromptBundle b{route, {}};
  b.messages.reserve(context.size() + 2);
  b.messages.push_back({Role::system, system_text(route)});
  for (auto& m : context) b.messages.push_back(std::move(m));
  b.messages.push_back(user(std::move(user_content)));
  return b;
}

}  // namespace

std::string_view to_string(Role role) noexcept {
  switch (role) {
    case Role::system: return "system";
    case Role::user: return "user";
    case Role::assistant: return "assistant";
  }
  return "unknown";
}

std::string_view to_string(Route route) noexcept {
  switch (route) {
    case Route::modify: return "modify";
    case Route::merge: return "merge";
    case Route::extract: return "extract";
    case Route::diff: return "diff";
    case Route::autocomplete: return "autocomplete";
    case Route::semantic_phase1: return "semantic_phase1";
    case Route::semantic_phase2: return "semantic_phase2";
  }
  return "unknown";
}

std::optional<Route> parse_route(std::string_view text) noexcept {
  for (auto r : {Route::modify, Route::merge, Route::extract, Route::diff, Route::autocomplete,
                 Route::semantic_phase1, Route::semantic_phase2}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

std::vector<std::string> check_bundle(const PromptBundle& bundle) {
  std::vector<std::string> problems;
  const auto& m = bundle.messages;
  if (m.size() < 2) {
    problems.emplace_back("bundle needs at least a system and a user message");
    return problems;
  }
  if (m.front().role != Role::system) problems.emplace_back("first message must be system");
  if (m.back().role != Role::user) problems.emplace_back("last message must be user");
  for (std::size_t i = 1; i + 1 < m.size(); ++i) {
    const Role expected = (i % 2 == 1) ? Role::user : Role::assistant;
    if (m[i].role != expected) {
      problems.push_back("context message " + std::to_string(i) + " should be " +
                         std::string(to_string(expected)));
    }
  }
  if ((m.size() - 2) % 2 != 0) problems.emplace_back("context must be complete user/assistant pairs");
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].content.empty()) problems.push_back("message " + std::to_string(i) + " is empty");
  }
  return problems;
}

void check_delimiters(const CodeDelimiters& d) {
  if (d.start_token.empty() || d.end_token.empty()) {
    throw std::invalid_argument("delimiter tokens must not be empty");
  }
  if (d.start_token == d.end_token) throw std::invalid_argument("delimiter tokens must differ");
  for (std::string_view body :
       {text::kVariationExampleCode, text::kVariationExampleOutputBody,
        text::kMergeExampleFirstCode, text::kMergeExampleSecondCode, text::kMergeExampleOutputBody}) {
    for (const std::string& token : {d.start_token, d.end_token}) {
      if (body.find(token) != std::string_view::npos) {
        throw std::invalid_argument("delimiter token '" + token +
                                    "' occurs in a few-shot example body");
      }
    }
  }
}

std::string_view base_restrictions() noexcept { return text::kBaseRestrictions; }

std::string system_text(Route route) {
  switch (route) {
    case Route::modify:
      return with_restrictions(text::kModifySystemIntro);
    case Route::merge: {
      std::string out = with_restrictions(text::kMergeSystemIntro);
      out += '\n';
      out += text::kMergeExtraRestriction;
      return out;
    }
    case Route::autocomplete:
      return std::string(text::kAutocompleteSystem);
    case Route::extract:
      return with_restrictions(text::kExtractSystemIntro);
    case Route::diff:
      return std::string(text::kDiffSystem);
    case Route::semantic_phase1:
      return std::string(text::kSemanticPhase1System);
    case Route::semantic_phase2:
      return with_restrictions(text::kSemanticPhase2SystemIntro);
  }
  return {};
}

std::vector<ChatMessage> few_shot_context(Route route, const CodeDelimiters& delimiters) {
  switch (route) {
    case Route::modify:
    case Route::semantic_phase2:
      return {
          user(stringify({{"code", text::kVariationExampleCode},
                          {"variationPrompt", text::kVariationExamplePrompt}})),
          assistant(wrap(text::kVariationExampleOutputBody, delimiters)),
      };
    case Route::merge:
      return {
          user(stringify({{"firstCode", text::kMergeExampleFirstCode},
                          {"secondCode", text::kMergeExampleSecondCode}})),
          assistant(wrap(text::kMergeExampleOutputBody, delimiters) + "\n"),
      };
    case Route::autocomplete: {
      std::vector<ChatMessage> out;
      for (const auto& example : text::kAutocompleteExamples) {
        out.push_back(user(std::string(example.prompt)));
        out.push_back(assistant(std::string(example.suggestions)));
      }
      return out;
    }
    case Route::extract:
    case Route::diff:
    case Route::semantic_phase1:
      return {};
  }
  return {};
}

PromptBundle compose_modify(std::string_view code, std::string_view variation_prompt,
                            const CodeDelimiters& delimiters) {
  require(code, "code");
  require(variation_prompt, "variation prompt");
  return bundle(Route::modify, few_shot_context(Route::modify, delimiters),
                stringify({{"code", code}, {"variationPrompt", variation_prompt}}));
}

PromptBundle compose_merge(std::string_view first_code, std::string_view second_code,
                           std::optional<std::string_view> merge_prompt,
                           const CodeDelimiters& delimiters) {
  require(first_code, "first code");
  require(second_code, "second code");
  ordered_json payload{{"firstCode", first_code}, {"secondCode", second_code}};
  if (merge_prompt && !blank(*merge_prompt)) payload["mergePrompt"] = *merge_prompt;
  return bundle(Route::merge, few_shot_context(Route::merge, delimiters), stringify(payload));
}

PromptBundle compose_autocomplete(std::string_view partial_prompt, std::string_view sketch_code) {
  std::string content;
  if (!sketch_code.empty()) {
    content += "```js\n";
    content += sketch_code;
    content += "\n```\n";
  }
  content += partial_prompt;
  // The model is told to answer even for empty input; keep the message non-empty.
  if (content.empty()) content = " ";
  return bundle(Route::autocomplete, few_shot_context(Route::autocomplete), std::move(content));
}

PromptBundle compose_extract(std::string_view code, std::string_view extraction_prompt) {
  require(code, "code");
  require(extraction_prompt, "extraction prompt");
  return bundle(Route::extract, {},
                stringify({{"code", code}, {"extractionPrompt", extraction_prompt}}));
}

PromptBundle compose_diff(std::string_view first_code, std::string_view second_code) {
  require(first_code, "first code");
  require(second_code, "second code");
  return bundle(Route::diff, {},
                stringify({{"firstCode", first_code}, {"secondCode", second_code}}));
}

std::pair<PromptBundle, PromptBundle> compose_semantic_pipeline(std::string_view modify_prompt,
                                                                std::string_view code,
                                                                std::string_view semantic_map,
                                                                const CodeDelimiters& delimiters) {
  require(modify_prompt, "modify prompt");
  require(code, "code");
  PromptBundle phase1 = bundle(Route::semantic_phase1, {},
                               stringify({{"code", code}, {"variationPrompt", modify_prompt}}));
  PromptBundle phase2 = bundle(Route::semantic_phase2,
                               few_shot_context(Route::semantic_phase2, delimiters),
                               stringify({{"code", code},
                                          {"variationPrompt", modify_prompt},
                                          {"semanticMap", semantic_map}}));
  return {std::move(phase1), std::move(phase2)};
}

}  // namespace spellgraph::prompts
