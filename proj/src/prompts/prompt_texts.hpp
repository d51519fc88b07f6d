#pragma once

#include <string_view>

// Fixed prompt material. Code bodies exclude the delimiter comment lines,
// which are added at compose time from the configured CodeDelimiters.
namespace spellgraph::prompts::text {

extern const std::string_view kBaseRestrictions;

extern const std::string_view kModifySystemIntro;
extern const std::string_view kMergeSystemIntro;
extern const std::string_view kMergeExtraRestriction;
extern const std::string_view kAutocompleteSystem;
extern const std::string_view kExtractSystemIntro;
extern const std::string_view kDiffSystem;
extern const std::string_view kSemanticPhase1System;
extern const std::string_view kSemanticPhase2SystemIntro;

extern const std::string_view kVariationExampleCode;
extern const std::string_view kVariationExamplePrompt;
extern const std::string_view kVariationExampleOutputBody;

extern const std::string_view kMergeExampleFirstCode;
extern const std::string_view kMergeExampleSecondCode;
extern const std::string_view kMergeExampleOutputBody;

struct SuggestionExample {
  std::string_view prompt;
  std::string_view suggestions;
};
extern const SuggestionExample kAutocompleteExamples[4];

}  // namespace spellgraph::prompts::text
