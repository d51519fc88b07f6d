#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spellgraph/prompts/prompts.hpp"

namespace spellgraph::postprocess {

enum class PostprocessErrc {
  no_code_found,
  parse_failure,
  unknown_variable,
  no_suggestions,
  no_usable_map,
};

std::string_view to_string(PostprocessErrc code) noexcept;

class PostprocessError : public std::runtime_error {
 public:
  PostprocessError(PostprocessErrc code, const std::string& detail);
  PostprocessErrc code() const noexcept { return code_; }

 private:
  PostprocessErrc code_;
};

// -- code extraction --------------------------------------------------------

enum class ExtractionMethod { delimiters, fenced_block, whole_text };

std::string_view to_string(ExtractionMethod method) noexcept;

struct ExtractedCode {
  std::string code;
  ExtractionMethod method;
  std::vector<std::string> warnings;
};

/// Pulls sketch source out of a model reply. Tries, in order: the text between
/// the `//START` and `//END` marker lines; the body of the only ``` fenced
/// block; the whole reply if it looks like a sketch (has `function setup`).
/// Throws PostprocessError(no_code_found).
ExtractedCode extract_code(std::string_view raw, const prompts::CodeDelimiters& delimiters = {});

/// Body of the first block comment that starts with "Combine", with runs of
/// whitespace collapsed to single spaces.
std::optional<std::string> extract_merge_comment(std::string_view code);

// -- globals and sliders ----------------------------------------------------

enum class DeclarationKind { let_decl, var_decl, const_decl };

std::string_view to_string(DeclarationKind kind) noexcept;

struct SourceSpan {
  std::size_t offset = 0;
  std::size_t length = 0;
  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

struct GlobalVariable {
  std::string name;
  double value = 0.0;
  /// Covers the numeric literal (including a leading minus) and nothing else.
  SourceSpan declaration_span;
  DeclarationKind kind = DeclarationKind::let_decl;
};

/// Top-level `let|var|const NAME = NUMBER;` declarations in source order. The
/// first declaration of a name wins. Throws PostprocessError(parse_failure)
/// only for unterminated comments, strings, or template literals.
std::vector<GlobalVariable> extract_globals(std::string_view code);

/// Shortest plain decimal rendering: integers carry no decimal point.
/// Throws std::invalid_argument for NaN or infinities.
std::string format_number(double value);

/// Replaces one global's literal with format_number(new_value). Returns the
/// input unchanged when the value already equals the current one.
/// Throws PostprocessError(unknown_variable).
std::string rewrite_global(std::string_view code, std::string_view name, double new_value);

struct SliderRange {
  double min = 0.0;
  double max = 1.0;
  double step = 0.01;
};

/// [0, 2v] for positive v, [2v, 0] for negative v, [0, 1] for zero; 100 steps.
SliderRange slider_range(double initial);

// -- structured replies -----------------------------------------------------

/// First JSON array of strings in the reply, trimmed, empties dropped, at
/// most three. Throws PostprocessError(no_suggestions).
std::vector<std::string> parse_suggestions(std::string_view raw);

struct SemanticMapEntry {
  std::string phrase;
  std::vector<std::string> variables;
  friend bool operator==(const SemanticMapEntry&, const SemanticMapEntry&) = default;
};

struct SemanticMap {
  std::vector<SemanticMapEntry> entries;
  std::vector<std::string> warnings;
};

/// Reads `{"phrases":[{"text":...,"variables":[...]}]}` from the reply and keeps
/// only variables that `code` actually declares as globals. Entries left with
/// no variables are dropped. Throws PostprocessError(no_usable_map) when
/// nothing survives.
SemanticMap parse_semantic_map(std::string_view raw, std::string_view code);

}  // namespace spellgraph::postprocess
