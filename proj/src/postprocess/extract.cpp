#include <algorithm>
#include <cctype>

#include "js_scanner.hpp"
#include "spellgraph/postprocess/postprocess.hpp"

namespace spellgraph::postprocess {

namespace {

struct Line {
  std::size_t begin;  // first byte
  std::size_t end;    // one past the last byte, excluding '\n'
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  std::size_t begin = 0;
  while (true) {
    const std::size_t nl = text.find('\n', begin);
    if (nl == std::string_view::npos) {
      lines.push_back({begin, text.size()});
      break;
    }
    lines.push_back({begin, nl});
    begin = nl + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// `//TOKEN`, tolerating surrounding whitespace and a space after the slashes.
bool is_marker(std::string_view line, std::string_view token) {
  line = trim(line);
  if (!line.starts_with("//")) return false;
  return trim(line.substr(2)) == token;
}

bool is_fence(std::string_view line) { return trim(line).starts_with("```"); }

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  bool gap = false;
  for (char c : trim(s)) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      gap = true;
    } else {
      if (gap && !out.empty()) out += ' ';
      gap = false;
      out += c;
    }
  }
  return out;
}

std::optional<std::string> merge_comment_from(std::string_view body) {
  std::string_view inner = trim(body);
  if (!inner.starts_with("Combine")) return std::nullopt;
  return collapse_whitespace(inner);
}

}  // namespace

std::string_view to_string(PostprocessErrc code) noexcept {
  switch (code) {
    case PostprocessErrc::no_code_found: return "NoCodeFound";
    case PostprocessErrc::parse_failure: return "ParseFailure";
    case PostprocessErrc::unknown_variable: return "UnknownVariable";
    case PostprocessErrc::no_suggestions: return "NoSuggestions";
    case PostprocessErrc::no_usable_map: return "NoUsableMap";
  }
  return "PostprocessError";
}

PostprocessError::PostprocessError(PostprocessErrc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

std::string_view to_string(ExtractionMethod method) noexcept {
  switch (method) {
    case ExtractionMethod::delimiters: return "delimiters";
    case ExtractionMethod::fenced_block: return "fenced_block";
    case ExtractionMethod::whole_text: return "whole_text";
  }
  return "unknown";
}

ExtractedCode extract_code(std::string_view raw, const prompts::CodeDelimiters& delimiters) {
  if (trim(raw).empty()) throw PostprocessError(PostprocessErrc::no_code_found, "empty reply");

  std::vector<std::string> warnings;
  const std::vector<Line> lines = split_lines(raw);
  auto line_text = [&](const Line& l) { return raw.substr(l.begin, l.end - l.begin); };

  // 1. Marker lines: the first end marker, paired with the closest start above it.
  std::optional<std::size_t> start;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string_view text = line_text(lines[i]);
    if (is_marker(text, delimiters.start_token)) {
      start = i;
    } else if (start && is_marker(text, delimiters.end_token)) {
      if (i == *start + 1) {
        warnings.emplace_back("delimiters enclose no code");
        break;
      }
      const std::size_t begin = lines[*start + 1].begin;
      const std::size_t end = lines[i - 1].end;
      std::string code(raw.substr(begin, end - begin));
      if (code.find(delimiters.start_token) != std::string::npos ||
          code.find(delimiters.end_token) != std::string::npos) {
        warnings.emplace_back("delimited code still contains a delimiter token");
        break;
      }
      if (trim(code).empty()) {
        warnings.emplace_back("delimiters enclose only whitespace");
        break;
      }
      return ExtractedCode{std::move(code), ExtractionMethod::delimiters, std::move(warnings)};
    }
  }
  if (warnings.empty()) warnings.emplace_back("delimiter markers not found");

  // 2. Exactly one fenced block.
  std::vector<std::size_t> fences;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (is_fence(line_text(lines[i]))) fences.push_back(i);
  }
  if (fences.size() == 2 && fences[1] > fences[0] + 1) {
    const std::size_t begin = lines[fences[0] + 1].begin;
    const std::size_t end = lines[fences[1] - 1].end;
    std::string code(raw.substr(begin, end - begin));
    if (!trim(code).empty()) {
      warnings.emplace_back("code taken from a fenced block");
      return ExtractedCode{std::move(code), ExtractionMethod::fenced_block, std::move(warnings)};
    }
  }

  // 3. The reply itself reads like a sketch.
  if (raw.find("function setup") != std::string_view::npos) {
    warnings.emplace_back("code taken from the whole reply");
    return ExtractedCode{std::string(raw), ExtractionMethod::whole_text, std::move(warnings)};
  }

  throw PostprocessError(PostprocessErrc::no_code_found, "reply contains no recognizable sketch");
}

std::optional<std::string> extract_merge_comment(std::string_view code) {
  try {
    for (const js::Token& t : js::scan(code)) {
      if (t.kind != js::TokenKind::block_comment) continue;
      std::string_view body = t.text.substr(2, t.text.size() - 4);
      if (auto comment = merge_comment_from(body)) return comment;
    }
    return std::nullopt;
  } catch (const js::ScanError&) {
    // Broken source: fall back to a plain textual search for /* ... */ pairs.
  }
  std::size_t from = 0;
  while (true) {
    const std::size_t open = code.find("/*", from);
    if (open == std::string_view::npos) return std::nullopt;
    const std::size_t close = code.find("*/", open + 2);
    if (close == std::string_view::npos) return std::nullopt;
    if (auto comment = merge_comment_from(code.substr(open + 2, close - open - 2))) return comment;
    from = close + 2;
  }
}

}  // namespace spellgraph::postprocess
