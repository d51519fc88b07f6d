#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>

#include "js_scanner.hpp"
#include "spellgraph/postprocess/postprocess.hpp"

namespace spellgraph::postprocess {

namespace {

bool is_decimal_literal(std::string_view s) {
  std::size_t i = 0;
  std::size_t int_digits = 0;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++frac_digits;
  }
  return i == s.size() && int_digits + frac_digits > 0;
}

std::optional<double> parse_decimal(std::string_view s) {
  if (!is_decimal_literal(s)) return std::nullopt;
  std::string text(s);
  if (text.front() == '.') text.insert(text.begin(), '0');
  if (text.back() == '.') text.pop_back();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::optional<DeclarationKind> declaration_keyword(const js::Token& t) {
  if (t.kind != js::TokenKind::identifier) return std::nullopt;
  if (t.text == "let") return DeclarationKind::let_decl;
  if (t.text == "var") return DeclarationKind::var_decl;
  if (t.text == "const") return DeclarationKind::const_decl;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(DeclarationKind kind) noexcept {
  switch (kind) {
    case DeclarationKind::let_decl: return "let";
    case DeclarationKind::var_decl: return "var";
    case DeclarationKind::const_decl: return "const";
  }
  return "let";
}

std::vector<GlobalVariable> extract_globals(std::string_view code) {
  std::vector<js::Token> tokens;
  try {
    for (const js::Token& t : js::scan(code)) {
      if (!t.is_comment()) tokens.push_back(t);
    }
  } catch (const js::ScanError& e) {
    throw PostprocessError(PostprocessErrc::parse_failure, e.what());
  }

  std::vector<GlobalVariable> globals;
  int depth = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const js::Token& t = tokens[i];
    if (t.is("{") || t.is("(") || t.is("[")) {
      ++depth;
      continue;
    }
    if (t.is("}") || t.is(")") || t.is("]")) {
      // Stray closers in model output should not push later code below zero.
      depth = std::max(0, depth - 1);
      continue;
    }
    if (depth != 0) continue;

    const auto kind = declaration_keyword(t);
    if (!kind) continue;
    const bool statement_start =
        i == 0 || t.newline_before || tokens[i - 1].is(";") || tokens[i - 1].is("}");
    if (!statement_start) continue;

    std::size_t j = i + 1;
    if (j >= tokens.size() || tokens[j].kind != js::TokenKind::identifier) continue;
    const js::Token& name = tokens[j++];
    if (j >= tokens.size() || !tokens[j].is("=")) continue;
    ++j;
    bool negative = false;
    std::size_t span_begin = 0;
    if (j < tokens.size() && tokens[j].is("-")) {
      negative = true;
      span_begin = tokens[j].offset;
      ++j;
    }
    if (j >= tokens.size() || tokens[j].kind != js::TokenKind::number) continue;
    const js::Token& number = tokens[j++];
    if (!negative) span_begin = number.offset;
    const bool terminated =
        j >= tokens.size() || tokens[j].is(";") || tokens[j].newline_before;
    if (!terminated) continue;

    const auto value = parse_decimal(number.text);
    if (!value) continue;

    const bool seen = std::any_of(globals.begin(), globals.end(),
                                  [&](const GlobalVariable& g) { return g.name == name.text; });
    if (seen) continue;

    const std::size_t span_end = number.offset + number.text.size();
    globals.push_back(GlobalVariable{std::string(name.text), negative ? -*value : *value,
                                     SourceSpan{span_begin, span_end - span_begin}, *kind});
    i = j - 1;
  }
  return globals;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("format_number: value is not finite");
  if (value == 0.0) return "0";
  if (value == std::trunc(value) && std::fabs(value) < 1e15) {
    return std::to_string(static_cast<std::int64_t>(value));
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
  if (ec != std::errc{}) throw std::invalid_argument("format_number: value out of range");
  return std::string(buf, ptr);
}

std::string rewrite_global(std::string_view code, std::string_view name, double new_value) {
  for (const GlobalVariable& g : extract_globals(code)) {
    if (g.name != name) continue;
    if (g.value == new_value) return std::string(code);
    std::string out(code.substr(0, g.declaration_span.offset));
    out += format_number(new_value);
    out += code.substr(g.declaration_span.offset + g.declaration_span.length);
    return out;
  }
  throw PostprocessError(PostprocessErrc::unknown_variable,
                         "no global named '" + std::string(name) + "'");
}

SliderRange slider_range(double initial) {
  if (initial > 0) return SliderRange{0.0, 2 * initial, 2 * initial / 100};
  if (initial < 0) return SliderRange{2 * initial, 0.0, -2 * initial / 100};
  return SliderRange{0.0, 1.0, 0.01};
}

}  // namespace spellgraph::postprocess
