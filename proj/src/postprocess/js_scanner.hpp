#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Just enough of a JavaScript lexer to find comments, brace depth and simple
// declarations in sketch source. Template literals (including nested ${...})
// come back as single tokens.
namespace spellgraph::postprocess::js {

enum class TokenKind {
  identifier,
  number,
  string,
  template_literal,
  regex,
  punctuator,
  line_comment,
  block_comment,
};

struct Token {
  TokenKind kind;
  std::size_t offset;
  std::string_view text;
  /// A line break separates this token from the previous significant token.
  bool newline_before;

  bool is(std::string_view punct) const {
    return kind == TokenKind::punctuator && text == punct;
  }
  bool is_comment() const {
    return kind == TokenKind::line_comment || kind == TokenKind::block_comment;
  }
};

class ScanError : public std::runtime_error {
 public:
  ScanError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Throws ScanError on unterminated strings, comments and template literals.
std::vector<Token> scan(std::string_view source);

}  // namespace spellgraph::postprocess::js
