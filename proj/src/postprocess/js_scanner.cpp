#include "js_scanner.hpp"

#include <optional>
#include <cctype>

namespace spellgraph::postprocess::js {

namespace {

constexpr std::string_view kPunctuators[] = {
    ">>>=", "...", "===", "!==", "**=", "<<=", ">>=", ">>>", "&&=", "||=", "?\?=", "=>", "==",
    "!=",   "<=",  ">=",  "&&",  "||",  "??",  "?.",  "++",  "--",  "+=",  "-=",  "*=",  "/=",
    "%=",   "&=",  "|=",  "^=",  "**",  "<<",  ">>",
};

// Keywords after which a slash starts a regex rather than a division.
constexpr std::string_view kRegexPrefixKeywords[] = {
    "return", "typeof", "instanceof", "in", "of", "new", "delete", "void", "throw",
};

bool ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool ident_part(unsigned char c) { return ident_start(c) || std::isdigit(c); }

class Scanner {
 public:
  explicit Scanner(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        pending_newline_ = true;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        emit(TokenKind::line_comment, start);
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t start = pos_;
        const std::size_t close = src_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) throw ScanError(start, "unterminated block comment");
        pos_ = close + 2;
        const bool had_newline = src_.substr(start, pos_ - start).find('\n') != std::string_view::npos;
        emit(TokenKind::block_comment, start);
        if (had_newline) pending_newline_ = true;
      } else if (c == '"' || c == '\'') {
        const std::size_t start = pos_;
        pos_ = skip_string(pos_);
        emit(TokenKind::string, start);
      } else if (c == '`') {
        const std::size_t start = pos_;
        pos_ = skip_template(pos_);
        emit(TokenKind::template_literal, start);
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
        const std::size_t start = pos_;
        pos_ = skip_number(pos_);
        emit(TokenKind::number, start);
      } else if (ident_start(static_cast<unsigned char>(c))) {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && ident_part(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        emit(TokenKind::identifier, start);
      } else if (c == '/' && regex_allowed()) {
        const std::size_t start = pos_;
        if (auto end = try_regex(pos_)) {
          pos_ = *end;
          emit(TokenKind::regex, start);
        } else {
          ++pos_;
          emit(TokenKind::punctuator, start);
        }
      } else {
        const std::size_t start = pos_;
        pos_ += punctuator_length(pos_);
        emit(TokenKind::punctuator, start);
      }
    }
    return std::move(tokens_);
  }

 private:
  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void emit(TokenKind kind, std::size_t start) {
    Token t{kind, start, src_.substr(start, pos_ - start), pending_newline_};
    tokens_.push_back(t);
    if (!t.is_comment()) {
      pending_newline_ = false;
      last_significant_ = tokens_.size() - 1;
      has_significant_ = true;
    }
  }

  std::size_t skip_string(std::size_t at) const {
    const char quote = src_[at];
    std::size_t i = at + 1;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '\\') {
        i += 2;
      } else if (c == quote) {
        return i + 1;
      } else if (c == '\n') {
        break;
      } else {
        ++i;
      }
    }
    throw ScanError(at, "unterminated string literal");
  }

  std::size_t skip_template(std::size_t at) const {
    std::size_t i = at + 1;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '\\') {
        i += 2;
      } else if (c == '`') {
        return i + 1;
      } else if (c == '$' && i + 1 < src_.size() && src_[i + 1] == '{') {
        i = skip_substitution(i + 2);
      } else {
        ++i;
      }
    }
    throw ScanError(at, "unterminated template literal");
  }

  // Skips the expression of a ${...} substitution; returns the index after '}'.
  std::size_t skip_substitution(std::size_t at) const {
    int depth = 1;
    std::size_t i = at;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '"' || c == '\'') {
        i = skip_string(i);
      } else if (c == '`') {
        i = skip_template(i);
      } else if (c == '/' && i + 1 < src_.size() && src_[i + 1] == '*') {
        const std::size_t close = src_.find("*/", i + 2);
        if (close == std::string_view::npos) throw ScanError(i, "unterminated block comment");
        i = close + 2;
      } else if (c == '{') {
        ++depth;
        ++i;
      } else if (c == '}') {
        if (--depth == 0) return i + 1;
        ++i;
      } else {
        ++i;
      }
    }
    throw ScanError(at, "unterminated template substitution");
  }

  std::size_t skip_number(std::size_t at) const {
    std::size_t i = at;
    const bool hex_like = src_[at] == '0' && at + 1 < src_.size() &&
                          std::isalpha(static_cast<unsigned char>(src_[at + 1]));
    while (i < src_.size()) {
      const unsigned char c = static_cast<unsigned char>(src_[i]);
      if (std::isalnum(c) || c == '_' || c == '.') {
        ++i;
      } else if ((c == '+' || c == '-') && !hex_like && (src_[i - 1] == 'e' || src_[i - 1] == 'E')) {
        ++i;
      } else {
        break;
      }
    }
    return i;
  }

  bool regex_allowed() const {
    if (!has_significant_) return true;
    const Token& prev = tokens_[last_significant_];
    switch (prev.kind) {
      case TokenKind::number:
      case TokenKind::string:
      case TokenKind::template_literal:
      case TokenKind::regex:
        return false;
      case TokenKind::identifier:
        for (auto kw : kRegexPrefixKeywords) {
          if (prev.text == kw) return true;
        }
        return false;
      case TokenKind::punctuator:
        return !(prev.text == ")" || prev.text == "]" || prev.text == "}" || prev.text == "++" ||
                 prev.text == "--");
      default:
        return true;
    }
  }

  std::optional<std::size_t> try_regex(std::size_t at) const {
    bool in_class = false;
    std::size_t i = at + 1;
    while (i < src_.size()) {
      const char c = src_[i];
      if (c == '\n') return std::nullopt;
      if (c == '\\') {
        i += 2;
        continue;
      }
      if (c == '[') in_class = true;
      if (c == ']') in_class = false;
      if (c == '/' && !in_class) {
        ++i;
        while (i < src_.size() && ident_part(static_cast<unsigned char>(src_[i]))) ++i;
        return i;
      }
      ++i;
    }
    return std::nullopt;
  }

  std::size_t punctuator_length(std::size_t at) const {
    for (auto p : kPunctuators) {
      if (src_.substr(at, p.size()) == p) return p.size();
    }
    return 1;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::vector<Token> tokens_;
  bool pending_newline_ = false;
  bool has_significant_ = false;
  std::size_t last_significant_ = 0;
};

}  // namespace

std::vector<Token> scan(std::string_view source) { return Scanner(source).run(); }

}  // namespace spellgraph::postprocess::js
