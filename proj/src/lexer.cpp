// exnlint/lexer.cpp - Java 8 tokenizer
#include "exnlint/lexer.hpp"

#include <algorithm>
#include <array>

namespace exnlint {

namespace {

constexpr std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",   "break",     "byte",      "case",
    "catch",    "char",       "class",     "const",     "continue",  "default",
    "do",       "double",     "else",      "enum",      "extends",   "final",
    "finally",  "float",      "for",       "goto",      "if",        "implements",
    "import",   "instanceof", "int",       "interface", "long",      "native",
    "new",      "package",    "private",   "protected", "public",    "return",
    "short",    "static",     "strictfp",  "super",     "switch",    "synchronized",
    "this",     "throw",      "throws",    "transient", "try",       "void",
    "volatile", "while",
};

// Longest first within each shared prefix.
constexpr std::array<std::string_view, 37> kOperators = {
    "<<=", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=", "<<",
    "+=",  "-=",  "*=", "/=", "%=", "&=", "|=", "^=", "(",  ")",  "{",  "}",  "[",
    "]",   ";",   ",",  ".",  "@",  "=",  ">",  "<",  "!",  "~",  "?",
};

constexpr std::string_view kSingleOps = "+-*/%&|^:";

bool is_ident_start(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool is_ident_part(unsigned char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool is_hex_digit(unsigned char c) {
  return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {
    // UTF-8 byte order mark.
    if (text_.substr(0, 3) == "\xEF\xBB\xBF") pos_ = 3;
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    out.reserve(text_.size() / 4 + 1);
    for (;;) {
      skip_trivia();
      if (pos_ >= text_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{TokenKind::End, {}, text_.size(), text_.size()});
    return out;
  }

 private:
  unsigned char peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < text_.size() ? static_cast<unsigned char>(text_[i]) : '\0';
  }

  void skip_trivia() {
    while (pos_ < text_.size()) {
      const unsigned char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        ++pos_;
      } else if (c == '/' && peek(1) == '/') {
        while (pos_ < text_.size() && peek() != '\n' && peek() != '\r') ++pos_;
      } else if (c == '/' && peek(1) == '*') {
        const std::size_t start = pos_;
        const auto close = text_.find("*/", pos_ + 2);
        if (close == std::string_view::npos) throw LexError("unterminated comment", start);
        pos_ = close + 2;
      } else if (c == 0x1A && pos_ + 1 == text_.size()) {
        // Trailing Ctrl-Z is permitted at end of input.
        ++pos_;
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t begin) const {
    return Token{kind, text_.substr(begin, pos_ - begin), begin, pos_};
  }

  Token next() {
    const std::size_t begin = pos_;
    const unsigned char c = peek();
    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_part(peek())) ++pos_;
      Token t = make(TokenKind::Identifier, begin);
      if (t.text == "true" || t.text == "false") {
        t.kind = TokenKind::BoolLiteral;
      } else if (t.text == "null") {
        t.kind = TokenKind::NullLiteral;
      } else if (is_java_keyword(t.text)) {
        t.kind = TokenKind::Keyword;
      }
      return t;
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1)))) return number(begin);
    if (c == '"') return quoted('"', TokenKind::StringLiteral, begin);
    if (c == '\'') return quoted('\'', TokenKind::CharLiteral, begin);
    for (std::string_view op : kOperators) {
      if (text_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return make(TokenKind::Operator, begin);
      }
    }
    if (kSingleOps.find(static_cast<char>(c)) != std::string_view::npos) {
      ++pos_;
      return make(TokenKind::Operator, begin);
    }
    throw LexError(std::string("unexpected character '") + static_cast<char>(c) + "'", begin);
  }

  Token number(std::size_t begin) {
    bool is_float = false;
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      pos_ += 2;
      while (is_hex_digit(peek()) || peek() == '_') ++pos_;
      if (peek() == '.') {
        is_float = true;
        ++pos_;
        while (is_hex_digit(peek()) || peek() == '_') ++pos_;
      }
      if (peek() == 'p' || peek() == 'P') {
        is_float = true;
        ++pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        if (!is_digit(peek())) throw LexError("malformed hex floating literal", begin);
        while (is_digit(peek())) ++pos_;
      }
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      pos_ += 2;
      if (peek() != '0' && peek() != '1') throw LexError("malformed binary literal", begin);
      while (peek() == '0' || peek() == '1' || peek() == '_') ++pos_;
    } else {
      while (is_digit(peek()) || peek() == '_') ++pos_;
      if (peek() == '.' && is_digit(peek(1))) {
        is_float = true;
        ++pos_;
        while (is_digit(peek()) || peek() == '_') ++pos_;
      } else if (peek() == '.' &&
                 ((std::string_view("fFdD").find(static_cast<char>(peek(1))) !=
                       std::string_view::npos &&
                   !is_ident_part(peek(2))) ||
                  ((peek(1) == 'e' || peek(1) == 'E') &&
                   (is_digit(peek(2)) || peek(2) == '+' || peek(2) == '-')))) {
        // `1.f`, `2.d`, `3.e5`
        is_float = true;
        ++pos_;
      } else if (peek() == '.' && !is_ident_start(peek(1)) && peek(1) != '.') {
        // `1.` is a valid double literal; `1.foo` would be a member access.
        is_float = true;
        ++pos_;
      }
      if (peek() == 'e' || peek() == 'E') {
        is_float = true;
        ++pos_;
        if (peek() == '+' || peek() == '-') ++pos_;
        if (!is_digit(peek())) throw LexError("malformed exponent", begin);
        while (is_digit(peek()) || peek() == '_') ++pos_;
      }
    }
    const unsigned char s = peek();
    if (s == 'l' || s == 'L') {
      ++pos_;
    } else if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
      is_float = true;
      ++pos_;
    }
    if (is_ident_part(peek())) throw LexError("malformed numeric literal", begin);
    return make(is_float ? TokenKind::FloatLiteral : TokenKind::IntLiteral, begin);
  }

  Token quoted(char quote, TokenKind kind, std::size_t begin) {
    ++pos_;
    for (;;) {
      if (pos_ >= text_.size() || peek() == '\n' || peek() == '\r') {
        throw LexError(kind == TokenKind::StringLiteral ? "unterminated string literal"
                                                        : "unterminated character literal",
                       begin);
      }
      const char ch = static_cast<char>(peek());
      if (ch == '\\') {
        pos_ += 2;
        continue;
      }
      ++pos_;
      if (ch == quote) break;
    }
    if (kind == TokenKind::CharLiteral && pos_ - begin == 2) {
      throw LexError("empty character literal", begin);
    }
    return make(kind, begin);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace exnlint
