// exnlint/lexer.hpp - Java 8 tokenizer
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exnlint {

enum class TokenKind {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  // true, false
  BoolLiteral,
  NullLiteral,
  Operator,
  End,
};

// `>` is always produced as a single-character token so that nested type
// argument lists (`List<List<T>>`) close naturally; the parser reassembles
// shift operators from adjacent `>` tokens. `>=` is kept as one token.
struct Token {
  TokenKind kind = TokenKind::End;
  std::string_view text;
  std::size_t begin = 0;
  std::size_t end = 0;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_op(std::string_view t) const { return kind == TokenKind::Operator && text == t; }
  bool is_keyword(std::string_view t) const { return kind == TokenKind::Keyword && text == t; }
};

class LexError : public std::runtime_error {
 public:
  LexError(const std::string& message, std::size_t offset)
      : std::runtime_error(message), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

bool is_java_keyword(std::string_view word);

// Tokenizes `text` (comments and whitespace dropped). The result always ends
// with a TokenKind::End token. Throws LexError on malformed input.
std::vector<Token> tokenize(std::string_view text);

}  // namespace exnlint
