// token.hpp - Java token stream with exact byte spans.
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "span.hpp"

namespace retype {

enum class TokenKind {
  Identifier,
  Keyword,
  Literal,
  Operator,
  Punctuation,
};

struct Token {
  TokenKind kind = TokenKind::Identifier;
  std::string text;
  Span span;
};

// Lexes Java source into tokens. Comments and whitespace are preserved as
// inter-token bytes, never as tokens: concatenating token texts with the
// gap bytes between them reproduces the input exactly.
// Throws SyntaxError(ErrorCode::Lex) on unterminated string/char literals,
// unterminated block comments, and illegal characters.
std::vector<Token> tokenize(std::string_view source);

bool is_java_keyword(std::string_view word);

// Token texts of every token whose span lies fully inside `span`.
std::vector<std::string> token_texts_in_span(const std::vector<Token>& tokens,
                                             Span span);

}  // namespace retype
