// lexer.cpp - Hand-written Java lexer.
#include "token.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

#include "error.hpp"

namespace retype {

namespace {

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$';
}

bool is_ident_part(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$';
}

const std::unordered_set<std::string_view>& keyword_table() {
  static const std::unordered_set<std::string_view> kw = {
      "abstract", "assert",     "boolean",  "break",   "byte",      "case",
      "catch",    "char",       "class",    "const",   "continue",  "default",
      "do",       "double",     "else",     "enum",    "extends",   "final",
      "finally",  "float",      "for",      "goto",    "if",        "implements",
      "import",   "instanceof", "int",      "interface", "long",    "native",
      "new",      "package",    "private",  "protected", "public",  "return",
      "short",    "static",     "strictfp", "super",   "switch",    "synchronized",
      "this",     "throw",      "throws",   "transient", "try",     "void",
      "volatile", "while",      "var",      "record",  "yield",     "sealed"};
  return kw;
}

// Multi-character operators, longest first so greedy matching works.
constexpr std::array<std::string_view, 30> kOperators = {
    ">>>=", ">>>", "<<=", ">>=", "->", "::", "==", "!=", "<=", ">=",
    "&&",   "||",  "++",  "--",  "+=", "-=", "*=", "/=", "%=", "&=",
    "|=",   "^=",  "<<",  ">>",  "~",  "?",  ":",  "=",  "!",  "^"};

constexpr std::string_view kSingleOps = "+-*/%<>&|";
constexpr std::string_view kPunct = "(){}[];,.@";

}  // namespace

bool is_java_keyword(std::string_view word) {
  return keyword_table().count(word) > 0;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  size_t i = 0;
  const size_t n = source.size();

  auto push = [&](TokenKind kind, size_t begin, size_t end) {
    Token t;
    t.kind = kind;
    t.text = std::string(source.substr(begin, end - begin));
    t.span = {static_cast<uint32_t>(begin), static_cast<uint32_t>(end)};
    tokens.push_back(std::move(t));
  };

  while (i < n) {
    const unsigned char c = static_cast<unsigned char>(source[i]);

    if (std::isspace(c)) {
      ++i;
      continue;
    }
    // Line comment.
    if (c == '/' && i + 1 < n && source[i + 1] == '/') {
      while (i < n && source[i] != '\n') ++i;
      continue;
    }
    // Block comment.
    if (c == '/' && i + 1 < n && source[i + 1] == '*') {
      const size_t start = i;
      i += 2;
      bool closed = false;
      while (i + 1 < n) {
        if (source[i] == '*' && source[i + 1] == '/') {
          i += 2;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed)
        throw SyntaxError(ErrorCode::Lex, "unterminated block comment",
                          static_cast<uint32_t>(start));
      continue;
    }
    // Identifier or keyword. `true`/`false`/`null` lex as literals.
    if (is_ident_start(c)) {
      const size_t start = i;
      while (i < n && is_ident_part(static_cast<unsigned char>(source[i]))) ++i;
      const std::string_view word = source.substr(start, i - start);
      if (word == "true" || word == "false" || word == "null")
        push(TokenKind::Literal, start, i);
      else if (is_java_keyword(word))
        push(TokenKind::Keyword, start, i);
      else
        push(TokenKind::Identifier, start, i);
      continue;
    }
    // Number literal.
    if (std::isdigit(c)) {
      const size_t start = i;
      ++i;
      while (i < n) {
        const unsigned char d = static_cast<unsigned char>(source[i]);
        if (std::isalnum(d) || d == '_' || d == '.') {
          ++i;
        } else if ((d == '+' || d == '-') && i > start &&
                   (source[i - 1] == 'e' || source[i - 1] == 'E')) {
          ++i;
        } else {
          break;
        }
      }
      push(TokenKind::Literal, start, i);
      continue;
    }
    // String and char literals.
    if (c == '"' || c == '\'') {
      const char quote = static_cast<char>(c);
      const size_t start = i;
      ++i;
      bool closed = false;
      while (i < n) {
        if (source[i] == '\\' && i + 1 < n) {
          i += 2;
          continue;
        }
        if (source[i] == quote) {
          ++i;
          closed = true;
          break;
        }
        if (source[i] == '\n') break;
        ++i;
      }
      if (!closed)
        throw SyntaxError(ErrorCode::Lex,
                          quote == '"' ? "unterminated string literal"
                                       : "unterminated char literal",
                          static_cast<uint32_t>(start));
      push(TokenKind::Literal, start, i);
      continue;
    }
    // Punctuation before operators: '.' would otherwise be eaten by numbers.
    if (kPunct.find(static_cast<char>(c)) != std::string_view::npos) {
      push(TokenKind::Punctuation, i, i + 1);
      ++i;
      continue;
    }
    // Multi-char operators, greedy.
    bool matched = false;
    for (const std::string_view op : kOperators) {
      if (source.substr(i, op.size()) == op) {
        push(TokenKind::Operator, i, i + op.size());
        i += op.size();
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (kSingleOps.find(static_cast<char>(c)) != std::string_view::npos) {
      push(TokenKind::Operator, i, i + 1);
      ++i;
      continue;
    }
    throw SyntaxError(ErrorCode::Lex,
                      std::string("illegal character '") +
                          static_cast<char>(c) + "'",
                      static_cast<uint32_t>(i));
  }
  return tokens;
}

std::vector<std::string> token_texts_in_span(const std::vector<Token>& tokens,
                                             Span span) {
  std::vector<std::string> out;
  for (const Token& t : tokens) {
    if (t.span.begin >= span.begin && t.span.end <= span.end)
      out.push_back(t.text);
  }
  return out;
}

}  // namespace retype
