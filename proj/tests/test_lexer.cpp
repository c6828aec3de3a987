#include <string>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "token.hpp"

using namespace retype;

namespace {

std::vector<std::string> texts(const std::string& source) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(source)) out.push_back(t.text);
  return out;
}

}  // namespace

TEST_CASE("identifiers keywords and operators") {
  const auto got = texts("int x = y >>> 2;");
  CHECK(got == std::vector<std::string>{"int", "x", "=", "y", ">>>", "2", ";"});

  const auto ops = texts("a <= b && c != d");
  CHECK(ops == std::vector<std::string>{"a", "<=", "b", "&&", "c", "!=", "d"});
}

TEST_CASE("compound operators lex greedily") {
  CHECK(texts("a >> b") == std::vector<std::string>{"a", ">>", "b"});
  CHECK(texts("a > > b") == std::vector<std::string>{"a", ">", ">", "b"});
  CHECK(texts("x++ + ++y") ==
        std::vector<std::string>{"x", "++", "+", "++", "y"});
}

TEST_CASE("literals keep their source text") {
  const auto got = texts(R"(log("a\"b", 'c', 3.5, 0x1F);)");
  CHECK(got[0] == "log");
  CHECK(got[2] == R"("a\"b")");
  CHECK(got[4] == "'c'");
  CHECK(got[6] == "3.5");
  CHECK(got[8] == "0x1F");
}

TEST_CASE("comments vanish from the stream") {
  const auto got = texts("a // trailing\n/* block\nspanning */ b");
  CHECK(got == std::vector<std::string>{"a", "b"});
}

TEST_CASE("dollar signs are identifier characters") {
  const auto got = texts("$1$.apply($2$)");
  CHECK(got[0] == "$1$");
  CHECK(got[2] == "apply");
  CHECK(got[4] == "$2$");
  const auto toks = tokenize("$1$");
  CHECK(toks.size() == 1);
  CHECK(toks[0].kind == TokenKind::Identifier);
}

TEST_CASE("token spans index back into the source") {
  const std::string source = "foo.bar(baz)";
  const auto toks = tokenize(source);
  for (const Token& t : toks) {
    CHECK(source.substr(t.span.begin, t.span.size()) == t.text);
  }
  CHECK(token_texts_in_span(toks, Span{4, 12}) ==
        std::vector<std::string>{"bar", "(", "baz", ")"});
}

TEST_CASE("unterminated string literal is a lex error") {
  CHECK_THROWS_AS(tokenize("String s = \"open;"), SyntaxError);
  try {
    tokenize("ok(); \"open");
    FAIL("expected a lex error");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::Lex);
    CHECK(e.offset() == 6);
  }
}

TEST_CASE("unterminated block comment is a lex error") {
  try {
    tokenize("a /* never closed");
    FAIL("expected a lex error");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == ErrorCode::Lex);
  }
}

TEST_CASE("illegal character is a lex error") {
  CHECK_THROWS_AS(tokenize("a # b"), SyntaxError);
}
