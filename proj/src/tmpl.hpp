// tmpl.hpp - Expression templates with numbered holes: parse, match,
// substitute. A hole is written `$n$` (n >= 1) and stands for an expression
// subtree; hole 1 is reserved for a reference to the migration's root
// element, every other hole absorbs the maximal expression at its position
// provided that expression contains no root reference.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "ast.hpp"

namespace retype {

// Java operator precedence classes; a higher class binds tighter.
constexpr int kPrecAssignment = 1;  // also lambdas
constexpr int kPrecOr = 3;
constexpr int kPrecAnd = 4;
constexpr int kPrecBitOr = 5;
constexpr int kPrecBitXor = 6;
constexpr int kPrecBitAnd = 7;
constexpr int kPrecEquality = 8;
constexpr int kPrecRelational = 9;
constexpr int kPrecShift = 10;
constexpr int kPrecAdditive = 11;
constexpr int kPrecMultiplicative = 12;
constexpr int kPrecUnary = 13;  // prefix/postfix unary, cast
constexpr int kPrecPrimary = 14;

// One `$n$` occurrence inside a template, in token order.
struct HoleSite {
  int index = 0;        // the n of $n$
  Span token_span;      // exact bytes of the $n$ token in Template::text
  NodeId node = kNoNode;  // the NameRef atom carrying the hole
};

// A parsed template. The body is an ordinary expression AST in which hole
// atoms appear as NameRef nodes whose text is the literal `$n$` token.
struct Template {
  std::string text;
  Ast ast;
  std::vector<HoleSite> holes;
  int score = 0;  // concrete (non-hole) token count

  [[nodiscard]] bool has_hole(int index) const;
};

// Map hole number -> bound expression node in the matched file's AST.
using Bindings = std::map<int, NodeId>;

// Returns the hole number if `text` is a well-formed hole token.
std::optional<int> hole_number(std::string_view text);

// Parses `text` as a Java expression and collects its holes. Throws
// Error(Template) when the text is not a single expression, when a
// `$...$` token has a non-numeric or zero interior, or when one appears
// anywhere but a primary-expression atom (a method or type name slot).
Template parse_template(std::string_view text);

// Structural match of `tmpl` against the node `target` of `file`.
// `root_refs` is the set of nodes that reference the migration root (the
// NameRef, field access, or call nodes found by reference search). On
// success fills `out` and returns true. Concrete positions must agree
// token-for-token, which also means a concrete position never matches a
// parenthesized node: the parens would be tokens the template lacks.
// Holes absorb parens into the binding instead.
bool match_template(const Template& tmpl, const Ast& file,
                    const std::unordered_set<NodeId>& root_refs,
                    NodeId target, Bindings& out);

// Renders `tmpl` with each hole replaced by its bound node's exact source
// bytes, parenthesizing a binding when its precedence class is lower than
// its insertion context demands. Throws Error(MissingBinding) when a hole
// has no binding.
std::string substitute(const Template& tmpl, const Bindings& bindings,
                       const Ast& file, std::string_view file_source);

// Precedence class of an expression node; parenthesized nodes are primary
// because their span already carries the parens.
int expression_precedence(const Ast& ast, NodeId node);

// Minimum precedence class an expression must have to sit unparenthesized
// in `child`'s position under `parent`.
int required_precedence(const Ast& ast, NodeId parent, NodeId child);

// Precedence class of the text substitute() produces: the bound node's
// class when the template body is a lone hole, the body's own class
// otherwise. The caller wraps the rendered text in parens when this falls
// below what the replaced node's context demands.
int substitution_precedence(const Template& tmpl, const Bindings& bindings,
                            const Ast& file);

// Uppercase-initial concrete names the template mentions (call receivers
// like `Files`, constructed or cast-to types), for import management.
// Sorted, deduplicated simple names.
std::vector<std::string> template_introduced_names(const Template& tmpl);

}  // namespace retype
