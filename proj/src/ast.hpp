// ast.hpp - Span-preserving AST for the supported Java subset.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "span.hpp"
#include "token.hpp"

namespace retype {

using NodeId = uint32_t;
constexpr NodeId kNoNode = UINT32_MAX;

enum class NodeKind {
  CompilationUnit,
  PackageDecl,
  ImportDecl,
  ClassDecl,
  FieldDecl,
  MethodDecl,
  Param,
  LocalVarDecl,
  Block,
  // Statements.
  ExprStmt,
  If,
  While,
  For,
  Return,
  Opaque,  // unsupported statement, span-only, NameRef children for scanning
  // Expressions.
  MethodCall,
  FieldAccess,
  NameRef,
  New,
  Binary,
  Unary,
  Literal,
  Lambda,
  Cast,
  Assignment,
  // Types.
  TypeRefNode,
};

const char* node_kind_name(NodeKind kind);
bool is_expression_kind(NodeKind kind);
bool is_statement_kind(NodeKind kind);
bool is_declaration_kind(NodeKind kind);

// Structured type reference. Equality is by fully-qualified name plus
// recursive type-argument equality; the raw source text is ignored.
struct TypeRef {
  std::string raw;
  std::string qualified;
  std::vector<TypeRef> args;

  [[nodiscard]] std::string simple_name() const;
  // Canonical rendering: qualified name plus <...> args, no array suffixes.
  [[nodiscard]] std::string display() const;

  friend bool operator==(const TypeRef& a, const TypeRef& b) {
    return a.qualified == b.qualified && a.args == b.args;
  }
  friend bool operator!=(const TypeRef& a, const TypeRef& b) {
    return !(a == b);
  }
};

// Per-kind aux flag bits.
constexpr uint32_t kAuxParenthesized = 1u << 0;  // expr was written in parens
constexpr uint32_t kAuxForEach = 1u << 1;        // For is an enhanced for
constexpr uint32_t kAuxPostfix = 1u << 2;        // Unary is postfix
constexpr uint32_t kAuxHasReceiver = 1u << 3;    // MethodCall has a receiver
constexpr uint32_t kAuxWildcardImport = 1u << 4; // ImportDecl ends with .*

struct AstNode {
  NodeKind kind = NodeKind::CompilationUnit;
  Span span;
  // Name for decls and NameRef/MethodCall/FieldAccess; operator text for
  // Binary/Unary/Assignment; literal text for Literal; qualified name for
  // PackageDecl/ImportDecl.
  std::string text;
  std::vector<NodeId> children;
  NodeId parent = kNoNode;
  int32_t type_index = -1;  // index into Ast::types for TypeRefNode
  uint32_t aux = 0;

  [[nodiscard]] bool flag(uint32_t bit) const { return (aux & bit) != 0; }
};

// One parsed file: node arena, token stream, and type table. Immutable
// after parsing; safe to share read-only across threads.
struct Ast {
  std::vector<AstNode> nodes;
  std::vector<TypeRef> types;
  std::vector<Token> tokens;
  NodeId root = kNoNode;

  [[nodiscard]] const AstNode& node(NodeId id) const { return nodes[id]; }
  [[nodiscard]] const TypeRef* type_of(NodeId id) const {
    const int32_t idx = nodes[id].type_index;
    return idx < 0 ? nullptr : &types[static_cast<size_t>(idx)];
  }

  // First child of `id` with the given kind, or kNoNode.
  [[nodiscard]] NodeId child_of_kind(NodeId id, NodeKind kind) const;
  // Nearest ancestor (excluding `id` itself) with the given kind.
  [[nodiscard]] NodeId ancestor_of_kind(NodeId id, NodeKind kind) const;
  // Innermost node whose span contains the byte offset.
  [[nodiscard]] NodeId node_at_offset(uint32_t offset) const;
  // Pre-order walk of the subtree rooted at `id`.
  void walk(NodeId id, const std::function<void(NodeId)>& fn) const;
  // Token texts of tokens lying inside the node's span.
  [[nodiscard]] std::vector<std::string> node_token_texts(NodeId id) const;
  [[nodiscard]] bool same_token_sequence(NodeId a, NodeId b) const;
};

}  // namespace retype
