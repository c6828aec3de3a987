// ast.cpp
#include "ast.hpp"

namespace retype {

const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::CompilationUnit: return "CompilationUnit";
    case NodeKind::PackageDecl: return "PackageDecl";
    case NodeKind::ImportDecl: return "ImportDecl";
    case NodeKind::ClassDecl: return "ClassDecl";
    case NodeKind::FieldDecl: return "FieldDecl";
    case NodeKind::MethodDecl: return "MethodDecl";
    case NodeKind::Param: return "Param";
    case NodeKind::LocalVarDecl: return "LocalVarDecl";
    case NodeKind::Block: return "Block";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::If: return "If";
    case NodeKind::While: return "While";
    case NodeKind::For: return "For";
    case NodeKind::Return: return "Return";
    case NodeKind::Opaque: return "Opaque";
    case NodeKind::MethodCall: return "MethodCall";
    case NodeKind::FieldAccess: return "FieldAccess";
    case NodeKind::NameRef: return "NameRef";
    case NodeKind::New: return "New";
    case NodeKind::Binary: return "Binary";
    case NodeKind::Unary: return "Unary";
    case NodeKind::Literal: return "Literal";
    case NodeKind::Lambda: return "Lambda";
    case NodeKind::Cast: return "Cast";
    case NodeKind::Assignment: return "Assignment";
    case NodeKind::TypeRefNode: return "TypeRef";
  }
  return "Unknown";
}

bool is_expression_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::MethodCall:
    case NodeKind::FieldAccess:
    case NodeKind::NameRef:
    case NodeKind::New:
    case NodeKind::Binary:
    case NodeKind::Unary:
    case NodeKind::Literal:
    case NodeKind::Lambda:
    case NodeKind::Cast:
    case NodeKind::Assignment:
      return true;
    default:
      return false;
  }
}

bool is_statement_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::ExprStmt:
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::For:
    case NodeKind::Return:
    case NodeKind::LocalVarDecl:
    case NodeKind::Block:
    case NodeKind::Opaque:
      return true;
    default:
      return false;
  }
}

bool is_declaration_kind(NodeKind kind) {
  switch (kind) {
    case NodeKind::FieldDecl:
    case NodeKind::MethodDecl:
    case NodeKind::Param:
    case NodeKind::LocalVarDecl:
      return true;
    default:
      return false;
  }
}

std::string TypeRef::simple_name() const {
  const size_t dot = qualified.rfind('.');
  return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
}

std::string TypeRef::display() const {
  std::string out = qualified;
  if (!args.empty()) {
    out += '<';
    for (size_t i = 0; i < args.size(); ++i) {
      if (i > 0) out += ", ";
      out += args[i].display();
    }
    out += '>';
  }
  return out;
}

NodeId Ast::child_of_kind(NodeId id, NodeKind kind) const {
  for (const NodeId c : nodes[id].children)
    if (nodes[c].kind == kind) return c;
  return kNoNode;
}

NodeId Ast::ancestor_of_kind(NodeId id, NodeKind kind) const {
  NodeId cur = nodes[id].parent;
  while (cur != kNoNode) {
    if (nodes[cur].kind == kind) return cur;
    cur = nodes[cur].parent;
  }
  return kNoNode;
}

NodeId Ast::node_at_offset(uint32_t offset) const {
  if (root == kNoNode) return kNoNode;
  NodeId best = kNoNode;
  NodeId cur = root;
  while (true) {
    if (!nodes[cur].span.contains_offset(offset)) break;
    best = cur;
    NodeId next = kNoNode;
    for (const NodeId c : nodes[cur].children) {
      if (nodes[c].span.contains_offset(offset)) {
        next = c;
        break;
      }
    }
    if (next == kNoNode) break;
    cur = next;
  }
  return best;
}

void Ast::walk(NodeId id, const std::function<void(NodeId)>& fn) const {
  fn(id);
  for (const NodeId c : nodes[id].children) walk(c, fn);
}

std::vector<std::string> Ast::node_token_texts(NodeId id) const {
  return token_texts_in_span(tokens, nodes[id].span);
}

bool Ast::same_token_sequence(NodeId a, NodeId b) const {
  return node_token_texts(a) == node_token_texts(b);
}

}  // namespace retype
