// tmpl.cpp - Template parsing, structural matching, and substitution.
#include "tmpl.hpp"

#include <algorithm>
#include <cctype>

#include "error.hpp"
#include "parser.hpp"

namespace retype {

namespace {

bool looks_like_hole(std::string_view text) {
  return text.size() >= 2 && text.front() == '$' && text.back() == '$';
}

// Expression children of a node, skipping the TypeRefNode a `new` or cast
// carries; structural matching compares types separately.
std::vector<NodeId> expr_children(const Ast& ast, NodeId id) {
  std::vector<NodeId> out;
  for (NodeId child : ast.node(id).children) {
    if (ast.node(child).kind != NodeKind::TypeRefNode) out.push_back(child);
  }
  return out;
}

// The type a `new` or cast names, carried by its TypeRefNode child.
const TypeRef* constructed_type(const Ast& ast, NodeId id) {
  const NodeId child = ast.child_of_kind(id, NodeKind::TypeRefNode);
  return child == kNoNode ? nullptr : ast.type_of(child);
}

class Matcher {
 public:
  Matcher(const Template& tmpl, const Ast& file,
          const std::unordered_set<NodeId>& root_refs)
      : tmpl_(tmpl), file_(file), root_refs_(root_refs) {}

  bool run(NodeId target, Bindings& out) {
    bindings_.clear();
    if (!match_node(tmpl_.ast.root, target)) return false;
    out = std::move(bindings_);
    return true;
  }

 private:
  bool subtree_references_root(NodeId id) const {
    bool found = false;
    file_.walk(id, [&](NodeId n) { found = found || root_refs_.count(n) > 0; });
    return found;
  }

  bool bind_hole(int index, NodeId target) {
    if (index == 1) {
      if (root_refs_.count(target) == 0) return false;
    } else {
      if (!is_expression_kind(file_.node(target).kind)) return false;
      if (subtree_references_root(target)) return false;
    }
    auto [it, fresh] = bindings_.emplace(index, target);
    if (!fresh) return file_.same_token_sequence(it->second, target);
    return true;
  }

  bool match_children(NodeId pattern, NodeId target) {
    const std::vector<NodeId> pat = expr_children(tmpl_.ast, pattern);
    const std::vector<NodeId> tgt = expr_children(file_, target);
    if (pat.size() != tgt.size()) return false;
    for (size_t i = 0; i < pat.size(); ++i) {
      if (!match_node(pat[i], tgt[i])) return false;
    }
    return true;
  }

  bool same_type_name(NodeId pattern, NodeId target) const {
    const TypeRef* pt = constructed_type(tmpl_.ast, pattern);
    const TypeRef* tt = constructed_type(file_, target);
    if (pt == nullptr || tt == nullptr) return false;
    // Templates use simple names; qualification differences are the import
    // pass's business, not the matcher's.
    return pt->simple_name() == tt->simple_name();
  }

  bool match_node(NodeId pattern, NodeId target) {
    const AstNode& p = tmpl_.ast.node(pattern);
    if (p.kind == NodeKind::NameRef) {
      if (const std::optional<int> hole = hole_number(p.text)) {
        return bind_hole(*hole, target);
      }
    }
    const AstNode& t = file_.node(target);
    // A parenthesized node carries paren tokens the template does not;
    // only a hole may absorb those.
    if (t.flag(kAuxParenthesized)) return false;
    if (p.kind != t.kind) return false;
    switch (p.kind) {
      case NodeKind::NameRef:
      case NodeKind::Literal:
      case NodeKind::Param:
        return p.text == t.text;
      case NodeKind::MethodCall:
        if (p.text != t.text) return false;
        if (p.flag(kAuxHasReceiver) != t.flag(kAuxHasReceiver)) return false;
        return match_children(pattern, target);
      case NodeKind::FieldAccess:
        return p.text == t.text && match_children(pattern, target);
      case NodeKind::New:
        return same_type_name(pattern, target) &&
               match_children(pattern, target);
      case NodeKind::Cast:
        return same_type_name(pattern, target) &&
               match_children(pattern, target);
      case NodeKind::Binary:
      case NodeKind::Assignment:
        return p.text == t.text && match_children(pattern, target);
      case NodeKind::Unary:
        return p.text == t.text &&
               p.flag(kAuxPostfix) == t.flag(kAuxPostfix) &&
               match_children(pattern, target);
      case NodeKind::Lambda: {
        if (p.children.size() != t.children.size()) return false;
        for (size_t i = 0; i < p.children.size(); ++i) {
          if (!match_node(p.children[i], t.children[i])) return false;
        }
        return true;
      }
      default:
        return false;
    }
  }

  const Template& tmpl_;
  const Ast& file_;
  const std::unordered_set<NodeId>& root_refs_;
  Bindings bindings_;
};

}  // namespace

bool Template::has_hole(int index) const {
  return std::any_of(holes.begin(), holes.end(),
                     [index](const HoleSite& h) { return h.index == index; });
}

std::optional<int> hole_number(std::string_view text) {
  if (!looks_like_hole(text)) return std::nullopt;
  const std::string_view interior = text.substr(1, text.size() - 2);
  if (interior.empty()) return std::nullopt;
  int value = 0;
  for (char c : interior) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
    if (value > 999) return std::nullopt;
  }
  if (value < 1) return std::nullopt;
  return value;
}

Template parse_template(std::string_view text) {
  Template tmpl;
  tmpl.text = std::string(text);
  try {
    tmpl.ast = parse_expression_text(text);
  } catch (const Error& e) {
    throw_error(ErrorCode::Template,
                "template `" + tmpl.text + "` is not an expression: " +
                    e.what());
  }
  int hole_tokens = 0;
  for (const Token& token : tmpl.ast.tokens) {
    if (token.kind != TokenKind::Identifier || !looks_like_hole(token.text)) {
      continue;
    }
    ++hole_tokens;
    const std::optional<int> index = hole_number(token.text);
    if (!index) {
      throw_error(ErrorCode::Template, "template `" + tmpl.text +
                                           "`: bad hole `" + token.text +
                                           "` (want $n$ with n >= 1)");
    }
    const NodeId node = tmpl.ast.node_at_offset(token.span.begin);
    const AstNode& n = tmpl.ast.node(node);
    if (n.kind != NodeKind::NameRef || n.text != token.text) {
      throw_error(ErrorCode::Template,
                  "template `" + tmpl.text + "`: hole `" + token.text +
                      "` must stand alone as an expression atom");
    }
    tmpl.holes.push_back(HoleSite{*index, token.span, node});
  }
  tmpl.score = static_cast<int>(tmpl.ast.tokens.size()) - hole_tokens;
  return tmpl;
}

bool match_template(const Template& tmpl, const Ast& file,
                    const std::unordered_set<NodeId>& root_refs,
                    NodeId target, Bindings& out) {
  return Matcher(tmpl, file, root_refs).run(target, out);
}

int binary_op_precedence(std::string_view op) {
  if (op == "||") return kPrecOr;
  if (op == "&&") return kPrecAnd;
  if (op == "|") return kPrecBitOr;
  if (op == "^") return kPrecBitXor;
  if (op == "&") return kPrecBitAnd;
  if (op == "==" || op == "!=") return kPrecEquality;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" ||
      op == "instanceof") {
    return kPrecRelational;
  }
  if (op == "<<" || op == ">>" || op == ">>>") return kPrecShift;
  if (op == "+" || op == "-") return kPrecAdditive;
  return kPrecMultiplicative;
}

int expression_precedence(const Ast& ast, NodeId node) {
  const AstNode& n = ast.node(node);
  if (n.flag(kAuxParenthesized)) return kPrecPrimary;
  switch (n.kind) {
    case NodeKind::NameRef:
    case NodeKind::Literal:
    case NodeKind::MethodCall:
    case NodeKind::FieldAccess:
    case NodeKind::New:
      return kPrecPrimary;
    case NodeKind::Unary:
    case NodeKind::Cast:
      return kPrecUnary;
    case NodeKind::Binary:
      return binary_op_precedence(n.text);
    case NodeKind::Assignment:
    case NodeKind::Lambda:
      return kPrecAssignment;
    default:
      return kPrecAssignment;
  }
}

int required_precedence(const Ast& ast, NodeId parent, NodeId child) {
  if (parent == kNoNode) return kPrecAssignment;
  const AstNode& p = ast.node(parent);
  const std::vector<NodeId> kids = expr_children(ast, parent);
  const bool is_first = !kids.empty() && kids.front() == child;
  switch (p.kind) {
    case NodeKind::MethodCall:
      // Only the receiver is position-sensitive; arguments take anything.
      return (p.flag(kAuxHasReceiver) && is_first) ? kPrecPrimary
                                                   : kPrecAssignment;
    case NodeKind::FieldAccess:
      return kPrecPrimary;
    case NodeKind::Binary: {
      const int prec = binary_op_precedence(p.text);
      // Left-associative operators: the right operand needs to bind tighter.
      return is_first ? prec : prec + 1;
    }
    case NodeKind::Unary:
      return p.flag(kAuxPostfix) ? kPrecPrimary : kPrecUnary;
    case NodeKind::Cast:
      return kPrecUnary;
    case NodeKind::Assignment:
      return is_first ? kPrecPrimary : kPrecAssignment;
    default:
      return kPrecAssignment;
  }
}

std::string substitute(const Template& tmpl, const Bindings& bindings,
                       const Ast& file, std::string_view file_source) {
  std::string out;
  size_t cursor = 0;
  for (const HoleSite& hole : tmpl.holes) {
    const auto it = bindings.find(hole.index);
    if (it == bindings.end()) {
      throw_error(ErrorCode::MissingBinding,
                  "no binding for hole $" + std::to_string(hole.index) +
                      "$ in template `" + tmpl.text + "`");
    }
    out.append(tmpl.text, cursor, hole.token_span.begin - cursor);
    const AstNode& bound = file.node(it->second);
    std::string piece(
        file_source.substr(bound.span.begin, bound.span.size()));
    const NodeId parent = tmpl.ast.node(hole.node).parent;
    const int need = required_precedence(tmpl.ast, parent, hole.node);
    if (expression_precedence(file, it->second) < need) {
      piece = "(" + piece + ")";
    }
    out += piece;
    cursor = hole.token_span.end;
  }
  out.append(tmpl.text, cursor, tmpl.text.size() - cursor);
  return out;
}

int substitution_precedence(const Template& tmpl, const Bindings& bindings,
                            const Ast& file) {
  const AstNode& body = tmpl.ast.node(tmpl.ast.root);
  if (body.kind == NodeKind::NameRef && !body.flag(kAuxParenthesized)) {
    if (const std::optional<int> hole = hole_number(body.text)) {
      const auto it = bindings.find(*hole);
      if (it != bindings.end()) return expression_precedence(file, it->second);
    }
  }
  return expression_precedence(tmpl.ast, tmpl.ast.root);
}

std::vector<std::string> template_introduced_names(const Template& tmpl) {
  std::vector<std::string> names;
  tmpl.ast.walk(tmpl.ast.root, [&](NodeId id) {
    const AstNode& n = tmpl.ast.node(id);
    if (n.kind == NodeKind::NameRef && !hole_number(n.text) &&
        !n.text.empty() && std::isupper(static_cast<unsigned char>(n.text[0]))) {
      names.push_back(n.text);
    }
    if (n.kind == NodeKind::New || n.kind == NodeKind::Cast) {
      if (const TypeRef* type = constructed_type(tmpl.ast, id)) {
        names.push_back(type->simple_name());
      }
    }
  });
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

}  // namespace retype
