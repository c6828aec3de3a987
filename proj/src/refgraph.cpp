// refgraph.cpp - Reference search and neighbor discovery.
#include "refgraph.hpp"

#include <algorithm>

#include "error.hpp"

namespace retype {

namespace {

// Expression children, skipping the TypeRefNode of `new` and casts.
std::vector<NodeId> expr_children(const Ast& ast, NodeId id) {
  std::vector<NodeId> out;
  for (NodeId child : ast.node(id).children) {
    if (ast.node(child).kind != NodeKind::TypeRefNode) out.push_back(child);
  }
  return out;
}

std::vector<NodeId> param_list(const Ast& ast, NodeId method) {
  std::vector<NodeId> out;
  for (NodeId child : ast.node(method).children) {
    if (ast.node(child).kind == NodeKind::Param) out.push_back(child);
  }
  return out;
}

// Unique project class for a simple name; absent when missing or shared
// by several files (we refuse to guess).
std::optional<NodeRef> unique_class(const Project& project,
                                    const std::string& simple_name) {
  const auto it = project.classes.find(simple_name);
  if (it == project.classes.end() || it->second.size() != 1) {
    return std::nullopt;
  }
  return it->second.front();
}

std::optional<NodeRef> field_in_class(const Project& project, NodeRef cls,
                                      const std::string& name) {
  const Ast& ast = project.file(cls.file).ast;
  for (NodeId child : ast.node(cls.node).children) {
    if (ast.node(child).kind == NodeKind::FieldDecl &&
        ast.node(child).text == name) {
      return NodeRef{cls.file, child};
    }
  }
  return std::nullopt;
}

// Methods (or constructors) of `cls` with the given name and arity.
std::vector<NodeRef> methods_in_class(const Project& project, NodeRef cls,
                                      const std::string& name, size_t arity) {
  std::vector<NodeRef> out;
  const Ast& ast = project.file(cls.file).ast;
  for (NodeId child : ast.node(cls.node).children) {
    if (ast.node(child).kind != NodeKind::MethodDecl) continue;
    if (ast.node(child).text != name) continue;
    if (param_list(ast, child).size() != arity) continue;
    out.push_back(NodeRef{cls.file, child});
  }
  return out;
}

// Declared type of a name reference's declaration, if resolvable.
const TypeRef* type_of_resolved(const Project& project, NodeRef ref);

// The class whose members a receiver expression exposes: the declared
// type's class for a resolvable variable, the named class for a bare
// class name (static access), or the field's type's class for a nested
// field access.
std::optional<NodeRef> receiver_class(const Project& project, NodeRef recv) {
  const AstNode& r = project.node(recv);
  if (r.kind == NodeKind::NameRef) {
    if (r.text == "this") {
      const NodeRef cls = project.ancestor_of_kind(recv, NodeKind::ClassDecl);
      return cls.valid() ? std::optional<NodeRef>(cls) : std::nullopt;
    }
    if (const TypeRef* type = type_of_resolved(project, recv)) {
      return unique_class(project, type->simple_name());
    }
    return unique_class(project, r.text);  // static access via class name
  }
  if (r.kind == NodeKind::FieldAccess) {
    if (const auto field = resolve_field_access(project, recv)) {
      if (const TypeRef* type = declared_type(project, *field)) {
        return unique_class(project, type->simple_name());
      }
    }
  }
  return std::nullopt;
}

// Overload resolution for a call node: candidate methods matched by name
// and arity, narrowed by the declared types of resolvable arguments.
// Receiverless calls search the enclosing class chain, innermost first.
std::vector<NodeRef> resolve_call(const Project& project, NodeRef call) {
  const Ast& ast = project.file(call.file).ast;
  const AstNode& c = ast.node(call.node);
  std::vector<NodeId> kids = expr_children(ast, call.node);
  const bool has_recv = c.flag(kAuxHasReceiver);
  std::vector<NodeId> args(kids.begin() + (has_recv ? 1 : 0), kids.end());

  std::vector<NodeRef> candidates;
  if (has_recv) {
    const auto cls =
        receiver_class(project, NodeRef{call.file, kids.front()});
    if (!cls) return {};
    candidates = methods_in_class(project, *cls, c.text, args.size());
  } else {
    NodeRef cls = project.ancestor_of_kind(call, NodeKind::ClassDecl);
    while (cls.valid()) {
      candidates = methods_in_class(project, cls, c.text, args.size());
      if (!candidates.empty()) break;
      cls = project.ancestor_of_kind(cls, NodeKind::ClassDecl);
    }
  }
  if (candidates.size() <= 1) return candidates;

  // Keep overloads whose parameter types agree with every argument whose
  // declared type we can see; arguments we cannot type constrain nothing.
  std::vector<NodeRef> narrowed;
  for (const NodeRef& method : candidates) {
    const Ast& mast = project.file(method.file).ast;
    const std::vector<NodeId> params = param_list(mast, method.node);
    bool ok = true;
    for (size_t j = 0; j < args.size() && ok; ++j) {
      const TypeRef* arg_type =
          type_of_resolved(project, NodeRef{call.file, args[j]});
      if (arg_type == nullptr) continue;
      const TypeRef* param_type =
          declared_type(project, NodeRef{method.file, params[j]});
      ok = param_type != nullptr && *param_type == *arg_type;
    }
    if (ok) narrowed.push_back(method);
  }
  return narrowed;
}

const TypeRef* type_of_resolved(const Project& project, NodeRef ref) {
  const AstNode& n = project.node(ref);
  if (n.kind == NodeKind::NameRef) {
    if (const auto decl = resolve_name(project, ref)) {
      return declared_type(project, *decl);
    }
    return nullptr;
  }
  if (n.kind == NodeKind::FieldAccess) {
    if (const auto decl = resolve_field_access(project, ref)) {
      return declared_type(project, *decl);
    }
  }
  return nullptr;
}

// Position of `site` in the call's argument list, or -1 for the receiver
// and for nodes that are not direct children.
int argument_position(const Ast& ast, NodeId call, NodeId site) {
  const AstNode& c = ast.node(call);
  const std::vector<NodeId> kids = expr_children(ast, call);
  const size_t first_arg = c.flag(kAuxHasReceiver) ? 1 : 0;
  for (size_t i = first_arg; i < kids.size(); ++i) {
    if (kids[i] == site) return static_cast<int>(i - first_arg);
  }
  return -1;
}

}  // namespace

const char* root_kind_name(RootKind kind) {
  switch (kind) {
    case RootKind::LocalVar:
      return "local";
    case RootKind::Parameter:
      return "parameter";
    case RootKind::Field:
      return "field";
    case RootKind::MethodReturn:
      return "method return";
  }
  return "local";
}

const char* scope_kind_name(ScopeKind kind) {
  switch (kind) {
    case ScopeKind::Local:
      return "local";
    case ScopeKind::File:
      return "file";
    case ScopeKind::Project:
      return "project";
  }
  return "file";
}

std::optional<ScopeKind> scope_kind_from_name(std::string_view name) {
  if (name == "local") return ScopeKind::Local;
  if (name == "file") return ScopeKind::File;
  if (name == "project") return ScopeKind::Project;
  return std::nullopt;
}

const char* edge_reason_name(EdgeReason reason) {
  switch (reason) {
    case EdgeReason::Assignment:
      return "assignment";
    case EdgeReason::ArgumentPassing:
      return "argument passing";
    case EdgeReason::ReturnFlow:
      return "return flow";
    case EdgeReason::FieldAccess:
      return "field access";
  }
  return "assignment";
}

const TypeRef* declared_type(const Project& project, NodeRef decl) {
  const Ast& ast = project.file(decl.file).ast;
  const NodeId type_node = ast.child_of_kind(decl.node, NodeKind::TypeRefNode);
  return type_node == kNoNode ? nullptr : ast.type_of(type_node);
}

NodeRef declared_type_node(const Project& project, NodeRef decl) {
  const Ast& ast = project.file(decl.file).ast;
  return NodeRef{decl.file,
                 ast.child_of_kind(decl.node, NodeKind::TypeRefNode)};
}

std::optional<NodeRef> resolve_name(const Project& project, NodeRef ref) {
  const Ast& ast = project.file(ref.file).ast;
  const AstNode& r = ast.node(ref.node);
  const uint32_t pos = r.span.begin;
  NodeId came_from = ref.node;
  NodeId cur = r.parent;
  while (cur != kNoNode) {
    const AstNode& p = ast.node(cur);
    switch (p.kind) {
      case NodeKind::Block:
        for (NodeId child : p.children) {
          if (ast.node(child).kind == NodeKind::LocalVarDecl &&
              ast.node(child).text == r.text &&
              ast.node(child).span.begin < pos) {
            return NodeRef{ref.file, child};
          }
        }
        break;
      case NodeKind::For:
        for (NodeId child : p.children) {
          if (ast.node(child).kind != NodeKind::LocalVarDecl ||
              ast.node(child).text != r.text) {
            continue;
          }
          // An enhanced-for variable is visible in the body only; the
          // iterable still sees the outer name.
          if (p.flag(kAuxForEach)) {
            if (came_from == p.children.back()) return NodeRef{ref.file, child};
          } else if (ast.node(child).span.begin < pos) {
            return NodeRef{ref.file, child};
          }
        }
        break;
      case NodeKind::Lambda:
      case NodeKind::MethodDecl:
        for (NodeId child : p.children) {
          if (ast.node(child).kind == NodeKind::Param &&
              ast.node(child).text == r.text) {
            return NodeRef{ref.file, child};
          }
        }
        break;
      case NodeKind::ClassDecl:
        for (NodeId child : p.children) {
          if (ast.node(child).kind == NodeKind::FieldDecl &&
              ast.node(child).text == r.text) {
            return NodeRef{ref.file, child};
          }
        }
        break;
      default:
        break;
    }
    came_from = cur;
    cur = p.parent;
  }
  return std::nullopt;
}

std::optional<NodeRef> resolve_field_access(const Project& project,
                                            NodeRef access) {
  const AstNode& fa = project.node(access);
  if (fa.kind != NodeKind::FieldAccess) return std::nullopt;
  const std::vector<NodeId> kids =
      expr_children(project.file(access.file).ast, access.node);
  if (kids.empty()) return std::nullopt;
  const NodeRef recv{access.file, kids.front()};
  // `this.f` searches the enclosing class chain; a typed receiver exposes
  // exactly its declared type's class.
  if (project.node(recv).kind == NodeKind::NameRef &&
      project.node(recv).text == "this") {
    NodeRef cls = project.ancestor_of_kind(access, NodeKind::ClassDecl);
    while (cls.valid()) {
      if (const auto field = field_in_class(project, cls, fa.text)) {
        return field;
      }
      cls = project.ancestor_of_kind(cls, NodeKind::ClassDecl);
    }
    return std::nullopt;
  }
  if (const auto cls = receiver_class(project, recv)) {
    return field_in_class(project, *cls, fa.text);
  }
  return std::nullopt;
}

RootElement make_root_element(const Project& project, NodeRef decl) {
  const AstNode& d = project.node(decl);
  RootElement root;
  switch (d.kind) {
    case NodeKind::LocalVarDecl:
      root.kind = RootKind::LocalVar;
      break;
    case NodeKind::Param:
      root.kind = RootKind::Parameter;
      break;
    case NodeKind::FieldDecl:
      root.kind = RootKind::Field;
      break;
    case NodeKind::MethodDecl:
      root.kind = RootKind::MethodReturn;
      break;
    default:
      throw_error(ErrorCode::Selector,
                  "selected node is not a declaration: " +
                      std::string(node_kind_name(d.kind)));
  }
  root.name = d.text;
  root.decl = decl;
  const TypeRef* type = declared_type(project, decl);
  if (type == nullptr) {
    throw_error(ErrorCode::Selector,
                "declaration `" + d.text + "` has no declared type");
  }
  root.declared_type = *type;
  if (root.kind == RootKind::LocalVar || root.kind == RootKind::Parameter) {
    root.enclosing_method = project.ancestor_of_kind(decl, NodeKind::MethodDecl);
  }
  root.enclosing_class = project.ancestor_of_kind(decl, NodeKind::ClassDecl);
  return root;
}

std::optional<NodeRef> root_decl_at(const Project& project, int file,
                                    uint32_t offset) {
  const SourceFile& sf = project.file(file);
  if (!sf.parsed) return std::nullopt;
  const NodeId hit = sf.ast.node_at_offset(offset);
  if (hit == kNoNode) return std::nullopt;
  if (sf.ast.node(hit).kind == NodeKind::NameRef) {
    if (const auto decl = resolve_name(project, NodeRef{file, hit})) {
      return decl;
    }
  }
  // Walk outward to the covering declaration, but never across a block
  // boundary: a position inside a method body names what it touches, not
  // the method.
  for (NodeId cur = hit; cur != kNoNode; cur = sf.ast.node(cur).parent) {
    const NodeKind kind = sf.ast.node(cur).kind;
    if (kind == NodeKind::Block) break;
    if (kind == NodeKind::LocalVarDecl || kind == NodeKind::Param ||
        kind == NodeKind::FieldDecl || kind == NodeKind::MethodDecl) {
      return NodeRef{file, cur};
    }
  }
  return std::nullopt;
}

NodeRef root_decl_by_member(const Project& project,
                            const std::string& class_name,
                            const std::string& member_name) {
  const auto it = project.classes.find(class_name);
  if (it == project.classes.end()) {
    throw_error(ErrorCode::Selector, "class not found: " + class_name);
  }
  if (it->second.size() > 1) {
    throw_error(ErrorCode::Selector,
                "class name is ambiguous across the project: " + class_name);
  }
  const NodeRef cls = it->second.front();
  if (const auto field = field_in_class(project, cls, member_name)) {
    return *field;
  }
  const Ast& ast = project.file(cls.file).ast;
  for (NodeId child : ast.node(cls.node).children) {
    if (ast.node(child).kind == NodeKind::MethodDecl &&
        ast.node(child).text == member_name &&
        ast.child_of_kind(child, NodeKind::TypeRefNode) != kNoNode) {
      return NodeRef{cls.file, child};
    }
  }
  throw_error(ErrorCode::Selector,
              "no field or method `" + member_name + "` in class " +
                  class_name);
}

Scope make_scope(const Project& project, const RootElement& root,
                 ScopeKind kind) {
  Scope scope;
  scope.kind = kind;
  switch (kind) {
    case ScopeKind::Local:
      if (root.kind == RootKind::Field || root.kind == RootKind::MethodReturn) {
        throw_error(ErrorCode::Scope,
                    std::string("local scope cannot anchor a ") +
                        root_kind_name(root.kind) + " root");
      }
      if (!root.enclosing_method.valid()) {
        throw_error(ErrorCode::Scope, "root has no enclosing method");
      }
      scope.anchor = root.enclosing_method;
      break;
    case ScopeKind::File:
      scope.anchor =
          NodeRef{root.decl.file, project.file(root.decl.file).ast.root};
      break;
    case ScopeKind::Project:
      scope.anchor = NodeRef{};
      break;
  }
  return scope;
}

bool in_scope(const Project& project, const Scope& scope, NodeRef ref) {
  switch (scope.kind) {
    case ScopeKind::Project:
      return true;
    case ScopeKind::File:
      return ref.file == scope.anchor.file;
    case ScopeKind::Local:
      return ref.file == scope.anchor.file &&
             project.node(scope.anchor).span.contains(project.node(ref).span);
  }
  return false;
}

std::vector<Usage> find_references(const Project& project,
                                   const RootElement& root,
                                   const Scope& scope) {
  if (scope.kind == ScopeKind::Local &&
      (root.kind == RootKind::Field || root.kind == RootKind::MethodReturn)) {
    throw_error(ErrorCode::Scope,
                std::string("local scope cannot search for a ") +
                    root_kind_name(root.kind) + " root");
  }
  std::vector<std::pair<int, NodeId>> regions;
  switch (scope.kind) {
    case ScopeKind::Local:
      regions.emplace_back(scope.anchor.file, scope.anchor.node);
      break;
    case ScopeKind::File:
      regions.emplace_back(scope.anchor.file,
                           project.file(scope.anchor.file).ast.root);
      break;
    case ScopeKind::Project:
      for (size_t i = 0; i < project.files.size(); ++i) {
        if (project.files[i].parsed) {
          regions.emplace_back(static_cast<int>(i),
                               project.files[i].ast.root);
        }
      }
      break;
  }
  std::vector<Usage> out;
  for (const auto& [file, region] : regions) {
    const Ast& ast = project.file(file).ast;
    ast.walk(region, [&](NodeId id) {
      const AstNode& n = ast.node(id);
      const NodeRef site{file, id};
      bool is_usage = false;
      if (root.kind == RootKind::MethodReturn) {
        if (n.kind == NodeKind::MethodCall && n.text == root.name) {
          const std::vector<NodeRef> targets = resolve_call(project, site);
          is_usage = targets.size() == 1 && targets.front() == root.decl;
        }
      } else if (n.kind == NodeKind::NameRef && n.text == root.name) {
        is_usage = resolve_name(project, site) == std::optional(root.decl);
      } else if (n.kind == NodeKind::FieldAccess && n.text == root.name &&
                 root.kind == RootKind::Field) {
        is_usage = resolve_field_access(project, site) ==
                   std::optional(root.decl);
      }
      if (is_usage) {
        out.push_back(Usage{site, project.parent(site),
                            project.ancestor_of_kind(site,
                                                     NodeKind::MethodDecl)});
      }
    });
  }
  std::sort(out.begin(), out.end(), [&](const Usage& a, const Usage& b) {
    return a.site.file != b.site.file
               ? a.site.file < b.site.file
               : project.node(a.site).span.begin <
                     project.node(b.site).span.begin;
  });
  return out;
}

std::optional<NeighborCandidate> discover_neighbor(const Project& project,
                                                   const Usage& usage) {
  const Ast& ast = project.file(usage.site.file).ast;
  const NodeId site = usage.site.node;
  const NodeId parent = ast.node(site).parent;
  if (parent == kNoNode) return std::nullopt;
  const AstNode& p = ast.node(parent);
  const int file = usage.site.file;
  const NodeRef witness{file, parent};

  const auto element_of = [&](NodeId expr) -> std::optional<NodeRef> {
    const NodeRef ref{file, expr};
    switch (ast.node(expr).kind) {
      case NodeKind::NameRef:
        return resolve_name(project, ref);
      case NodeKind::FieldAccess:
        return resolve_field_access(project, ref);
      case NodeKind::MethodCall: {
        const std::vector<NodeRef> targets = resolve_call(project, ref);
        if (targets.size() == 1) return targets.front();
        return std::nullopt;
      }
      default:
        return std::nullopt;
    }
  };

  switch (p.kind) {
    case NodeKind::Assignment: {
      if (p.text != "=") return std::nullopt;  // compound ops stay typed
      const std::vector<NodeId> kids = expr_children(ast, parent);
      if (kids.size() != 2) return std::nullopt;
      const NodeId other = kids[0] == site ? kids[1] : kids[0];
      const auto decl = element_of(other);
      if (!decl) return std::nullopt;
      const EdgeReason reason =
          ast.node(other).kind == NodeKind::FieldAccess
              ? EdgeReason::FieldAccess
              : EdgeReason::Assignment;
      return NeighborCandidate{*decl, reason, witness};
    }
    case NodeKind::LocalVarDecl:
    case NodeKind::FieldDecl:
      // The usage is the declaration's initializer: the declared element
      // receives the value.
      return NeighborCandidate{NodeRef{file, parent}, EdgeReason::Assignment,
                               witness};
    case NodeKind::Return: {
      const NodeRef method =
          project.ancestor_of_kind(usage.site, NodeKind::MethodDecl);
      if (!method.valid() ||
          !declared_type_node(project, method).valid()) {
        return std::nullopt;
      }
      // A return inside a lambda flows to the lambda, not to the method.
      const NodeRef lambda =
          project.ancestor_of_kind(usage.site, NodeKind::Lambda);
      if (lambda.valid() && project.node(lambda).span.begin >
                                project.node(method).span.begin) {
        return std::nullopt;
      }
      return NeighborCandidate{method, EdgeReason::ReturnFlow, witness};
    }
    case NodeKind::MethodCall: {
      const int position = argument_position(ast, parent, site);
      if (position < 0) return std::nullopt;  // the receiver is not an edge
      const std::vector<NodeRef> targets =
          resolve_call(project, NodeRef{file, parent});
      if (targets.empty()) return std::nullopt;
      if (targets.size() > 1) {
        return NeighborCandidate{NodeRef{}, EdgeReason::ArgumentPassing,
                                 witness, true};
      }
      const Ast& mast = project.file(targets.front().file).ast;
      const std::vector<NodeId> params =
          param_list(mast, targets.front().node);
      return NeighborCandidate{
          NodeRef{targets.front().file,
                  params[static_cast<size_t>(position)]},
          EdgeReason::ArgumentPassing, witness};
    }
    case NodeKind::New: {
      const int position = argument_position(ast, parent, site);
      if (position < 0) return std::nullopt;
      const TypeRef* type = nullptr;
      const NodeId type_node =
          ast.child_of_kind(parent, NodeKind::TypeRefNode);
      if (type_node != kNoNode) type = ast.type_of(type_node);
      if (type == nullptr) return std::nullopt;
      const auto cls = unique_class(project, type->simple_name());
      if (!cls) return std::nullopt;
      std::vector<NodeRef> ctors = methods_in_class(
          project, *cls, type->simple_name(),
          expr_children(ast, parent).size());
      if (ctors.empty()) return std::nullopt;
      if (ctors.size() > 1) {
        return NeighborCandidate{NodeRef{}, EdgeReason::ArgumentPassing,
                                 witness, true};
      }
      const Ast& mast = project.file(ctors.front().file).ast;
      const std::vector<NodeId> params = param_list(mast, ctors.front().node);
      if (static_cast<size_t>(position) >= params.size()) return std::nullopt;
      return NeighborCandidate{
          NodeRef{ctors.front().file, params[static_cast<size_t>(position)]},
          EdgeReason::ArgumentPassing, witness};
    }
    default:
      return std::nullopt;
  }
}

}  // namespace retype
