// refgraph.hpp - Name resolution, reference search for a migration root,
// scope filtering, and discovery of neighboring elements connected to a
// usage by assignment, argument passing, return flow, or field access.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ast.hpp"
#include "project.hpp"

namespace retype {

enum class RootKind { LocalVar, Parameter, Field, MethodReturn };

const char* root_kind_name(RootKind kind);

// The element a migration starts from (or reaches by propagation): a
// declaration plus its resolved context.
struct RootElement {
  RootKind kind = RootKind::LocalVar;
  std::string name;
  NodeRef decl;  // LocalVarDecl, Param, FieldDecl, or MethodDecl node
  TypeRef declared_type;
  NodeRef enclosing_method;  // invalid for fields and method returns
  NodeRef enclosing_class;
};

enum class ScopeKind { Local, File, Project };

const char* scope_kind_name(ScopeKind kind);
std::optional<ScopeKind> scope_kind_from_name(std::string_view name);

// The search region: the root's enclosing method (Local), the root's file
// (File), or every parsed file (Project).
struct Scope {
  ScopeKind kind = ScopeKind::File;
  NodeRef anchor;  // MethodDecl for Local, CompilationUnit for File
};

// One reference to an element: a NameRef or this-qualified field access,
// or the call node for MethodReturn elements.
struct Usage {
  NodeRef site;
  NodeRef parent;
  NodeRef enclosing_method;  // invalid for field initializers
};

enum class EdgeReason { Assignment, ArgumentPassing, ReturnFlow, FieldAccess };

const char* edge_reason_name(EdgeReason reason);

// A declaration reachable from a usage through one connecting construct.
// `ambiguous` marks an argument-passing edge whose callee overload could
// not be determined; the caller reports the usage instead of following it.
struct NeighborCandidate {
  NodeRef decl;
  EdgeReason reason = EdgeReason::Assignment;
  NodeRef witness;
  bool ambiguous = false;
};

// Declared type of a declaration node (the return type for methods), or
// null for constructors and untyped lambda parameters.
const TypeRef* declared_type(const Project& project, NodeRef decl);

// The TypeRefNode carrying that type; its span is what a declaration
// edit replaces.
NodeRef declared_type_node(const Project& project, NodeRef decl);

// Innermost declaration visible at `ref` (locals before the reference,
// loop variables, lambda and method parameters, then fields of enclosing
// classes). Absent for unresolved names.
std::optional<NodeRef> resolve_name(const Project& project, NodeRef ref);

// Declaration a field access denotes: `this.f`, `name.f` through the
// receiver's declared type, or `ClassName.f`. Absent when the receiver's
// class is not in the project or has no such field.
std::optional<NodeRef> resolve_field_access(const Project& project,
                                            NodeRef access);

// Builds the RootElement for a declaration node. Throws Error(Selector)
// when the node is not a supported declaration kind.
RootElement make_root_element(const Project& project, NodeRef decl);

// Declaration at a byte offset: the covering declaration node, or the
// resolution of the covering name reference. Absent when neither applies.
std::optional<NodeRef> root_decl_at(const Project& project, int file,
                                    uint32_t offset);

// Declaration named by a `Class.member` selector (field or method).
// Throws Error(Selector) when the class or member is missing or the
// simple class name is ambiguous across the project.
NodeRef root_decl_by_member(const Project& project,
                            const std::string& class_name,
                            const std::string& member_name);

// The scope of `kind` anchored at the root's context. Throws Error(Scope)
// for Local scope on a Field or MethodReturn root.
Scope make_scope(const Project& project, const RootElement& root,
                 ScopeKind kind);

// True when the declaration (or usage site) lies inside the scope region.
bool in_scope(const Project& project, const Scope& scope, NodeRef ref);

// Every reference to `root` within `scope`, in file order. For
// MethodReturn roots these are the resolved call sites.
std::vector<Usage> find_references(const Project& project,
                                   const RootElement& root,
                                   const Scope& scope);

// The element connected to this usage by its immediate context, if any:
// the other side of an assignment, the initialized declaration, the
// matching parameter of a resolvable call, or the enclosing method of a
// return. Purely structural; the caller checks types and scope.
std::optional<NeighborCandidate> discover_neighbor(const Project& project,
                                                   const Usage& usage);

}  // namespace retype
