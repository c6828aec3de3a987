// modes.cpp - Inspection scanning and manual-type-edit detection.

#include "modes.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"

namespace retype {
namespace {

bool is_typed_decl_kind(NodeKind kind) {
  return kind == NodeKind::FieldDecl || kind == NodeKind::LocalVarDecl ||
         kind == NodeKind::Param || kind == NodeKind::MethodDecl;
}

// Declarations carrying a declared type, in source order. Constructors and
// untyped lambda parameters have none and are skipped.
std::vector<NodeRef> typed_decls(const Project& project, int file) {
  std::vector<NodeRef> out;
  const Ast& ast = project.file(file).ast;
  if (ast.root == kNoNode) return out;
  ast.walk(ast.root, [&](NodeId id) {
    if (!is_typed_decl_kind(ast.node(id).kind)) return;
    const NodeRef ref{file, id};
    if (declared_type(project, ref)) out.push_back(ref);
  });
  return out;
}

int method_arity(const Project& project, NodeRef method) {
  int arity = 0;
  for (const NodeId c : project.node(method).children) {
    if (project.file(method.file).ast.node(c).kind == NodeKind::Param) ++arity;
  }
  return arity;
}

// Version-stable identity of a declaration: kind, name, and container
// (class; plus method name and arity for locals and parameters, arity for
// the method itself). Innermost class only, which leaves same-named members
// of nested same-named classes indistinguishable.
std::string decl_key(const Project& project, const RootElement& element) {
  std::string key = root_kind_name(element.kind);
  key += '|';
  if (element.enclosing_class.valid())
    key += project.node(element.enclosing_class).text;
  key += '|';
  if (element.kind == RootKind::MethodReturn) {
    key += element.name + "/" + std::to_string(method_arity(project, element.decl));
  } else if (element.enclosing_method.valid()) {
    key += project.node(element.enclosing_method).text + "/" +
           std::to_string(method_arity(project, element.enclosing_method));
  }
  key += '|';
  key += element.name;
  return key;
}

std::vector<const TypeChangePattern*> patterns_with_mode(const Catalog& catalog,
                                                         PatternMode mode) {
  std::vector<const TypeChangePattern*> out;
  for (const TypeChangePattern& pattern : catalog.patterns) {
    if (pattern.mode == mode) out.push_back(&pattern);
  }
  std::sort(out.begin(), out.end(),
            [](const TypeChangePattern* a, const TypeChangePattern* b) {
              return a->priority != b->priority ? a->priority < b->priority
                                                : a->id < b->id;
            });
  return out;
}

}  // namespace

std::string simple_display(const TypeRef& type) {
  std::string out = type.simple_name();
  if (type.args.empty()) return out;
  out += "<";
  for (size_t i = 0; i < type.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += simple_display(type.args[i]);
  }
  return out + ">";
}

std::vector<Diagnostic> inspect(const Project& project, const Catalog& catalog) {
  const auto patterns = patterns_with_mode(catalog, PatternMode::Inspection);
  std::vector<Diagnostic> out;
  if (patterns.empty()) return out;
  for (int file = 0; file < static_cast<int>(project.files.size()); ++file) {
    if (!project.file(file).parsed) continue;
    for (const NodeRef decl : typed_decls(project, file)) {
      const TypeRef& type = *declared_type(project, decl);
      for (const TypeChangePattern* pattern : patterns) {
        TypeVarBindings bindings;
        if (!unify_types(pattern->from, type, bindings)) continue;
        const TypeRef target = instantiate_type(pattern->to, bindings);
        Diagnostic diag;
        diag.file = project.file(file).path;
        diag.decl = decl;
        diag.span = project.node(declared_type_node(project, decl)).span;
        diag.pos = project.file(file).lines.lookup(diag.span.begin);
        diag.pattern_id = pattern->id;
        diag.message = "Type " + simple_display(type) +
                       " can be replaced with " + simple_display(target);
        out.push_back(std::move(diag));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return a.file != b.file ? a.file < b.file
                                             : a.span.begin < b.span.begin;
                   });
  return out;
}

SuggestResult detect_manual_type_edit(const std::string& old_source,
                                      const std::string& new_source,
                                      const Catalog& catalog) {
  SuggestResult result;
  const Project old_project = project_from_source("old.java", old_source);
  const Project new_project = project_from_source("new.java", new_source);
  if (!old_project.file(0).parsed) {
    result.warnings.push_back("old version does not parse: " +
                              old_project.file(0).parse_error);
    return result;
  }
  if (!new_project.file(0).parsed) {
    result.warnings.push_back("new version does not parse: " +
                              new_project.file(0).parse_error);
    return result;
  }

  // Key -> unique declaration, dropping keys that collide (e.g. same-arity
  // overloads): a collision would make the cross-version match a guess.
  const auto index = [](const Project& project) {
    std::map<std::string, std::vector<RootElement>> decls;
    for (const NodeRef ref : typed_decls(project, 0)) {
      RootElement element = make_root_element(project, ref);
      decls[decl_key(project, element)].push_back(std::move(element));
    }
    return decls;
  };
  const auto old_decls = index(old_project);
  const auto new_decls = index(new_project);

  const auto patterns =
      patterns_with_mode(catalog, PatternMode::SuggestedRefactoring);
  for (const auto& [key, candidates] : new_decls) {
    if (candidates.size() != 1) continue;
    const auto old_it = old_decls.find(key);
    if (old_it == old_decls.end() || old_it->second.size() != 1) continue;
    const RootElement& now = candidates.front();
    const RootElement& before = old_it->second.front();
    if (before.declared_type == now.declared_type) continue;
    for (const TypeChangePattern* pattern : patterns) {
      TypeVarBindings bindings;
      if (!unify_types(pattern->from, before.declared_type, bindings) ||
          !unify_types(pattern->to, now.declared_type, bindings)) {
        continue;
      }
      Suggestion s;
      s.kind = now.kind;
      s.name = now.name;
      s.container = now.enclosing_class.valid()
                        ? new_project.node(now.enclosing_class).text
                        : std::string();
      if (now.kind != RootKind::MethodReturn && now.enclosing_method.valid()) {
        s.container += "." + new_project.node(now.enclosing_method).text;
      }
      s.decl = now.decl;
      s.pos = new_project.line_col(now.decl);
      s.pattern_id = pattern->id;
      s.old_type = simple_display(before.declared_type);
      s.new_type = simple_display(now.declared_type);
      const Scope scope = make_scope(new_project, now, ScopeKind::File);
      s.remaining_usages = static_cast<int>(
          find_references(new_project, now, scope).size());
      result.suggestions.push_back(std::move(s));
    }
  }
  std::stable_sort(result.suggestions.begin(), result.suggestions.end(),
                   [&new_project](const Suggestion& a, const Suggestion& b) {
                     return new_project.node(a.decl).span.begin <
                            new_project.node(b.decl).span.begin;
                   });
  return result;
}

}  // namespace retype
