// modes.hpp - Proactive surfacing of type changes: an inspection pass that
// flags declarations of discouraged types, and a two-version comparison that
// notices a manually edited declaration type and proposes completing the
// migration.
#pragma once

#include <string>
#include <vector>

#include "catalog.hpp"
#include "project.hpp"
#include "refgraph.hpp"

namespace retype {

// A flagged declaration with its quick fix: planning (decl, pattern_id)
// through the engine migrates the element. The span covers the declared
// type, not the whole declaration.
struct Diagnostic {
  std::string file;  // project-relative path
  NodeRef decl;
  Span span;
  LineCol pos;
  int pattern_id = 0;
  std::string message;
  const char* severity = "warning";
};

// Scans every parsed file for declarations (fields, locals, parameters,
// method returns) whose declared type matches the from-type of an
// Inspection-mode pattern. One diagnostic per matching pattern, priority
// order; diagnostics ordered by file, then offset. Unparsed files are
// skipped.
std::vector<Diagnostic> inspect(const Project& project, const Catalog& catalog);

// A detected manual type edit: the declaration kept its name and container
// but its declared type moved from a pattern's source type to its target.
struct Suggestion {
  RootKind kind = RootKind::LocalVar;
  std::string name;
  std::string container;  // Class or Class.method
  NodeRef decl;           // in the new version
  LineCol pos;            // declaration position in the new version
  int pattern_id = 0;
  std::string old_type;
  std::string new_type;
  int remaining_usages = 0;
};

struct SuggestResult {
  std::vector<Suggestion> suggestions;
  std::vector<std::string> warnings;
};

// Compares two versions of one source file. Declarations are matched by
// kind, name, and container (class, plus method and arity for locals and
// parameters); a changed type yields one suggestion per pattern whose
// from/to pair explains the change under one consistent type-variable
// binding. Only patterns labeled for suggestion (SuggestedRefactoring mode)
// participate. An unparseable version yields no suggestions and a warning.
SuggestResult detect_manual_type_edit(const std::string& old_source,
                                      const std::string& new_source,
                                      const Catalog& catalog);

// Compact type rendering for messages: simple names, recursively.
std::string simple_display(const TypeRef& type);

}  // namespace retype
