#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "catalog.hpp"
#include "edits.hpp"
#include "refgraph.hpp"
#include "tmpl.hpp"

namespace retype {

// Why a usage could not be rewritten or folded into the migration.
enum class FailureReason {
  NoMatchingRule,
  OpaqueContext,
  OutOfScope,
  AmbiguousOverload,
};

const char* failure_reason_name(FailureReason reason);

struct FailedUsage {
  Usage usage;
  FailureReason reason;
  std::string detail;
};

enum class EditKind { Declaration, Rewrite, Import };

struct PlannedEdit {
  EditKind kind;
  Edit edit;
};

struct ElementRecord {
  RootElement element;
  std::string old_type;
  std::string new_type;
  // False when the declaration already carries the target type.
  bool needs_decl_edit = false;
};

// One discovered dataflow connection that pulled a declaration into the
// migration. `witness` is the usage site exposing the connection.
struct EdgeRecord {
  NodeRef from_decl;
  NodeRef to_decl;
  EdgeReason reason;
  NodeRef witness;
};

// A rewrite rule applied at a concrete node: which rule, how specific it is
// (count of concrete template tokens), which node it replaces, and what each
// hole bound.
struct RuleMatch {
  int rule_index = -1;
  int score = 0;
  NodeId matched = kNoNode;
  Bindings bindings;
};

struct MigrationPlan {
  int pattern_id = 0;
  std::string from_type;
  std::string to_type;
  ScopeKind scope = ScopeKind::File;
  NodeRef root;
  std::vector<ElementRecord> elements;  // discovery order, root first
  std::vector<EdgeRecord> edges;
  std::vector<PlannedEdit> edits;       // per file: sorted, non-overlapping
  std::vector<FailedUsage> failed;
  int usages_found = 0;
  int usages_rewritten = 0;
  int usages_covered = 0;
  // Content hash of every touched file at planning time, keyed by
  // project-relative path. apply_plan refuses when a hash went stale.
  std::map<std::string, std::string> pre_hashes;
};

// Picks the best rule application covering `usage`. Candidates are the usage
// site and its expression ancestors up to the enclosing statement; the winner
// maximizes the rule score, breaking ties toward the larger candidate span and
// then the earlier rule. `root_refs` are the reference sites of the element
// being processed within the usage's file.
std::optional<RuleMatch> select_rule(const Project& project, const Usage& usage,
                                     const TypeChangePattern& pattern,
                                     const std::unordered_set<NodeId>& root_refs);

// Plans the full migration of the element declared at `root_decl`: rewrites
// its usages, chases dataflow neighbors of the same source type until a fixed
// point, retypes every affected declaration, and adjusts imports. Throws
// Error(ErrorCode::PatternMismatch) when the declaration matches neither the
// pattern's source nor its target type.
MigrationPlan plan_migration(const Project& project, NodeRef root_decl,
                             const TypeChangePattern& pattern, ScopeKind scope);

struct ApplyResult {
  std::string journal_path;
  std::vector<std::string> files;  // project-relative, sorted
};

// Writes the plan's edits to disk. All touched files are hash-checked against
// the plan first, every rewritten content must reparse, and a journal entry
// with the original contents is recorded before the first write. On a
// mid-write failure the already-written files are restored.
ApplyResult apply_plan(const Project& project, const MigrationPlan& plan);

struct UndoResult {
  std::string journal_path;
  std::vector<std::string> files;
};

// Restores the files captured in a journal entry; pass an empty path to undo
// the most recent entry. Refuses when a file changed after the apply or the
// entry was already consumed.
UndoResult undo_journal(const std::string& project_root,
                        const std::string& journal_path);

// Journal entry paths under <root>/.retype/journal, oldest first.
std::vector<std::string> list_journals(const std::string& project_root);
std::optional<std::string> latest_journal(const std::string& project_root);

}  // namespace retype
