// report.hpp - Human- and machine-readable rendering of plans, diffs,
// diagnostics, and suggestions. All strings carry a trailing newline when
// non-empty; JSON-lines output emits one self-contained object per line.
#pragma once

#include <string>
#include <vector>

#include "engine.hpp"
#include "modes.hpp"
#include "project.hpp"

namespace retype {

// How file paths appear in output: project-relative as stored, or joined
// with the project root the user gave on the command line.
struct PathStyle {
  std::string root;
  bool relative = false;

  [[nodiscard]] std::string render(const std::string& rel_path) const;
};

// Minimal unified diff (---/+++/@@ hunks, three context lines) between two
// texts. Empty when the texts are equal.
std::string unified_diff(const std::string& old_text,
                         const std::string& new_text,
                         const std::string& old_label,
                         const std::string& new_label);

std::string plan_report_text(const Project& project, const MigrationPlan& plan,
                             const PathStyle& paths);
std::string plan_report_json(const Project& project, const MigrationPlan& plan,
                             const PathStyle& paths);
// Per-file unified diffs of the plan's effect, in path order.
std::string plan_diff(const Project& project, const MigrationPlan& plan,
                      const PathStyle& paths);

std::string diagnostics_text(const std::vector<Diagnostic>& diagnostics,
                             const PathStyle& paths);
std::string diagnostics_json_lines(const std::vector<Diagnostic>& diagnostics,
                                   const PathStyle& paths);

// `new_path` is the file the suggestions refer to (the new version);
// `catalog_flag` is appended to the printed apply command when the catalog
// did not come from the default lookup, e.g. " --catalog rules.json".
std::string suggestions_text(const SuggestResult& result,
                             const std::string& new_path,
                             const std::string& catalog_flag);
std::string suggestions_json_lines(const SuggestResult& result,
                                   const std::string& new_path);

}  // namespace retype
