// support.hpp - Shared helpers for the test binaries: scratch directories,
// fixture authoring, and plan shortcuts against on-disk projects.
#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "engine.hpp"
#include "project.hpp"
#include "refgraph.hpp"
#include "util.hpp"

namespace testsupport {

namespace fs = std::filesystem;

// A unique directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<uint64_t> counter{0};
    const auto n = counter.fetch_add(1);
    path_ = fs::temp_directory_path() /
            ("retype-test-" + std::to_string(::getpid()) + "-" +
             std::to_string(n));
    fs::create_directories(path_);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }

  [[nodiscard]] const fs::path& path() const { return path_; }
  [[nodiscard]] std::string str() const { return path_.string(); }

  // Writes a file under the directory, creating parents.
  void write(const std::string& rel, const std::string& content) const {
    const fs::path full = path_ / rel;
    fs::create_directories(full.parent_path());
    retype::write_file(full.string(), content);
  }

  [[nodiscard]] std::string read(const std::string& rel) const {
    return retype::read_file((path_ / rel).string());
  }

 private:
  fs::path path_;
};

// Writes the given (relative path, content) pairs and loads the project.
inline retype::Project make_project(
    const TempDir& dir,
    const std::vector<std::pair<std::string, std::string>>& files) {
  for (const auto& [rel, content] : files) dir.write(rel, content);
  return retype::load_project(dir.str());
}

// First declaration node (field, local, parameter, or typed method) with the
// given name, searching files in order.
inline retype::NodeRef find_decl(const retype::Project& project,
                                 const std::string& name) {
  using retype::NodeKind;
  for (int file = 0; file < static_cast<int>(project.files.size()); ++file) {
    const retype::Ast& ast = project.file(file).ast;
    if (!project.file(file).parsed) continue;
    retype::NodeRef found;
    ast.walk(ast.root, [&](retype::NodeId id) {
      if (found.valid()) return;
      const retype::AstNode& n = ast.node(id);
      if (n.text != name) return;
      if (n.kind == NodeKind::FieldDecl || n.kind == NodeKind::LocalVarDecl ||
          n.kind == NodeKind::Param ||
          (n.kind == NodeKind::MethodDecl &&
           ast.child_of_kind(id, NodeKind::TypeRefNode) != retype::kNoNode)) {
        found = retype::NodeRef{file, id};
      }
    });
    if (found.valid()) return found;
  }
  return {};
}

inline retype::MigrationPlan plan_for(const retype::Project& project,
                                      const std::string& decl_name,
                                      const retype::TypeChangePattern& pattern,
                                      retype::ScopeKind scope) {
  const retype::NodeRef decl = find_decl(project, decl_name);
  return retype::plan_migration(project, decl, pattern, scope);
}

// "path:line:col Reason: detail" for each failed usage, in plan order.
inline std::vector<std::string> failed_summary(
    const retype::Project& project, const retype::MigrationPlan& plan) {
  std::vector<std::string> out;
  for (const retype::FailedUsage& f : plan.failed) {
    const retype::LineCol lc = project.line_col(f.usage.site);
    out.push_back(project.file(f.usage.site.file).path + ":" +
                  std::to_string(lc.line) + ":" + std::to_string(lc.col) +
                  " " + retype::failure_reason_name(f.reason) + ": " +
                  f.detail);
  }
  return out;
}

}  // namespace testsupport
