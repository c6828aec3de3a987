// project.hpp - An immutable snapshot of the Java sources under a project
// root: parsed files, import environments, and a class index for
// cross-file lookups.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ast.hpp"
#include "parser.hpp"
#include "span.hpp"

namespace retype {

// A node in a specific file of the project.
struct NodeRef {
  int file = -1;
  NodeId node = kNoNode;

  [[nodiscard]] bool valid() const { return file >= 0 && node != kNoNode; }
  // Dense ordering key, usable in sets and maps.
  [[nodiscard]] uint64_t key() const {
    return (static_cast<uint64_t>(static_cast<uint32_t>(file)) << 32) | node;
  }

  friend bool operator==(NodeRef a, NodeRef b) {
    return a.file == b.file && a.node == b.node;
  }
  friend bool operator!=(NodeRef a, NodeRef b) { return !(a == b); }
  friend bool operator<(NodeRef a, NodeRef b) { return a.key() < b.key(); }
};

struct SourceFile {
  std::string path;  // project-root-relative, forward slashes
  std::string content;
  Ast ast;
  ImportEnv imports;
  LineIndex lines;
  bool parsed = false;
  std::string parse_error;  // set when !parsed
};

struct Project {
  std::string root;  // absolute directory the paths are relative to
  std::vector<SourceFile> files;  // sorted by path
  // Simple class name -> ClassDecl nodes, across all parsed files.
  std::map<std::string, std::vector<NodeRef>> classes;

  [[nodiscard]] int file_index(const std::string& rel_path) const;
  [[nodiscard]] const SourceFile& file(int index) const {
    return files[static_cast<size_t>(index)];
  }
  [[nodiscard]] const AstNode& node(NodeRef ref) const {
    return file(ref.file).ast.node(ref.node);
  }
  [[nodiscard]] const TypeRef* type_of(NodeRef ref) const {
    return file(ref.file).ast.type_of(ref.node);
  }
  [[nodiscard]] NodeRef parent(NodeRef ref) const {
    return NodeRef{ref.file, node(ref).parent};
  }
  [[nodiscard]] NodeRef ancestor_of_kind(NodeRef ref, NodeKind kind) const {
    return NodeRef{ref.file, file(ref.file).ast.ancestor_of_kind(ref.node, kind)};
  }
  [[nodiscard]] LineCol line_col(NodeRef ref) const {
    return file(ref.file).lines.lookup(node(ref).span.begin);
  }
};

// Scans `root_dir` recursively for .java files (skipping dot-directories
// like .retype and .git), parses each, and builds the class index. Files
// that fail to parse are kept with parse_error set and excluded from the
// index. Throws Error(Io) when the root is not a directory.
Project load_project(const std::string& root_dir);

// Wraps one in-memory source as a single-file project (no disk access).
Project project_from_source(const std::string& path, std::string content);

}  // namespace retype
