// project.cpp - Project scanning, parsing, and indexing.
#include "project.hpp"

#include <algorithm>
#include <filesystem>

#include "error.hpp"
#include "util.hpp"

namespace fs = std::filesystem;

namespace retype {

namespace {

void parse_into(SourceFile& file) {
  try {
    file.ast = parse_compilation_unit(file.content);
    file.imports = ImportEnv(file.ast);
    file.parsed = true;
  } catch (const Error& e) {
    file.parsed = false;
    file.parse_error = e.what();
  }
  file.lines = LineIndex(file.content);
}

void index_classes(Project& project) {
  for (size_t i = 0; i < project.files.size(); ++i) {
    const SourceFile& file = project.files[i];
    if (!file.parsed) continue;
    file.ast.walk(file.ast.root, [&](NodeId id) {
      if (file.ast.node(id).kind == NodeKind::ClassDecl) {
        project.classes[file.ast.node(id).text].push_back(
            NodeRef{static_cast<int>(i), id});
      }
    });
  }
}

bool hidden_name(const fs::path& p) {
  const std::string name = p.filename().string();
  return !name.empty() && name.front() == '.';
}

}  // namespace

int Project::file_index(const std::string& rel_path) const {
  for (size_t i = 0; i < files.size(); ++i) {
    if (files[i].path == rel_path) return static_cast<int>(i);
  }
  return -1;
}

Project load_project(const std::string& root_dir) {
  std::error_code ec;
  const fs::path root = fs::absolute(root_dir, ec);
  if (ec || !fs::is_directory(root)) {
    throw_error(ErrorCode::Io, "not a directory: " + root_dir);
  }
  Project project;
  project.root = root.generic_string();
  std::vector<fs::path> sources;
  fs::recursive_directory_iterator it(root, ec), end;
  if (ec) throw_error(ErrorCode::Io, "cannot scan " + root_dir);
  for (; it != end; ++it) {
    if (it->is_directory() && hidden_name(it->path())) {
      it.disable_recursion_pending();
      continue;
    }
    if (it->is_regular_file() && it->path().extension() == ".java" &&
        !hidden_name(it->path())) {
      sources.push_back(it->path());
    }
  }
  std::vector<std::string> rel;
  rel.reserve(sources.size());
  for (const fs::path& p : sources) {
    rel.push_back(fs::relative(p, root).generic_string());
  }
  std::sort(rel.begin(), rel.end());
  for (const std::string& path : rel) {
    SourceFile file;
    file.path = path;
    file.content = read_file((root / path).string());
    parse_into(file);
    project.files.push_back(std::move(file));
  }
  index_classes(project);
  return project;
}

Project project_from_source(const std::string& path, std::string content) {
  Project project;
  project.root = ".";
  SourceFile file;
  file.path = path;
  file.content = std::move(content);
  parse_into(file);
  project.files.push_back(std::move(file));
  index_classes(project);
  return project;
}

}  // namespace retype
