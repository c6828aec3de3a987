// report.cpp - Rendering of plans, diffs, diagnostics, and suggestions.

#include "report.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "json.hpp"

#include "edits.hpp"

namespace retype {
namespace {

using json = nlohmann::ordered_json;

// ---- unified diff ----------------------------------------------------

// Lines keep their trailing newline so a missing final newline stays
// distinguishable; display strips it and adds the conventional marker.
std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  size_t pos = 0;
  while (pos < text.size()) {
    const size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(pos));
      break;
    }
    lines.push_back(text.substr(pos, nl - pos + 1));
    pos = nl + 1;
  }
  return lines;
}

void append_diff_line(std::string& out, char tag, const std::string& line) {
  out += tag;
  if (!line.empty() && line.back() == '\n') {
    out.append(line);
  } else {
    out += line;
    out += "\n\\ No newline at end of file\n";
  }
}

struct DiffOp {
  char tag;  // ' ', '-', '+'
  size_t old_index;
  size_t new_index;
};

std::vector<DiffOp> diff_ops(const std::vector<std::string>& a,
                             const std::vector<std::string>& b) {
  const size_t n = a.size();
  const size_t m = b.size();
  std::vector<std::vector<int>> lcs(n + 1, std::vector<int>(m + 1, 0));
  for (size_t i = n; i-- > 0;) {
    for (size_t j = m; j-- > 0;) {
      lcs[i][j] = a[i] == b[j]
                      ? lcs[i + 1][j + 1] + 1
                      : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<DiffOp> ops;
  size_t i = 0;
  size_t j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j]) {
      ops.push_back({' ', i, j});
      ++i;
      ++j;
    } else if (lcs[i + 1][j] >= lcs[i][j + 1]) {
      ops.push_back({'-', i, j});
      ++i;
    } else {
      ops.push_back({'+', i, j});
      ++j;
    }
  }
  for (; i < n; ++i) ops.push_back({'-', i, j});
  for (; j < m; ++j) ops.push_back({'+', i, j});
  return ops;
}

constexpr size_t kDiffContext = 3;

}  // namespace

std::string unified_diff(const std::string& old_text,
                         const std::string& new_text,
                         const std::string& old_label,
                         const std::string& new_label) {
  if (old_text == new_text) return {};
  const std::vector<std::string> a = split_lines(old_text);
  const std::vector<std::string> b = split_lines(new_text);
  const std::vector<DiffOp> ops = diff_ops(a, b);

  std::string out = "--- " + old_label + "\n+++ " + new_label + "\n";
  size_t k = 0;
  while (k < ops.size()) {
    if (ops[k].tag == ' ') {
      ++k;
      continue;
    }
    size_t start = k;
    while (start > 0 && ops[start - 1].tag == ' ' && k - start < kDiffContext)
      --start;
    // Extend over further changes whose keep-gap fits inside doubled context.
    size_t last_change = k;
    size_t scan = k + 1;
    while (scan < ops.size()) {
      if (ops[scan].tag != ' ') {
        last_change = scan;
        ++scan;
        continue;
      }
      size_t run_end = scan;
      while (run_end < ops.size() && ops[run_end].tag == ' ') ++run_end;
      if (run_end < ops.size() && run_end - scan <= 2 * kDiffContext) {
        scan = run_end;
        continue;
      }
      break;
    }
    const size_t stop = std::min(last_change + 1 + kDiffContext, ops.size());

    size_t old_count = 0;
    size_t new_count = 0;
    for (size_t t = start; t < stop; ++t) {
      if (ops[t].tag != '+') ++old_count;
      if (ops[t].tag != '-') ++new_count;
    }
    const size_t old_start = ops[start].old_index + (old_count ? 1 : 0);
    const size_t new_start = ops[start].new_index + (new_count ? 1 : 0);
    out += "@@ -" + std::to_string(old_start) + "," + std::to_string(old_count) +
           " +" + std::to_string(new_start) + "," + std::to_string(new_count) +
           " @@\n";
    for (size_t t = start; t < stop; ++t) {
      const DiffOp& op = ops[t];
      append_diff_line(out, op.tag,
                       op.tag == '+' ? b[op.new_index] : a[op.old_index]);
    }
    k = stop;
  }
  return out;
}

std::string PathStyle::render(const std::string& rel_path) const {
  if (relative || root.empty() || root == ".") return rel_path;
  return (std::filesystem::path(root) / rel_path).generic_string();
}

namespace {

std::string element_container(const Project& project, const RootElement& e) {
  std::string out;
  if (e.enclosing_class.valid()) out = project.node(e.enclosing_class).text;
  if ((e.kind == RootKind::LocalVar || e.kind == RootKind::Parameter) &&
      e.enclosing_method.valid()) {
    out += "." + project.node(e.enclosing_method).text;
  }
  return out;
}

std::string position(const Project& project, const PathStyle& paths,
                     const std::string& rel, Span span) {
  const int file = project.file_index(rel);
  const LineCol lc = project.file(file).lines.lookup(span.begin);
  return paths.render(rel) + ":" + std::to_string(lc.line) + ":" +
         std::to_string(lc.col);
}

// One display line per import in an insertion or removal edit.
std::vector<std::string> import_lines(const Project& project,
                                      const PlannedEdit& pe) {
  std::string text = pe.edit.replacement;
  char tag = '+';
  if (text.empty()) {
    const int file = project.file_index(pe.edit.file);
    text = project.file(file).content.substr(pe.edit.span.begin,
                                             pe.edit.span.size());
    tag = '-';
  }
  std::vector<std::string> out;
  for (std::string& line : split_lines(text)) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
      line.pop_back();
    if (!line.empty()) out.push_back(std::string(1, tag) + " " + line);
  }
  return out;
}

}  // namespace

std::string plan_report_text(const Project& project, const MigrationPlan& plan,
                             const PathStyle& paths) {
  std::string out = "pattern " + std::to_string(plan.pattern_id) + ": " +
                    plan.from_type + " => " + plan.to_type + "\n";
  out += "scope: " + std::string(scope_kind_name(plan.scope)) + "\n";

  out += "elements:\n";
  for (const ElementRecord& r : plan.elements) {
    out += "  " + std::string(root_kind_name(r.element.kind)) + " " +
           r.element.name + " (" + element_container(project, r.element) +
           "): " + r.old_type + " -> " + r.new_type + "\n";
  }
  if (!plan.edges.empty()) {
    out += "edges:\n";
    for (const EdgeRecord& e : plan.edges) {
      out += "  " + project.node(e.from_decl).text + " -> " +
             project.node(e.to_decl).text + " (" +
             edge_reason_name(e.reason) + ")\n";
    }
  }

  int decls = 0;
  int rewrites = 0;
  int imports = 0;
  for (const PlannedEdit& pe : plan.edits) {
    if (pe.kind == EditKind::Declaration) ++decls;
    if (pe.kind == EditKind::Rewrite) ++rewrites;
    if (pe.kind == EditKind::Import) ++imports;
  }
  out += "edits: " + std::to_string(decls + rewrites) +
         " (declarations: " + std::to_string(decls) +
         ", rewrites: " + std::to_string(rewrites) +
         "), import adjustments: " + std::to_string(imports) + "\n";
  for (const PlannedEdit& pe : plan.edits) {
    const std::string at = position(project, paths, pe.edit.file, pe.edit.span);
    switch (pe.kind) {
      case EditKind::Declaration:
        out += "  " + at + " declaration -> " + pe.edit.replacement + "\n";
        break;
      case EditKind::Rewrite:
        out += "  " + at + " rewrite -> " + pe.edit.replacement + "\n";
        break;
      case EditKind::Import:
        for (const std::string& line : import_lines(project, pe))
          out += "  " + at + " " + line + "\n";
        break;
    }
  }

  out += "failed usages: " + std::to_string(plan.failed.size()) + "\n";
  for (const FailedUsage& f : plan.failed) {
    out += "  " +
           position(project, paths, project.file(f.usage.site.file).path,
                    project.node(f.usage.site).span) +
           " " + failure_reason_name(f.reason) + ": " + f.detail + "\n";
  }

  out += "usages: found " + std::to_string(plan.usages_found) + ", rewritten " +
         std::to_string(plan.usages_rewritten) + ", covered " +
         std::to_string(plan.usages_covered) + ", failed " +
         std::to_string(plan.failed.size()) + "\n";
  return out;
}

std::string plan_report_json(const Project& project, const MigrationPlan& plan,
                             const PathStyle& paths) {
  json doc;
  doc["patternId"] = plan.pattern_id;
  doc["from"] = plan.from_type;
  doc["to"] = plan.to_type;
  doc["scope"] = scope_kind_name(plan.scope);

  doc["elements"] = json::array();
  for (const ElementRecord& r : plan.elements) {
    const LineCol lc = project.line_col(r.element.decl);
    doc["elements"].push_back(
        {{"kind", root_kind_name(r.element.kind)},
         {"name", r.element.name},
         {"container", element_container(project, r.element)},
         {"file", paths.render(project.file(r.element.decl.file).path)},
         {"line", lc.line},
         {"col", lc.col},
         {"oldType", r.old_type},
         {"newType", r.new_type},
         {"declarationEdit", r.needs_decl_edit}});
  }

  doc["edges"] = json::array();
  for (const EdgeRecord& e : plan.edges) {
    doc["edges"].push_back({{"from", project.node(e.from_decl).text},
                            {"to", project.node(e.to_decl).text},
                            {"reason", edge_reason_name(e.reason)}});
  }

  doc["edits"] = json::array();
  for (const PlannedEdit& pe : plan.edits) {
    const int file = project.file_index(pe.edit.file);
    const LineCol lc = project.file(file).lines.lookup(pe.edit.span.begin);
    const char* kind = pe.kind == EditKind::Declaration ? "declaration"
                       : pe.kind == EditKind::Rewrite   ? "rewrite"
                                                        : "import";
    doc["edits"].push_back({{"file", paths.render(pe.edit.file)},
                            {"line", lc.line},
                            {"col", lc.col},
                            {"kind", kind},
                            {"begin", pe.edit.span.begin},
                            {"end", pe.edit.span.end},
                            {"text", pe.edit.replacement}});
  }

  doc["failed"] = json::array();
  for (const FailedUsage& f : plan.failed) {
    const LineCol lc = project.line_col(f.usage.site);
    doc["failed"].push_back(
        {{"file", paths.render(project.file(f.usage.site.file).path)},
         {"line", lc.line},
         {"col", lc.col},
         {"reason", failure_reason_name(f.reason)},
         {"detail", f.detail}});
  }

  doc["usages"] = {{"found", plan.usages_found},
                   {"rewritten", plan.usages_rewritten},
                   {"covered", plan.usages_covered},
                   {"failed", plan.failed.size()}};
  return doc.dump(2) + "\n";
}

std::string plan_diff(const Project& project, const MigrationPlan& plan,
                      const PathStyle& paths) {
  std::map<std::string, std::vector<Edit>> by_file;
  for (const PlannedEdit& pe : plan.edits) by_file[pe.edit.file].push_back(pe.edit);
  std::string out;
  for (const auto& [path, edits] : by_file) {
    const SourceFile& sf = project.file(project.file_index(path));
    const std::string rendered = paths.render(path);
    out += unified_diff(sf.content, apply_edits(sf.content, edits),
                        "a/" + rendered, "b/" + rendered);
  }
  return out;
}

std::string diagnostics_text(const std::vector<Diagnostic>& diagnostics,
                             const PathStyle& paths) {
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    out += paths.render(d.file) + ":" + std::to_string(d.pos.line) + ":" +
           std::to_string(d.pos.col) + ": " + d.severity + ": " + d.message +
           " [pattern " + std::to_string(d.pattern_id) + "]\n";
  }
  return out;
}

std::string diagnostics_json_lines(const std::vector<Diagnostic>& diagnostics,
                                   const PathStyle& paths) {
  std::string out;
  for (const Diagnostic& d : diagnostics) {
    const std::string file = paths.render(d.file);
    const std::string selector = file + ":" + std::to_string(d.pos.line) + ":" +
                                 std::to_string(d.pos.col);
    const json line = {{"file", file},
                       {"line", d.pos.line},
                       {"col", d.pos.col},
                       {"patternId", d.pattern_id},
                       {"message", d.message},
                       {"fix", {{"root", selector}, {"pattern", d.pattern_id}}}};
    out += line.dump() + "\n";
  }
  return out;
}

namespace {

std::string apply_command(const Suggestion& s, const std::string& new_path,
                          const std::string& catalog_flag) {
  return "retype apply --root " + new_path + ":" + std::to_string(s.pos.line) +
         ":" + std::to_string(s.pos.col) + " --pattern " +
         std::to_string(s.pattern_id) + " --scope file" + catalog_flag;
}

}  // namespace

std::string suggestions_text(const SuggestResult& result,
                             const std::string& new_path,
                             const std::string& catalog_flag) {
  std::string out;
  for (const Suggestion& s : result.suggestions) {
    out += new_path + ":" + std::to_string(s.pos.line) + ":" +
           std::to_string(s.pos.col) + ": " +
           std::string(root_kind_name(s.kind)) + " " + s.name + " (" +
           s.container + ") changed " + s.old_type + " -> " + s.new_type +
           "; pattern " + std::to_string(s.pattern_id) + " can finish the " +
           "migration (" + std::to_string(s.remaining_usages) +
           " usage(s) to adapt)\n";
    out += "  run: " + apply_command(s, new_path, catalog_flag) + "\n";
  }
  return out;
}

std::string suggestions_json_lines(const SuggestResult& result,
                                   const std::string& new_path) {
  std::string out;
  for (const Suggestion& s : result.suggestions) {
    const json line = {{"file", new_path},
                       {"line", s.pos.line},
                       {"col", s.pos.col},
                       {"kind", root_kind_name(s.kind)},
                       {"name", s.name},
                       {"container", s.container},
                       {"patternId", s.pattern_id},
                       {"oldType", s.old_type},
                       {"newType", s.new_type},
                       {"remainingUsages", s.remaining_usages},
                       {"apply", apply_command(s, new_path, "")}};
    out += line.dump() + "\n";
  }
  return out;
}

}  // namespace retype
