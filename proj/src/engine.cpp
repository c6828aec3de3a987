// engine.cpp - Migration planning and execution. plan_migration runs the
// propagation worklist over usages, select_rule picks the most specific
// rewrite per usage, and apply_plan/undo_journal move file contents through
// the journal under <root>/.retype.

#include "engine.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <set>
#include <utility>

#include "json.hpp"

#include "error.hpp"
#include "parser.hpp"
#include "token.hpp"
#include "util.hpp"

namespace retype {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string package_of(const std::string& fqn) {
  const size_t dot = fqn.rfind('.');
  return dot == std::string::npos ? std::string() : fqn.substr(0, dot);
}

std::string file_package(const SourceFile& file) {
  if (!file.parsed || file.ast.root == kNoNode) return {};
  for (const NodeId c : file.ast.node(file.ast.root).children) {
    if (file.ast.node(c).kind == NodeKind::PackageDecl)
      return file.ast.node(c).text;
  }
  return {};
}

// Expands a node span to the whole source line(s) it occupies, trailing
// newline included.
Span line_span(const std::string& content, const LineIndex& lines, Span span) {
  const auto begin = lines.line_start(lines.lookup(span.begin).line);
  size_t end = content.find('\n', span.end);
  end = end == std::string::npos ? content.size() : end + 1;
  return {static_cast<uint32_t>(begin), static_cast<uint32_t>(end)};
}

uint32_t line_begin(const SourceFile& file, NodeId node) {
  return static_cast<uint32_t>(file.lines.line_start(
      file.lines.lookup(file.ast.node(node).span.begin).line));
}

// Renders `type` for insertion at a declaration in `file`: simple names
// where the file can resolve them (adding the import to `needed`), fully
// qualified where the simple name already means something else.
std::string render_type(const Project& project, int file, const TypeRef& type,
                        std::set<std::string>& needed) {
  const SourceFile& sf = project.file(file);
  std::string base;
  const std::string& fqn = type.qualified;
  const size_t dot = fqn.rfind('.');
  if (dot == std::string::npos) {
    base = fqn;  // primitive, type variable, or already-simple name
  } else {
    const std::string simple = fqn.substr(dot + 1);
    const std::string pkg = fqn.substr(0, dot);
    const auto resolved = sf.imports.resolve(simple);
    if (resolved && *resolved != fqn) {
      base = fqn;  // the simple name is taken by a different type
    } else {
      base = simple;
      if (pkg != "java.lang" && pkg != file_package(sf) &&
          !sf.imports.has_explicit_import(fqn) && !sf.imports.wildcard_covers(fqn)) {
        needed.insert(fqn);
      }
    }
  }
  if (type.args.empty()) return base;
  std::string out = base + "<";
  for (size_t i = 0; i < type.args.size(); ++i) {
    if (i > 0) out += ", ";
    out += render_type(project, file, type.args[i], needed);
  }
  return out + ">";
}

// A rewrite recorded during the worklist, kept separate from plain Edits so
// import planning can reach the rule that produced it.
struct Rewrite {
  int file = -1;
  Span span;
  std::string text;
  int rule_index = -1;
};

struct ImportWork {
  std::set<std::string> add;
  NodeId remove_node = kNoNode;  // ImportDecl of the source type, when droppable
};

const char* kJournalDir = ".retype/journal";
const char* kLockDir = ".retype/lock";

// Mutual exclusion for apply/undo: creating a directory is atomic, so the
// first process to create <root>/.retype/lock owns the project until the
// guard removes it.
class DirLock {
 public:
  explicit DirLock(const fs::path& dir) : dir_(dir) {
    std::error_code ec;
    fs::create_directories(dir_.parent_path(), ec);
    if (!fs::create_directory(dir_, ec)) {
      if (ec) {
        throw_error(ErrorCode::Io,
                    "cannot create " + dir_.string() + ": " + ec.message());
      }
      throw_error(ErrorCode::Locked,
                  "another operation holds " + dir_.string());
    }
  }
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;
  ~DirLock() {
    std::error_code ec;
    fs::remove(dir_, ec);
  }

 private:
  fs::path dir_;
};

json read_journal(const std::string& path) {
  json entry;
  try {
    entry = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw_error(ErrorCode::Journal, path + " is not a journal entry: " + e.what());
  }
  if (!entry.is_object() || !entry.contains("files") || !entry["files"].is_array())
    throw_error(ErrorCode::Journal, path + " is not a journal entry");
  return entry;
}

}  // namespace

const char* failure_reason_name(FailureReason reason) {
  switch (reason) {
    case FailureReason::NoMatchingRule: return "NoMatchingRule";
    case FailureReason::OpaqueContext: return "OpaqueContext";
    case FailureReason::OutOfScope: return "OutOfScope";
    case FailureReason::AmbiguousOverload: return "AmbiguousOverload";
  }
  return "?";
}

std::optional<RuleMatch> select_rule(const Project& project, const Usage& usage,
                                     const TypeChangePattern& pattern,
                                     const std::unordered_set<NodeId>& root_refs) {
  const Ast& ast = project.file(usage.site.file).ast;
  std::vector<NodeId> candidates{usage.site.node};
  for (NodeId cur = usage.site.node;;) {
    const NodeId up = ast.node(cur).parent;
    if (up == kNoNode || !is_expression_kind(ast.node(up).kind)) break;
    candidates.push_back(up);
    cur = up;
  }
  std::optional<RuleMatch> best;
  for (const NodeId target : candidates) {
    for (size_t i = 0; i < pattern.rules.size(); ++i) {
      Bindings bindings;
      if (!match_template(pattern.rules[i].before, ast, root_refs, target,
                          bindings)) {
        continue;
      }
      const int score = pattern.rules[i].before.score;
      bool better = !best;
      if (best) {
        const Span bs = ast.node(best->matched).span;
        const Span ts = ast.node(target).span;
        better = score > best->score ||
                 (score == best->score && ts.size() > bs.size());
      }
      if (better) {
        best = RuleMatch{static_cast<int>(i), score, target,
                         std::move(bindings)};
      }
    }
  }
  return best;
}

MigrationPlan plan_migration(const Project& project, NodeRef root_decl,
                             const TypeChangePattern& pattern,
                             ScopeKind scope_kind) {
  const RootElement root = make_root_element(project, root_decl);
  TypeVarBindings sigma;
  if (!unify_types(pattern.from, root.declared_type, sigma)) {
    sigma.clear();
    // Accept a declaration already carrying the target type so a manual
    // type edit can be completed: no declaration edit, usages still rewritten.
    if (!unify_types(pattern.to, root.declared_type, sigma)) {
      throw_error(ErrorCode::PatternMismatch,
                  "declared type " + root.declared_type.display() +
                      " matches neither " + pattern.from.display() + " nor " +
                      pattern.to.display());
    }
  }
  const TypeRef from_type = instantiate_type(pattern.from, sigma);
  const TypeRef to_type = instantiate_type(pattern.to, sigma);
  const Scope scope = make_scope(project, root, scope_kind);

  MigrationPlan plan;
  plan.pattern_id = pattern.id;
  plan.from_type = from_type.display();
  plan.to_type = to_type.display();
  plan.scope = scope_kind;
  plan.root = root_decl;

  std::vector<RootElement> elements{root};
  std::set<uint64_t> members{root_decl.key()};
  std::deque<size_t> pending{0};
  std::vector<Rewrite> rewrites;

  auto covering = [&rewrites](int file, Span span) -> const Rewrite* {
    for (const Rewrite& r : rewrites) {
      if (r.file == file && r.span.begin <= span.begin && span.end <= r.span.end)
        return &r;
    }
    return nullptr;
  };
  auto intersects = [&rewrites](int file, Span span) {
    for (const Rewrite& r : rewrites) {
      if (r.file == file && r.span.begin < span.end && span.begin < r.span.end)
        return true;
    }
    return false;
  };

  while (!pending.empty()) {
    const size_t index = pending.front();
    pending.pop_front();
    const RootElement element = elements[index];
    const std::vector<Usage> usages = find_references(project, element, scope);

    std::map<int, std::unordered_set<NodeId>> refs_by_file;
    for (const Usage& u : usages) refs_by_file[u.site.file].insert(u.site.node);

    for (const Usage& usage : usages) {
      ++plan.usages_found;
      const SourceFile& sf = project.file(usage.site.file);

      if (project.ancestor_of_kind(usage.site, NodeKind::Opaque).valid()) {
        plan.failed.push_back({usage, FailureReason::OpaqueContext,
                               "usage sits in an unsupported statement"});
        continue;
      }
      if (covering(usage.site.file, sf.ast.node(usage.site.node).span)) {
        ++plan.usages_covered;  // an earlier rewrite already replaces this site
        continue;
      }

      auto match = select_rule(project, usage, pattern,
                               refs_by_file[usage.site.file]);
      if (match) {
        const RewriteRule& rule =
            pattern.rules[static_cast<size_t>(match->rule_index)];
        std::string text =
            substitute(rule.after, match->bindings, sf.ast, sf.content);
        const NodeId parent = sf.ast.node(match->matched).parent;
        if (substitution_precedence(rule.after, match->bindings, sf.ast) <
            required_precedence(sf.ast, parent, match->matched)) {
          text = "(" + text + ")";
        }
        const Span span = sf.ast.node(match->matched).span;
        const std::string original =
            sf.content.substr(span.begin, span.size());
        if (text == original) {
          ++plan.usages_rewritten;  // identity rewrite, nothing to edit
          continue;
        }
        if (intersects(usage.site.file, span)) {
          // Expression spans nest, so this match swallows an earlier edit.
          plan.failed.push_back({usage, FailureReason::NoMatchingRule,
                                 "matching rule overlaps an earlier rewrite"});
          continue;
        }
        rewrites.push_back({usage.site.file, span, std::move(text),
                            match->rule_index});
        ++plan.usages_rewritten;
        continue;
      }

      const auto neighbor = discover_neighbor(project, usage);
      if (!neighbor) {
        plan.failed.push_back(
            {usage, FailureReason::NoMatchingRule, "no rewrite rule matches"});
        continue;
      }
      if (neighbor->ambiguous) {
        // An ambiguous candidate has no decl; the witness is the call site.
        plan.failed.push_back({usage, FailureReason::AmbiguousOverload,
                               "cannot pick among overloads of " +
                                   project.node(neighbor->witness).text});
        continue;
      }
      const TypeRef* neighbor_type = declared_type(project, neighbor->decl);
      if (!neighbor_type || *neighbor_type != from_type) {
        plan.failed.push_back(
            {usage, FailureReason::NoMatchingRule, "no rewrite rule matches"});
        continue;
      }
      if (!in_scope(project, scope, neighbor->decl)) {
        plan.failed.push_back(
            {usage, FailureReason::OutOfScope,
             "would retype " + project.node(neighbor->decl).text +
                 ", declared outside the " +
                 std::string(scope_kind_name(scope_kind)) + " scope"});
        continue;
      }
      if (members.insert(neighbor->decl.key()).second) {
        elements.push_back(make_root_element(project, neighbor->decl));
        pending.push_back(elements.size() - 1);
        plan.edges.push_back({element.decl, neighbor->decl, neighbor->reason,
                              neighbor->witness});
      }
      ++plan.usages_covered;  // handled by retyping the neighbor
    }
  }

  if (plan.usages_rewritten + plan.usages_covered +
          static_cast<int>(plan.failed.size()) !=
      plan.usages_found) {
    throw_error(ErrorCode::Internal, "usage accounting out of balance");
  }

  // Declaration edits, one per element not already at the target type.
  std::map<int, ImportWork> imports;
  for (const RootElement& element : elements) {
    ElementRecord record;
    record.element = element;
    record.old_type = element.declared_type.display();
    record.new_type = to_type.display();
    record.needs_decl_edit = element.declared_type != to_type;
    if (record.needs_decl_edit) {
      const NodeRef type_node = declared_type_node(project, element.decl);
      const std::string rendered = render_type(
          project, element.decl.file, to_type, imports[element.decl.file].add);
      plan.edits.push_back(
          {EditKind::Declaration,
           {project.file(element.decl.file).path,
            project.node(type_node).span, rendered}});
    }
    plan.elements.push_back(std::move(record));
  }

  for (const Rewrite& rewrite : rewrites) {
    const SourceFile& sf = project.file(rewrite.file);
    // Names the replacement text mentions that the file must import.
    for (const std::string& name : template_introduced_names(
             pattern.rules[static_cast<size_t>(rewrite.rule_index)].after)) {
      const auto fqn = sf.imports.resolve(name);
      if (!fqn || sf.imports.has_explicit_import(*fqn)) continue;
      if (package_of(*fqn) == "java.lang" || package_of(*fqn) == file_package(sf))
        continue;
      if (sf.imports.wildcard_covers(*fqn)) continue;
      imports[rewrite.file].add.insert(*fqn);
    }
    plan.edits.push_back(
        {EditKind::Rewrite, {sf.path, rewrite.span, rewrite.text}});
  }

  // The source type's import can go once no identifier in the edited file
  // still spells its simple name.
  const std::string from_fqn = from_type.qualified;
  if (from_fqn.find('.') != std::string::npos) {
    std::set<int> touched;
    for (const PlannedEdit& pe : plan.edits)
      touched.insert(project.file_index(pe.edit.file));
    for (const int file : touched) {
      const SourceFile& sf = project.file(file);
      if (!sf.imports.has_explicit_import(from_fqn)) continue;
      NodeId import_node = kNoNode;
      for (const NodeId c : sf.ast.node(sf.ast.root).children) {
        const AstNode& n = sf.ast.node(c);
        if (n.kind == NodeKind::ImportDecl && !n.flag(kAuxWildcardImport) &&
            n.text == from_fqn) {
          import_node = c;
          break;
        }
      }
      if (import_node == kNoNode) continue;
      std::vector<Edit> body;
      for (const PlannedEdit& pe : plan.edits) {
        if (pe.edit.file == sf.path) body.push_back(pe.edit);
      }
      // The import block precedes every body edit, so the line's offsets are
      // identical before and after applying them.
      const Span line = line_span(sf.content, sf.lines,
                                  sf.ast.node(import_node).span);
      std::string post = apply_edits(sf.content, body);
      post.erase(line.begin, line.size());
      bool still_referenced = false;
      try {
        const std::string simple = from_type.simple_name();
        for (const Token& token : tokenize(post)) {
          if (token.kind == TokenKind::Identifier && token.text == simple) {
            still_referenced = true;
            break;
          }
        }
      } catch (const Error&) {
        still_referenced = true;  // cannot prove it unused, keep the import
      }
      if (!still_referenced) imports[file].remove_node = import_node;
    }
  }

  // Import insertions keep the block alphabetical; removals take whole lines.
  for (const auto& [file, work] : imports) {
    const SourceFile& sf = project.file(file);
    if (work.remove_node != kNoNode) {
      plan.edits.push_back(
          {EditKind::Import,
           {sf.path,
            line_span(sf.content, sf.lines, sf.ast.node(work.remove_node).span),
            ""}});
    }
    if (work.add.empty()) continue;
    struct Kept {
      std::string fqn;
      NodeId node;
    };
    std::vector<Kept> kept;
    NodeId package_node = kNoNode;
    for (const NodeId c : sf.ast.node(sf.ast.root).children) {
      const AstNode& n = sf.ast.node(c);
      if (n.kind == NodeKind::PackageDecl) package_node = c;
      if (n.kind == NodeKind::ImportDecl && c != work.remove_node)
        kept.push_back({n.text, c});
    }
    if (!kept.empty() || work.remove_node != kNoNode) {
      for (const std::string& fqn : work.add) {
        uint32_t at = 0;
        bool placed = false;
        for (const Kept& k : kept) {
          if (fqn < k.fqn) {
            at = line_begin(sf, k.node);
            placed = true;
            break;
          }
        }
        if (!placed && !kept.empty()) {
          at = line_span(sf.content, sf.lines,
                         sf.ast.node(kept.back().node).span).end;
          placed = true;
        }
        if (!placed) at = line_begin(sf, work.remove_node);
        plan.edits.push_back({EditKind::Import,
                              {sf.path, {at, at}, "import " + fqn + ";\n"}});
      }
    } else {
      std::string block;
      for (const std::string& fqn : work.add) block += "import " + fqn + ";\n";
      if (package_node != kNoNode) {
        const uint32_t at =
            line_span(sf.content, sf.lines, sf.ast.node(package_node).span).end;
        std::string text = "\n" + block;
        if (at < sf.content.size() && sf.content[at] != '\n') text += "\n";
        plan.edits.push_back({EditKind::Import, {sf.path, {at, at}, text}});
      } else {
        plan.edits.push_back(
            {EditKind::Import, {sf.path, {0, 0}, block + "\n"}});
      }
    }
  }

  std::stable_sort(plan.edits.begin(), plan.edits.end(),
                   [](const PlannedEdit& a, const PlannedEdit& b) {
                     if (a.edit.file != b.edit.file)
                       return a.edit.file < b.edit.file;
                     if (a.edit.span.begin != b.edit.span.begin)
                       return a.edit.span.begin < b.edit.span.begin;
                     return a.edit.span.end < b.edit.span.end;
                   });

  for (const PlannedEdit& pe : plan.edits) {
    const int file = project.file_index(pe.edit.file);
    plan.pre_hashes.emplace(pe.edit.file,
                            content_hash(project.file(file).content));
  }
  return plan;
}

ApplyResult apply_plan(const Project& project, const MigrationPlan& plan) {
  const fs::path root(project.root);
  std::map<std::string, std::vector<Edit>> by_file;
  for (const PlannedEdit& pe : plan.edits) by_file[pe.edit.file].push_back(pe.edit);

  const DirLock lock(root / kLockDir);

  struct FileState {
    std::string path;
    std::string before;
    std::string after;
  };
  std::vector<FileState> states;
  for (const auto& [path, edits] : by_file) {
    std::string disk = read_file((root / path).string());
    const auto hash = plan.pre_hashes.find(path);
    if (hash == plan.pre_hashes.end() || content_hash(disk) != hash->second) {
      throw_error(ErrorCode::StaleFile,
                  path + " changed since the plan was computed");
    }
    states.push_back({path, std::move(disk), {}});
  }
  for (FileState& state : states) {
    state.after = apply_edits(state.before, by_file[state.path]);
    try {
      parse_compilation_unit(state.after);
    } catch (const Error& e) {
      throw_error(ErrorCode::ReparseFailure,
                  state.path + " does not reparse after edits: " + e.what());
    }
  }

  json entry;
  entry["timestamp"] = utc_timestamp();
  entry["patternId"] = plan.pattern_id;
  entry["consumed"] = false;
  entry["summary"] = {{"edits", plan.edits.size()},
                      {"files", states.size()},
                      {"failedUsages", plan.failed.size()}};
  entry["files"] = json::array();
  for (const FileState& state : states) {
    entry["files"].push_back({{"path", state.path},
                              {"preHash", content_hash(state.before)},
                              {"postHash", content_hash(state.after)},
                              {"originalContent", state.before}});
  }

  const fs::path dir = root / kJournalDir;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw_error(ErrorCode::Io, "cannot create " + dir.string() + ": " + ec.message());
  }
  const std::string stamp = entry["timestamp"].get<std::string>();
  fs::path journal = dir / (stamp + ".json");
  for (int n = 2; fs::exists(journal); ++n) {
    journal = dir / (stamp + "-" + std::to_string(n) + ".json");
  }
  write_file(journal.string(), entry.dump(2) + "\n");

  ApplyResult result;
  result.journal_path = journal.string();
  size_t written = 0;
  try {
    for (const FileState& state : states) {
      write_file((root / state.path).string(), state.after);
      ++written;
      result.files.push_back(state.path);
    }
  } catch (...) {
    for (size_t i = 0; i < written; ++i) {
      try {
        write_file((root / states[i].path).string(), states[i].before);
      } catch (...) {
        // Restoration is best effort; the journal still has the content.
      }
    }
    throw;
  }
  return result;
}

UndoResult undo_journal(const std::string& project_root,
                        const std::string& journal_path) {
  std::string path = journal_path;
  if (path.empty()) {
    const auto latest = latest_journal(project_root);
    if (!latest) {
      throw_error(ErrorCode::Journal,
                  "no journal entries under " + project_root);
    }
    path = *latest;
  }
  json entry = read_journal(path);
  if (entry.value("consumed", false)) {
    throw_error(ErrorCode::JournalConsumed, path + " was already undone");
  }

  const fs::path root(project_root);
  const DirLock lock(root / kLockDir);

  struct Restore {
    std::string path;
    std::string content;
  };
  std::vector<Restore> restores;
  try {
    for (const json& f : entry["files"]) {
      const std::string rel = f.at("path").get<std::string>();
      const std::string current = read_file((root / rel).string());
      if (content_hash(current) != f.at("postHash").get<std::string>()) {
        throw_error(ErrorCode::StaleFile,
                    rel + " changed after the apply; undo would lose edits");
      }
      restores.push_back({rel, f.at("originalContent").get<std::string>()});
    }
  } catch (const json::exception& e) {
    throw_error(ErrorCode::Journal, path + " is not a journal entry: " + e.what());
  }

  UndoResult result;
  result.journal_path = path;
  for (const Restore& r : restores) {
    write_file((root / r.path).string(), r.content);
    result.files.push_back(r.path);
  }
  entry["consumed"] = true;
  write_file(path, entry.dump(2) + "\n");
  return result;
}

std::vector<std::string> list_journals(const std::string& project_root) {
  std::vector<std::string> out;
  const fs::path dir = fs::path(project_root) / kJournalDir;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return out;
  for (const auto& e : fs::directory_iterator(dir, ec)) {
    if (e.path().extension() == ".json") out.push_back(e.path().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::string> latest_journal(const std::string& project_root) {
  auto all = list_journals(project_root);
  if (all.empty()) return std::nullopt;
  return all.back();
}

}  // namespace retype
