// capi.cpp - The extern-C shared-library surface. Thin translation layer:
// parses selectors, maps exceptions to status codes, and hands out
// heap-allocated strings the caller releases with retype_string_free.

#include "retype/retype.h"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "catalog.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "modes.hpp"
#include "project.hpp"
#include "refgraph.hpp"
#include "report.hpp"
#include "util.hpp"

namespace fs = std::filesystem;
using namespace retype;

struct retype_session {
  std::string root;  // as given by the caller
  Project project;
  Catalog catalog;
  std::string catalog_origin;  // explicit path, or empty for env/default/builtin
};

struct retype_plan {
  retype_session* session = nullptr;
  MigrationPlan plan;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void set_error(char** err_out, const std::string& message) {
  if (err_out) *err_out = dup_string(message);
}

template <typename Fn>
int guarded(char** err_out, Fn&& fn) {
  try {
    fn();
    return 0;
  } catch (const Error& e) {
    set_error(err_out, e.what());
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    set_error(err_out, e.what());
    return static_cast<int>(ErrorCode::Internal);
  }
}

// Catalog resolution: explicit path beats $RETYPE_CATALOG beats
// <base>/typechanges.json beats the built-in catalog.
Catalog resolve_catalog(const char* explicit_path, const std::string& base,
                        std::string* origin) {
  if (explicit_path && *explicit_path) {
    if (origin) *origin = explicit_path;
    return load_catalog_file(explicit_path);
  }
  if (const char* env = std::getenv("RETYPE_CATALOG"); env && *env) {
    return load_catalog_file(env);
  }
  const fs::path fallback = fs::path(base) / "typechanges.json";
  std::error_code ec;
  if (fs::is_regular_file(fallback, ec)) {
    return load_catalog_file(fallback.string());
  }
  return builtin_catalog();
}

int find_project_file(const Project& project, const std::string& given) {
  const std::string norm = fs::path(given).lexically_normal().generic_string();
  for (size_t i = 0; i < project.files.size(); ++i) {
    if (project.files[i].path == norm) return static_cast<int>(i);
  }
  std::error_code ec;
  const fs::path abs = fs::weakly_canonical(fs::path(given), ec);
  if (!ec) {
    for (size_t i = 0; i < project.files.size(); ++i) {
      const fs::path candidate = fs::weakly_canonical(
          fs::path(project.root) / project.files[i].path, ec);
      if (!ec && candidate == abs) return static_cast<int>(i);
    }
  }
  throw_error(ErrorCode::Selector, "file not in project: " + given);
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (const char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

std::string trimmed(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

NodeRef resolve_root_selector(const Project& project, const std::string& sel) {
  const size_t hash = sel.find('#');
  if (hash != std::string::npos) {
    const std::string member_part = sel.substr(hash + 1);
    const size_t dot = member_part.rfind('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == member_part.size()) {
      throw_error(ErrorCode::Selector,
                  "selector needs Class.member after '#': " + sel);
    }
    find_project_file(project, sel.substr(0, hash));  // validates the path
    return root_decl_by_member(project, member_part.substr(0, dot),
                               member_part.substr(dot + 1));
  }
  const size_t c2 = sel.rfind(':');
  const size_t c1 = c2 == std::string::npos ? c2 : sel.rfind(':', c2 - 1);
  if (c1 == std::string::npos || c1 == 0) {
    throw_error(ErrorCode::Selector,
                "selector must be file:line:col or file#Class.member: " + sel);
  }
  const std::string line_text = sel.substr(c1 + 1, c2 - c1 - 1);
  const std::string col_text = sel.substr(c2 + 1);
  if (!all_digits(line_text) || !all_digits(col_text)) {
    throw_error(ErrorCode::Selector,
                "selector line and column must be numbers: " + sel);
  }
  const int file = find_project_file(project, sel.substr(0, c1));
  const size_t offset = project.file(file).lines.offset_of(
      std::stoi(line_text), std::stoi(col_text));
  if (offset == std::string::npos ||
      offset >= project.file(file).content.size()) {
    throw_error(ErrorCode::Selector, "position outside file: " + sel);
  }
  const auto decl =
      root_decl_at(project, file, static_cast<uint32_t>(offset));
  if (!decl) {
    throw_error(ErrorCode::Selector,
                "no declaration or reference at " + sel);
  }
  return *decl;
}

const TypeChangePattern& resolve_pattern(const Catalog& catalog,
                                         const std::string& sel) {
  if (all_digits(sel)) {
    if (const TypeChangePattern* p = catalog.find_by_id(std::stoi(sel)))
      return *p;
    throw_error(ErrorCode::Selector, "pattern not found: " + sel);
  }
  const size_t arrow = sel.find("=>");
  if (arrow != std::string::npos) {
    const TypeRef from = parse_type_text(trimmed(sel.substr(0, arrow)));
    const TypeRef to = parse_type_text(trimmed(sel.substr(arrow + 2)));
    for (const TypeChangePattern& p : catalog.patterns) {
      if (p.from == from && p.to == to) return p;
    }
  }
  throw_error(ErrorCode::Selector, "pattern not found: " + sel);
}

ScopeKind resolve_scope(const char* scope) {
  if (!scope || !*scope) return ScopeKind::File;
  if (const auto kind = scope_kind_from_name(scope)) return *kind;
  throw_error(ErrorCode::Selector,
              std::string("unknown scope: ") + scope +
                  " (expected local, file, or project)");
}

}  // namespace

extern "C" {

const char* retype_version(void) { return "0.1.0"; }

const char* retype_status_name(int status) {
  if (status < 0 || status > static_cast<int>(ErrorCode::Internal))
    return "unknown";
  return error_code_name(static_cast<ErrorCode>(status));
}

void retype_string_free(char* s) { std::free(s); }

int retype_session_open(const char* project_root, const char* catalog_path,
                        retype_session** session_out, char** err_out) {
  return guarded(err_out, [&] {
    if (!project_root || !session_out)
      throw_error(ErrorCode::Selector, "project root required");
    auto session = std::make_unique<retype_session>();
    session->root = project_root;
    session->project = load_project(project_root);
    session->catalog = resolve_catalog(catalog_path, project_root,
                                       &session->catalog_origin);
    *session_out = session.release();
  });
}

void retype_session_close(retype_session* session) { delete session; }

int retype_session_parse_warnings(retype_session* session, char** out,
                                  char** err_out) {
  return guarded(err_out, [&] {
    if (!session || !out)
      throw_error(ErrorCode::Selector, "session and out required");
    std::string text;
    for (const SourceFile& file : session->project.files) {
      if (!file.parsed)
        text += file.path + ": " + file.parse_error + "\n";
    }
    *out = dup_string(text);
  });
}

int retype_list_patterns(retype_session* session, char** out, char** err_out) {
  return guarded(err_out, [&] {
    if (!session || !out)
      throw_error(ErrorCode::Selector, "session and out required");
    std::vector<const TypeChangePattern*> patterns;
    for (const TypeChangePattern& p : session->catalog.patterns)
      patterns.push_back(&p);
    std::sort(patterns.begin(), patterns.end(),
              [](const TypeChangePattern* a, const TypeChangePattern* b) {
                return a->priority != b->priority ? a->priority < b->priority
                                                  : a->id < b->id;
              });
    std::string text;
    for (const TypeChangePattern* p : patterns) {
      text += std::to_string(p->id) + "  " + p->from.display() + " => " +
              p->to.display() + "  " + pattern_mode_label(p->mode) + "  p" +
              std::to_string(p->priority) + "  " +
              std::to_string(p->rules.size()) +
              (p->rules.size() == 1 ? " rule" : " rules") + "\n";
    }
    *out = dup_string(text);
  });
}

int retype_validate_catalog(const char* catalog_path, char** out,
                            char** err_out) {
  return guarded(err_out, [&] {
    if (!catalog_path)
      throw_error(ErrorCode::Selector, "catalog path required");
    load_catalog_file(catalog_path);
    if (out) *out = dup_string("OK");
  });
}

int retype_plan_create(retype_session* session, const char* root_selector,
                       const char* pattern_selector, const char* scope,
                       retype_plan** plan_out, char** err_out) {
  return guarded(err_out, [&] {
    if (!session || !root_selector || !pattern_selector || !plan_out)
      throw_error(ErrorCode::Selector,
                  "session, root selector, and pattern selector required");
    const NodeRef root = resolve_root_selector(session->project, root_selector);
    const TypeChangePattern& pattern =
        resolve_pattern(session->catalog, pattern_selector);
    auto plan = std::make_unique<retype_plan>();
    plan->session = session;
    plan->plan = plan_migration(session->project, root, pattern,
                                resolve_scope(scope));
    *plan_out = plan.release();
  });
}

void retype_plan_free(retype_plan* plan) { delete plan; }

int retype_plan_counts(retype_plan* plan, int* found, int* rewritten,
                       int* covered, int* failed) {
  if (!plan) return static_cast<int>(ErrorCode::Selector);
  if (found) *found = plan->plan.usages_found;
  if (rewritten) *rewritten = plan->plan.usages_rewritten;
  if (covered) *covered = plan->plan.usages_covered;
  if (failed) *failed = static_cast<int>(plan->plan.failed.size());
  return 0;
}

int retype_plan_report(retype_plan* plan, int as_json, int relative_paths,
                       char** out, char** err_out) {
  return guarded(err_out, [&] {
    if (!plan || !out)
      throw_error(ErrorCode::Selector, "plan and out required");
    const PathStyle paths{plan->session->root, relative_paths != 0};
    *out = dup_string(
        as_json ? plan_report_json(plan->session->project, plan->plan, paths)
                : plan_report_text(plan->session->project, plan->plan, paths));
  });
}

int retype_plan_diff(retype_plan* plan, int relative_paths, char** out,
                     char** err_out) {
  return guarded(err_out, [&] {
    if (!plan || !out)
      throw_error(ErrorCode::Selector, "plan and out required");
    const PathStyle paths{plan->session->root, relative_paths != 0};
    *out = dup_string(plan_diff(plan->session->project, plan->plan, paths));
  });
}

int retype_plan_apply(retype_plan* plan, char** journal_out, char** err_out) {
  return guarded(err_out, [&] {
    if (!plan) throw_error(ErrorCode::Selector, "plan required");
    const ApplyResult result =
        apply_plan(plan->session->project, plan->plan);
    if (journal_out) *journal_out = dup_string(result.journal_path);
  });
}

int retype_undo(const char* project_root, const char* journal_path,
                char** files_out, char** err_out) {
  return guarded(err_out, [&] {
    if (!project_root)
      throw_error(ErrorCode::Selector, "project root required");
    const UndoResult result = undo_journal(
        project_root, journal_path ? journal_path : std::string());
    if (files_out) {
      std::string text;
      for (const std::string& file : result.files) text += file + "\n";
      *files_out = dup_string(text);
    }
  });
}

int retype_inspect(retype_session* session, int as_json, int relative_paths,
                   char** out, int* count_out, char** err_out) {
  return guarded(err_out, [&] {
    if (!session || !out)
      throw_error(ErrorCode::Selector, "session and out required");
    const auto diagnostics = inspect(session->project, session->catalog);
    const PathStyle paths{session->root, relative_paths != 0};
    *out = dup_string(as_json ? diagnostics_json_lines(diagnostics, paths)
                              : diagnostics_text(diagnostics, paths));
    if (count_out) *count_out = static_cast<int>(diagnostics.size());
  });
}

int retype_suggest(const char* catalog_path, const char* old_path,
                   const char* new_path, int as_json, char** out,
                   int* count_out, char** warnings_out, char** err_out) {
  return guarded(err_out, [&] {
    if (!old_path || !new_path || !out)
      throw_error(ErrorCode::Selector, "old path, new path, and out required");
    std::string origin;
    const Catalog catalog = resolve_catalog(catalog_path, ".", &origin);
    const SuggestResult result = detect_manual_type_edit(
        read_file(old_path), read_file(new_path), catalog);
    const std::string catalog_flag =
        origin.empty() ? std::string() : " --catalog " + origin;
    *out = dup_string(as_json
                          ? suggestions_json_lines(result, new_path)
                          : suggestions_text(result, new_path, catalog_flag));
    if (count_out) *count_out = static_cast<int>(result.suggestions.size());
    if (warnings_out) {
      std::string text;
      for (const std::string& w : result.warnings) text += w + "\n";
      *warnings_out = dup_string(text);
    }
  });
}

}  // extern "C"
