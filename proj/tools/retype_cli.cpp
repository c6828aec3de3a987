// retype_cli.cpp - Command-line front end. All engine access goes through
// the shared library's C interface; this file only parses arguments, wires
// subcommands, and maps results to exit codes:
//   0 success / nothing found, 1 error, 2 applied with failed usages,
//   3 findings exist (inspect/suggest without --fix).

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "retype/retype.h"

namespace {

// Owns a string allocated by the library.
struct OwnedStr {
  char* ptr = nullptr;
  OwnedStr() = default;
  OwnedStr(const OwnedStr&) = delete;
  OwnedStr& operator=(const OwnedStr&) = delete;
  ~OwnedStr() { retype_string_free(ptr); }
  [[nodiscard]] const char* get() const { return ptr ? ptr : ""; }
  [[nodiscard]] bool empty() const { return !ptr || !*ptr; }
};

struct OwnedSession {
  retype_session* ptr = nullptr;
  OwnedSession() = default;
  OwnedSession(const OwnedSession&) = delete;
  OwnedSession& operator=(const OwnedSession&) = delete;
  ~OwnedSession() { retype_session_close(ptr); }
};

struct OwnedPlan {
  retype_plan* ptr = nullptr;
  OwnedPlan() = default;
  OwnedPlan(const OwnedPlan&) = delete;
  OwnedPlan& operator=(const OwnedPlan&) = delete;
  ~OwnedPlan() { retype_plan_free(ptr); }
};

int report_error(const OwnedStr& err) {
  std::fprintf(stderr, "error: %s\n", err.get());
  return 1;
}

const char* catalog_arg(const std::string& catalog) {
  return catalog.empty() ? nullptr : catalog.c_str();
}

int open_session(const std::string& root, const std::string& catalog,
                 OwnedSession& session) {
  OwnedStr err;
  if (retype_session_open(root.c_str(), catalog_arg(catalog), &session.ptr,
                          &err.ptr) != 0) {
    return report_error(err);
  }
  OwnedStr warnings;
  if (retype_session_parse_warnings(session.ptr, &warnings.ptr, nullptr) == 0 &&
      !warnings.empty()) {
    std::fprintf(stderr, "%s", warnings.get());
  }
  return 0;
}

struct PlanOptions {
  std::string root = ".";
  std::string catalog;
  std::string selector;
  std::string pattern;
  std::string scope = "file";
  std::string format = "text";
  bool relative = false;
  bool dry_run = false;
};

void add_common_flags(CLI::App* cmd, PlanOptions& opt) {
  cmd->add_option("--project", opt.root, "Project root directory")
      ->capture_default_str();
  cmd->add_option("--catalog", opt.catalog,
                  "Catalog JSON path (default: $RETYPE_CATALOG, then "
                  "<project>/typechanges.json, then built-in)");
  cmd->add_option("--format", opt.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd->add_flag("--relative", opt.relative,
                "Print project-relative paths only");
}

void add_plan_flags(CLI::App* cmd, PlanOptions& opt) {
  add_common_flags(cmd, opt);
  cmd->add_option("--root", opt.selector,
                  "Root element: file:line:col or file#Class.member")
      ->required();
  cmd->add_option("--pattern", opt.pattern, "Pattern id or from=>to")
      ->required();
  cmd->add_option("--scope", opt.scope, "Search scope: local, file, project")
      ->check(CLI::IsMember({"local", "file", "project"}))
      ->capture_default_str();
}

// Shared by apply, apply --dry-run, and preview.
int run_plan(const PlanOptions& opt, bool write) {
  OwnedSession session;
  if (const int rc = open_session(opt.root, opt.catalog, session)) return rc;

  const bool as_json = opt.format == "json";
  OwnedStr err;
  OwnedPlan plan;
  if (retype_plan_create(session.ptr, opt.selector.c_str(),
                         opt.pattern.c_str(), opt.scope.c_str(), &plan.ptr,
                         &err.ptr) != 0) {
    return report_error(err);
  }

  OwnedStr report;
  if (retype_plan_report(plan.ptr, as_json ? 1 : 0, opt.relative ? 1 : 0,
                         &report.ptr, &err.ptr) != 0) {
    return report_error(err);
  }
  std::fputs(report.get(), stdout);

  if (!write && !as_json) {
    OwnedStr diff;
    if (retype_plan_diff(plan.ptr, opt.relative ? 1 : 0, &diff.ptr,
                         &err.ptr) != 0) {
      return report_error(err);
    }
    std::fputs(diff.get(), stdout);
  }

  if (write) {
    OwnedStr journal;
    if (retype_plan_apply(plan.ptr, &journal.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    if (as_json) {
      std::printf("{\"applied\":true,\"journal\":\"%s\"}\n", journal.get());
    } else {
      std::printf("journal: %s\n", journal.get());
    }
  }

  int failed = 0;
  retype_plan_counts(plan.ptr, nullptr, nullptr, nullptr, &failed);
  return failed > 0 ? 2 : 0;
}

struct InspectOptions {
  std::string root = ".";
  std::string catalog;
  std::string format = "text";
  bool relative = false;
  bool fix = false;
};

int run_inspect_fix(const InspectOptions& opt) {
  // Fix one diagnostic at a time, re-scanning after each apply: every apply
  // retypes the flagged declaration, so the diagnostic count strictly
  // drops and the loop terminates.
  bool any_failed_usages = false;
  for (int round = 0;; ++round) {
    if (round > 10000) {
      std::fprintf(stderr, "error: inspection fixes do not converge\n");
      return 1;
    }
    OwnedSession session;
    if (const int rc = open_session(opt.root, opt.catalog, session)) return rc;
    OwnedStr out;
    OwnedStr err;
    int count = 0;
    if (retype_inspect(session.ptr, 1, 1, &out.ptr, &count, &err.ptr) != 0) {
      return report_error(err);
    }
    if (count == 0) break;

    const std::string lines(out.get());
    const size_t eol = lines.find('\n');
    nlohmann::json first;
    try {
      first = nlohmann::json::parse(lines.substr(0, eol));
    } catch (const nlohmann::json::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
    const std::string selector = first["fix"]["root"].get<std::string>();
    const std::string pattern = std::to_string(first["fix"]["pattern"].get<int>());

    OwnedPlan plan;
    // Diagnostics carry project-relative selectors; resolve against the
    // same project the session opened.
    if (retype_plan_create(session.ptr, selector.c_str(), pattern.c_str(),
                           "file", &plan.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    OwnedStr report;
    if (retype_plan_report(plan.ptr, opt.format == "json" ? 1 : 0,
                           opt.relative ? 1 : 0, &report.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    std::fputs(report.get(), stdout);
    OwnedStr journal;
    if (retype_plan_apply(plan.ptr, &journal.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    if (opt.format != "json") std::printf("journal: %s\n", journal.get());
    int failed = 0;
    retype_plan_counts(plan.ptr, nullptr, nullptr, nullptr, &failed);
    any_failed_usages = any_failed_usages || failed > 0;
  }
  return any_failed_usages ? 2 : 0;
}

int run_inspect(const InspectOptions& opt) {
  if (opt.fix) return run_inspect_fix(opt);
  OwnedSession session;
  if (const int rc = open_session(opt.root, opt.catalog, session)) return rc;
  OwnedStr out;
  OwnedStr err;
  int count = 0;
  if (retype_inspect(session.ptr, opt.format == "json" ? 1 : 0,
                     opt.relative ? 1 : 0, &out.ptr, &count, &err.ptr) != 0) {
    return report_error(err);
  }
  std::fputs(out.get(), stdout);
  return count > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"retype: catalog-driven type-change refactoring for Java "
               "sources (version " +
               std::string(retype_version()) + ")"};
  app.require_subcommand(1);

  PlanOptions apply_opt;
  CLI::App* apply = app.add_subcommand(
      "apply", "Plan a type change and write it to disk (journaled)");
  add_plan_flags(apply, apply_opt);
  apply->add_flag("--dry-run", apply_opt.dry_run,
                  "Plan and print the diff without touching files");

  PlanOptions preview_opt;
  CLI::App* preview = app.add_subcommand(
      "preview", "Plan a type change and print the report and diff");
  add_plan_flags(preview, preview_opt);

  InspectOptions inspect_opt;
  CLI::App* inspect_cmd = app.add_subcommand(
      "inspect", "Flag declarations whose type a catalog pattern discourages");
  inspect_cmd->add_option("--project", inspect_opt.root, "Project root directory")
      ->capture_default_str();
  inspect_cmd->add_option("--catalog", inspect_opt.catalog, "Catalog JSON path");
  inspect_cmd->add_option("--format", inspect_opt.format,
                          "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  inspect_cmd->add_flag("--relative", inspect_opt.relative,
                        "Print project-relative paths only");
  inspect_cmd->add_flag("--fix", inspect_opt.fix,
                        "Apply each diagnostic's quick fix (file scope)");

  std::string suggest_old;
  std::string suggest_new;
  std::string suggest_catalog;
  std::string suggest_format = "text";
  CLI::App* suggest = app.add_subcommand(
      "suggest", "Detect a manual type edit between two file versions");
  suggest->add_option("--old", suggest_old, "Previous version of the file")
      ->required();
  suggest->add_option("--new", suggest_new, "Current version of the file")
      ->required();
  suggest->add_option("--catalog", suggest_catalog, "Catalog JSON path");
  suggest->add_option("--format", suggest_format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();

  std::string undo_root = ".";
  std::string undo_journal;
  CLI::App* undo = app.add_subcommand(
      "undo", "Restore the files of a journal entry (newest by default)");
  undo->add_option("--project", undo_root, "Project root directory")
      ->capture_default_str();
  undo->add_option("--journal", undo_journal, "Journal entry to revert");

  std::string list_root = ".";
  std::string list_catalog;
  CLI::App* list_cmd =
      app.add_subcommand("list-patterns", "List the catalog's patterns");
  list_cmd->add_option("--project", list_root, "Project root directory")
      ->capture_default_str();
  list_cmd->add_option("--catalog", list_catalog, "Catalog JSON path");

  std::string validate_path;
  CLI::App* validate = app.add_subcommand(
      "validate-spec", "Check a catalog file against the schema");
  validate->add_option("catalog", validate_path, "Catalog JSON path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help lands here with exit code 0; everything else is a usage error.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (apply->parsed()) {
    return run_plan(apply_opt, !apply_opt.dry_run);
  }
  if (preview->parsed()) {
    return run_plan(preview_opt, false);
  }
  if (inspect_cmd->parsed()) {
    return run_inspect(inspect_opt);
  }
  if (suggest->parsed()) {
    OwnedStr out;
    OwnedStr warnings;
    OwnedStr err;
    int count = 0;
    if (retype_suggest(catalog_arg(suggest_catalog), suggest_old.c_str(),
                       suggest_new.c_str(), suggest_format == "json" ? 1 : 0,
                       &out.ptr, &count, &warnings.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    if (!warnings.empty()) {
      std::fprintf(stderr, "%s", warnings.get());
      return 1;  // a version failed to parse
    }
    std::fputs(out.get(), stdout);
    return count > 0 ? 3 : 0;
  }
  if (undo->parsed()) {
    OwnedStr files;
    OwnedStr err;
    if (retype_undo(undo_root.c_str(),
                    undo_journal.empty() ? nullptr : undo_journal.c_str(),
                    &files.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    std::printf("restored:\n%s", files.get());
    return 0;
  }
  if (list_cmd->parsed()) {
    OwnedSession session;
    if (const int rc = open_session(list_root, list_catalog, session)) return rc;
    OwnedStr out;
    OwnedStr err;
    if (retype_list_patterns(session.ptr, &out.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    std::fputs(out.get(), stdout);
    return 0;
  }
  if (validate->parsed()) {
    OwnedStr out;
    OwnedStr err;
    if (retype_validate_catalog(validate_path.c_str(), &out.ptr, &err.ptr) != 0) {
      return report_error(err);
    }
    std::printf("%s\n", out.get());
    return 0;
  }
  return 1;
}
