// acceptance_main.cpp - Standalone acceptance run. Each criterion prints one
// PASS/FAIL line; the exit code is the number of failed criteria. Budgets
// and expected byte outputs are pinned here, not computed from the engine.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

#include "catalog.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "modes.hpp"
#include "project.hpp"
#include "properties.hpp"
#include "scenarios.hpp"
#include "support.hpp"

namespace {

using namespace retype;
using testsupport::TempDir;
using testsupport::find_decl;
using testsupport::make_project;

constexpr auto kMigrationBudget = std::chrono::milliseconds(1000);
constexpr auto kPropertyBudget = std::chrono::seconds(60);
constexpr int kMinScenarios = 25;
constexpr long long kMinPropertyCases = 200;

const char* kGoldenSource =
    "package app;\n"
    "\n"
    "import java.io.File;\n"
    "\n"
    "class Golden {\n"
    "  File f;\n"
    "\n"
    "  void scan(String name) {\n"
    "    if (f.exists()) {\n"
    "      mark(new File(f, name));\n"
    "    }\n"
    "  }\n"
    "\n"
    "  void touch() {\n"
    "    mark(f.toPath());\n"
    "  }\n"
    "\n"
    "  void mark(Object target) {}\n"
    "}\n";

const char* kGoldenMigrated =
    "package app;\n"
    "\n"
    "import java.nio.file.Files;\n"
    "import java.nio.file.Path;\n"
    "\n"
    "class Golden {\n"
    "  Path f;\n"
    "\n"
    "  void scan(String name) {\n"
    "    if (Files.exists(f)) {\n"
    "      mark(f.resolve(name));\n"
    "    }\n"
    "  }\n"
    "\n"
    "  void touch() {\n"
    "    mark(f);\n"
    "  }\n"
    "\n"
    "  void mark(Object target) {}\n"
    "}\n";

const char* kValidatorsSource =
    "package app;\n"
    "\n"
    "import java.util.function.Function;\n"
    "\n"
    "class Validators {\n"
    "  private Function<String, Boolean> validation;\n"
    "  private Function<String, Integer> score;\n"
    "\n"
    "  void audit(String name) {\n"
    "    log(validation.apply(name));\n"
    "  }\n"
    "\n"
    "  void log(boolean flag) {}\n"
    "}\n";

const char* kValidatorsFixed =
    "package app;\n"
    "\n"
    "import java.util.function.Function;\n"
    "import java.util.function.Predicate;\n"
    "\n"
    "class Validators {\n"
    "  private Predicate<String> validation;\n"
    "  private Function<String, Integer> score;\n"
    "\n"
    "  void audit(String name) {\n"
    "    log(validation.test(name));\n"
    "  }\n"
    "\n"
    "  void log(boolean flag) {}\n"
    "}\n";

// The documented catalog shape for the file-to-path pattern.
const char* kPublishedDoc = R"json([
  {
    "From": "java.io.File",
    "To": "java.nio.file.Path",
    "ID": 1,
    "Priority": 2,
    "Mode": "Suggested Refactoring",
    "Rules": [
      {"Before": "new File($1$, $2$)", "After": "$1$.resolve($2$)"},
      {"Before": "$1$.exists()", "After": "Files.exists($1$)"},
      {"Before": "$1$.toPath()", "After": "$1$"}
    ]
  }
])json";

// Squashes a failure reason onto one line for the FAIL output.
std::string flatten(std::string text) {
  for (char& c : text) {
    if (c == '\n') c = ' ';
  }
  constexpr size_t kLimit = 300;
  if (text.size() > kLimit) text = text.substr(0, kLimit) + "...";
  return text;
}

// Criterion: migrating a file-typed field rewrites exists/constructor/toPath
// usages, fixes the imports, fails nothing, matches the golden bytes, and
// stays inside the time budget.
std::string check_field_migration() {
  const auto started = std::chrono::steady_clock::now();
  TempDir dir;
  const Project project =
      make_project(dir, {{"Golden.java", kGoldenSource}});
  const TypeChangePattern* pattern = builtin_catalog().find_by_id(1);
  if (!pattern) return "builtin pattern 1 missing";
  const MigrationPlan plan =
      plan_migration(project, find_decl(project, "f"), *pattern,
                     ScopeKind::File);
  if (plan.usages_found != 3 || plan.usages_rewritten != 3 ||
      !plan.failed.empty()) {
    return "expected 3 usages all rewritten, got found " +
           std::to_string(plan.usages_found) + ", rewritten " +
           std::to_string(plan.usages_rewritten) + ", failed " +
           std::to_string(plan.failed.size());
  }
  apply_plan(project, plan);
  const auto elapsed = std::chrono::steady_clock::now() - started;
  const std::string after = dir.read("Golden.java");
  if (after != kGoldenMigrated) {
    return "migrated bytes differ from the golden output: " + flatten(after);
  }
  if (elapsed > kMigrationBudget) {
    return "migration took " +
           std::to_string(std::chrono::duration_cast<std::chrono::milliseconds>(
                              elapsed)
                              .count()) +
           " ms (budget 1000 ms)";
  }
  return "";
}

// Criterion: the inspection flags the discouraged function type and its
// quick fix (plan the flagged declaration, apply) completes the migration.
std::string check_inspection_quick_fix() {
  TempDir dir;
  Project project = make_project(dir, {{"Validators.java", kValidatorsSource}});
  const Catalog& catalog = builtin_catalog();

  std::vector<Diagnostic> findings = inspect(project, catalog);
  if (findings.size() != 1) {
    return "expected one finding, got " + std::to_string(findings.size());
  }
  if (findings[0].pattern_id != 2 ||
      findings[0].message !=
          "Type Function<String, Boolean> can be replaced with "
          "Predicate<String>") {
    return "unexpected finding: " + findings[0].message;
  }

  const TypeChangePattern* pattern = catalog.find_by_id(findings[0].pattern_id);
  const MigrationPlan fix =
      plan_migration(project, findings[0].decl, *pattern, ScopeKind::File);
  if (!fix.failed.empty()) {
    return "quick fix left " + std::to_string(fix.failed.size()) +
           " failed usage(s)";
  }
  apply_plan(project, fix);

  const std::string after = dir.read("Validators.java");
  if (after != kValidatorsFixed) {
    return "fixed bytes differ from the expected output: " + flatten(after);
  }
  project = load_project(dir.str());
  if (!inspect(project, catalog).empty()) {
    return "inspection still reports findings after the fix";
  }
  return "";
}

std::string check_scenarios() {
  const auto& list = scenarios::all_scenarios();
  if (static_cast<int>(list.size()) < kMinScenarios) {
    return "only " + std::to_string(list.size()) + " scenarios registered";
  }
  std::vector<std::string> broken;
  for (const scenarios::Scenario& scenario : list) {
    scenarios::CheckContext ctx;
    try {
      scenario.run(ctx);
    } catch (const std::exception& e) {
      ctx.failures.push_back(std::string("threw: ") + e.what());
    }
    if (!ctx.failures.empty()) {
      broken.push_back(scenario.name + ": " + flatten(ctx.failures.front()));
    }
  }
  if (!broken.empty()) {
    std::string reason =
        std::to_string(broken.size()) + " of " + std::to_string(list.size()) +
        " scenarios failed";
    for (const std::string& b : broken) reason += "; " + b;
    return flatten(reason);
  }
  return "";
}

std::string check_property_suites() {
  const auto started = std::chrono::steady_clock::now();
  const auto& suites = proptest::all_property_suites();
  if (suites.size() != 5) {
    return "expected 5 property suites, got " + std::to_string(suites.size());
  }
  for (const proptest::PropertySuite& suite : suites) {
    proptest::SuiteResult result;
    try {
      result = suite.run();
    } catch (const std::exception& e) {
      return suite.name + " threw: " + std::string(e.what());
    }
    if (result.cases < kMinPropertyCases) {
      return suite.name + " ran only " + std::to_string(result.cases) +
             " cases";
    }
    if (!result.failures.empty()) {
      return suite.name + " failed: " + flatten(result.failures.front());
    }
  }
  const auto elapsed = std::chrono::steady_clock::now() - started;
  if (elapsed > kPropertyBudget) {
    return "property suites took " +
           std::to_string(
               std::chrono::duration_cast<std::chrono::seconds>(elapsed)
                   .count()) +
           " s (budget 60 s)";
  }
  return "";
}

// Criterion: the documented catalog shape loads, and seeded mutations are
// each rejected with a diagnostic naming the offending field.
std::string check_catalog_contract() {
  try {
    const Catalog catalog = load_catalog(kPublishedDoc);
    const TypeChangePattern* p = catalog.find_by_id(1);
    if (!p || p->rules.size() != 3) {
      return "published document did not load into one pattern with 3 rules";
    }
  } catch (const Error& e) {
    return std::string("published document rejected: ") + e.what();
  }

  const auto expect_rejection = [](const std::string& doc,
                                   const std::string& field) -> std::string {
    try {
      load_catalog(doc);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Schema) {
        return "mutation raised " + std::string(error_code_name(e.code())) +
               " instead of Schema";
      }
      if (std::string(e.what()).find(field) == std::string::npos) {
        return "diagnostic does not name " + field + ": " + e.what();
      }
      return "";
    }
    return "mutation with bad " + field + " was accepted";
  };

  nlohmann::json doc = nlohmann::json::parse(kPublishedDoc);

  nlohmann::json bad_mode = doc;
  bad_mode[0]["Mode"] = "Sideways";
  if (auto r = expect_rejection(bad_mode.dump(), "Mode"); !r.empty()) return r;

  const nlohmann::json duplicate = nlohmann::json::array({doc[0], doc[0]});
  if (auto r = expect_rejection(duplicate.dump(), "duplicate id"); !r.empty())
    return r;

  nlohmann::json orphan = doc;
  orphan[0]["Rules"][0]["After"] = "$1$.resolve($3$)";
  if (auto r = expect_rejection(orphan.dump(), "hole $3$"); !r.empty())
    return r;

  return "";
}

// Criterion: found = rewritten + covered + failed on plans that exercise all
// three outcomes.
std::string check_usage_accounting() {
  struct Probe {
    const char* label;
    const char* source;
    const char* root;
    ScopeKind scope;
    int found, rewritten, covered, failed;
  };
  const Probe probes[] = {
      {"all rewritten", kGoldenSource, "f", ScopeKind::File, 3, 3, 0, 0},
      {"partial failure",
       "package app;\n"
       "\n"
       "import java.io.File;\n"
       "\n"
       "class Half {\n"
       "  void go(File f) {\n"
       "    f.exists();\n"
       "    pick(f, probe());\n"
       "  }\n"
       "\n"
       "  void pick(File a, String b) {}\n"
       "  void pick(File a, int b) {}\n"
       "  String probe() { return null; }\n"
       "}\n",
       "f", ScopeKind::Local, 2, 1, 0, 1},
      {"covered by propagation",
       "package app;\n"
       "\n"
       "import java.io.File;\n"
       "\n"
       "class Chain {\n"
       "  void go(File f) {\n"
       "    File g = f;\n"
       "    g.exists();\n"
       "  }\n"
       "}\n",
       "f", ScopeKind::Local, 2, 1, 1, 0},
  };
  const TypeChangePattern* pattern = builtin_catalog().find_by_id(1);
  for (const Probe& probe : probes) {
    TempDir dir;
    const Project project =
        make_project(dir, {{"Probe.java", probe.source}});
    const MigrationPlan plan = plan_migration(
        project, find_decl(project, probe.root), *pattern, probe.scope);
    const int failed = static_cast<int>(plan.failed.size());
    if (plan.usages_rewritten + plan.usages_covered + failed !=
        plan.usages_found) {
      return std::string(probe.label) + ": accounting out of balance";
    }
    if (plan.usages_found != probe.found ||
        plan.usages_rewritten != probe.rewritten ||
        plan.usages_covered != probe.covered || failed != probe.failed) {
      return std::string(probe.label) + ": got found " +
             std::to_string(plan.usages_found) + ", rewritten " +
             std::to_string(plan.usages_rewritten) + ", covered " +
             std::to_string(plan.usages_covered) + ", failed " +
             std::to_string(failed);
    }
  }
  return "";
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<std::string()> run;
  };
  const std::vector<Criterion> criteria = {
      {"file-to-path field migration matches the golden bytes within 1 s",
       check_field_migration},
      {"inspection flags the discouraged type and its quick fix completes",
       check_inspection_quick_fix},
      {"the end-to-end scenario suite passes in full",
       check_scenarios},
      {"randomized property suites hold within the time budget",
       check_property_suites},
      {"the catalog schema accepts the published shape and names violations",
       check_catalog_contract},
      {"usage accounting balances across rewritten, covered, and failed",
       check_usage_accounting},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    std::string reason;
    try {
      reason = criterion.run();
    } catch (const std::exception& e) {
      reason = std::string("threw: ") + e.what();
    }
    if (reason.empty()) {
      std::printf("PASS: %s\n", criterion.name);
    } else {
      std::printf("FAIL: %s (%s)\n", criterion.name, flatten(reason).c_str());
      ++failures;
    }
  }
  return failures;
}
