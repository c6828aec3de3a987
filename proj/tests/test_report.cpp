#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "catalog.hpp"
#include "engine.hpp"
#include "modes.hpp"
#include "project.hpp"
#include "report.hpp"
#include "support.hpp"

using namespace retype;
using testsupport::find_decl;

namespace {

size_t count_of(const std::string& haystack, const std::string& needle) {
  size_t n = 0;
  for (size_t at = haystack.find(needle); at != std::string::npos;
       at = haystack.find(needle, at + needle.size())) {
    ++n;
  }
  return n;
}

std::string joined(const std::vector<std::string>& lines) {
  std::string out;
  for (const std::string& line : lines) out += line + "\n";
  return out;
}

// The one-parameter File fixture used across the rendering tests.
MigrationPlan disk_plan(const Project& project) {
  const TypeChangePattern* pattern = builtin_catalog().find_by_id(1);
  REQUIRE(pattern != nullptr);
  return plan_migration(project, find_decl(project, "f"), *pattern,
                        ScopeKind::Local);
}

Project disk_project() {
  return project_from_source("Disk.java",
                             "package app;\n"
                             "\n"
                             "import java.io.File;\n"
                             "\n"
                             "class Disk {\n"
                             "  void check(File f) {\n"
                             "    if (f.exists()) {\n"
                             "      log(1);\n"
                             "    }\n"
                             "  }\n"
                             "\n"
                             "  void log(int n) {}\n"
                             "}\n");
}

}  // namespace

TEST_CASE("a changed line diffs with three lines of context") {
  const std::string old_text = joined({"a", "b", "c", "d", "e", "f", "g"});
  const std::string new_text = joined({"a", "b", "c", "X", "e", "f", "g"});
  CHECK(unified_diff(old_text, new_text, "a/t", "b/t") ==
        "--- a/t\n"
        "+++ b/t\n"
        "@@ -1,7 +1,7 @@\n"
        " a\n"
        " b\n"
        " c\n"
        "-d\n"
        "+X\n"
        " e\n"
        " f\n"
        " g\n");
}

TEST_CASE("distant context is trimmed from hunks") {
  const std::string old_text = joined(
      {"l1", "l2", "l3", "l4", "l5", "l6", "l7", "l8", "l9"});
  const std::string new_text = joined(
      {"l1", "l2", "l3", "l4", "X5", "l6", "l7", "l8", "l9"});
  CHECK(unified_diff(old_text, new_text, "a/t", "b/t") ==
        "--- a/t\n"
        "+++ b/t\n"
        "@@ -2,7 +2,7 @@\n"
        " l2\n"
        " l3\n"
        " l4\n"
        "-l5\n"
        "+X5\n"
        " l6\n"
        " l7\n"
        " l8\n");
}

TEST_CASE("nearby changes merge into one hunk and distant ones split") {
  std::vector<std::string> base;
  for (int i = 1; i <= 15; ++i) base.push_back("l" + std::to_string(i));
  std::vector<std::string> close = base;
  close[4] = "X5";
  close[9] = "X10";  // four unchanged lines between the changes
  const std::string merged =
      unified_diff(joined(base), joined(close), "a/t", "b/t");
  CHECK(count_of(merged, "@@ ") == 1);
  CHECK(merged.find("-l5\n+X5\n") != std::string::npos);
  CHECK(merged.find("-l10\n+X10\n") != std::string::npos);

  std::vector<std::string> wide;
  for (int i = 1; i <= 20; ++i) wide.push_back("l" + std::to_string(i));
  std::vector<std::string> far = wide;
  far[4] = "X5";
  far[12] = "X13";  // seven unchanged lines between the changes
  const std::string split =
      unified_diff(joined(wide), joined(far), "a/t", "b/t");
  CHECK(count_of(split, "@@ ") == 2);
  CHECK(split.find("@@ -2,7 +2,7 @@\n") != std::string::npos);
  CHECK(split.find("@@ -10,7 +10,7 @@\n") != std::string::npos);
}

TEST_CASE("insertions and missing final newlines render faithfully") {
  CHECK(unified_diff("a\nb\n", "a\nx\nb\n", "a/t", "b/t") ==
        "--- a/t\n"
        "+++ b/t\n"
        "@@ -1,2 +1,3 @@\n"
        " a\n"
        "+x\n"
        " b\n");

  CHECK(unified_diff("a\nb", "a\nc", "a/t", "b/t") ==
        "--- a/t\n"
        "+++ b/t\n"
        "@@ -1,2 +1,2 @@\n"
        " a\n"
        "-b\n"
        "\\ No newline at end of file\n"
        "+c\n"
        "\\ No newline at end of file\n");

  CHECK(unified_diff("same\n", "same\n", "a/t", "b/t").empty());
}

TEST_CASE("path styles join or keep project-relative paths") {
  CHECK(PathStyle{"", false}.render("A.java") == "A.java");
  CHECK(PathStyle{".", false}.render("A.java") == "A.java");
  CHECK(PathStyle{"/work/proj", false}.render("src/A.java") ==
        "/work/proj/src/A.java");
  CHECK(PathStyle{"/work/proj", true}.render("src/A.java") == "src/A.java");
}

TEST_CASE("plan text reports counts edits and the usage trailer") {
  const Project project = disk_project();
  const MigrationPlan plan = disk_plan(project);
  CHECK(plan_report_text(project, plan, PathStyle{}) ==
        "pattern 1: java.io.File => java.nio.file.Path\n"
        "scope: local\n"
        "elements:\n"
        "  parameter f (Disk.check): java.io.File -> java.nio.file.Path\n"
        "edits: 2 (declarations: 1, rewrites: 1), import adjustments: 3\n"
        "  Disk.java:3:1 + import java.nio.file.Files;\n"
        "  Disk.java:3:1 + import java.nio.file.Path;\n"
        "  Disk.java:3:1 - import java.io.File;\n"
        "  Disk.java:6:14 declaration -> Path\n"
        "  Disk.java:7:9 rewrite -> Files.exists(f)\n"
        "failed usages: 0\n"
        "usages: found 1, rewritten 1, covered 0, failed 0\n");
}

TEST_CASE("plan json carries the same facts for machines") {
  const Project project = disk_project();
  const MigrationPlan plan = disk_plan(project);
  const nlohmann::json doc =
      nlohmann::json::parse(plan_report_json(project, plan, PathStyle{}));
  CHECK(doc["patternId"] == 1);
  CHECK(doc["from"] == "java.io.File");
  CHECK(doc["to"] == "java.nio.file.Path");
  CHECK(doc["scope"] == "local");
  REQUIRE(doc["elements"].size() == 1);
  CHECK(doc["elements"][0]["kind"] == "parameter");
  CHECK(doc["elements"][0]["name"] == "f");
  CHECK(doc["elements"][0]["container"] == "Disk.check");
  CHECK(doc["elements"][0]["file"] == "Disk.java");
  CHECK(doc["elements"][0]["oldType"] == "java.io.File");
  CHECK(doc["elements"][0]["newType"] == "java.nio.file.Path");
  CHECK(doc["elements"][0]["declarationEdit"] == true);
  CHECK(doc["edges"].empty());
  REQUIRE(doc["edits"].size() == 5);
  CHECK(doc["edits"][3]["kind"] == "declaration");
  CHECK(doc["edits"][3]["text"] == "Path");
  CHECK(doc["edits"][4]["kind"] == "rewrite");
  CHECK(doc["edits"][4]["text"] == "Files.exists(f)");
  CHECK(doc["failed"].empty());
  CHECK(doc["usages"]["found"] == 1);
  CHECK(doc["usages"]["rewritten"] == 1);
  CHECK(doc["usages"]["covered"] == 0);
  CHECK(doc["usages"]["failed"] == 0);
}

TEST_CASE("plan diffs show the rewritten file") {
  const Project project = disk_project();
  const MigrationPlan plan = disk_plan(project);
  const std::string diff = plan_diff(project, plan, PathStyle{});
  CHECK(diff.find("--- a/Disk.java\n+++ b/Disk.java\n") == 0);
  CHECK(diff.find("-import java.io.File;\n") != std::string::npos);
  CHECK(diff.find("+import java.nio.file.Files;\n") != std::string::npos);
  CHECK(diff.find("+import java.nio.file.Path;\n") != std::string::npos);
  CHECK(diff.find("-  void check(File f) {\n") != std::string::npos);
  CHECK(diff.find("+  void check(Path f) {\n") != std::string::npos);
  CHECK(diff.find("-    if (f.exists()) {\n") != std::string::npos);
  CHECK(diff.find("+    if (Files.exists(f)) {\n") != std::string::npos);
}

TEST_CASE("diagnostics render as text and as json lines") {
  Diagnostic d;
  d.file = "Validators.java";
  d.span = {0, 1};
  d.pos = {6, 11};
  d.pattern_id = 2;
  d.message = "Type Function<String, Boolean> can be replaced with "
              "Predicate<String>";
  const std::vector<Diagnostic> diags{d};

  CHECK(diagnostics_text(diags, PathStyle{}) ==
        "Validators.java:6:11: warning: Type Function<String, Boolean> can be "
        "replaced with Predicate<String> [pattern 2]\n");
  CHECK(diagnostics_text(diags, PathStyle{"/work", false})
            .find("/work/Validators.java:6:11: warning: ") == 0);

  const std::string lines = diagnostics_json_lines(diags, PathStyle{});
  REQUIRE(count_of(lines, "\n") == 1);
  const nlohmann::json line = nlohmann::json::parse(lines);
  CHECK(line["file"] == "Validators.java");
  CHECK(line["line"] == 6);
  CHECK(line["col"] == 11);
  CHECK(line["patternId"] == 2);
  CHECK(line["message"] == d.message);
  CHECK(line["fix"]["root"] == "Validators.java:6:11");
  CHECK(line["fix"]["pattern"] == 2);
}

TEST_CASE("suggestions print a ready-to-run command") {
  Suggestion s;
  s.kind = RootKind::Field;
  s.name = "data";
  s.container = "Store";
  s.pos = {6, 3};
  s.pattern_id = 1;
  s.old_type = "File";
  s.new_type = "Path";
  s.remaining_usages = 2;
  SuggestResult result;
  result.suggestions.push_back(s);

  CHECK(suggestions_text(result, "New.java", "") ==
        "New.java:6:3: field data (Store) changed File -> Path; pattern 1 can "
        "finish the migration (2 usage(s) to adapt)\n"
        "  run: retype apply --root New.java:6:3 --pattern 1 --scope file\n");
  CHECK(suggestions_text(result, "New.java", " --catalog rules.json")
            .find("--scope file --catalog rules.json\n") != std::string::npos);

  const nlohmann::json line =
      nlohmann::json::parse(suggestions_json_lines(result, "New.java"));
  CHECK(line["file"] == "New.java");
  CHECK(line["line"] == 6);
  CHECK(line["col"] == 3);
  CHECK(line["kind"] == "field");
  CHECK(line["name"] == "data");
  CHECK(line["container"] == "Store");
  CHECK(line["patternId"] == 1);
  CHECK(line["oldType"] == "File");
  CHECK(line["newType"] == "Path");
  CHECK(line["remainingUsages"] == 2);
  CHECK(line["apply"] ==
        "retype apply --root New.java:6:3 --pattern 1 --scope file");
}
