// catalog.hpp - The type-change pattern catalog: a JSON document listing,
// per pattern, the source and target types, a UI priority, a surfacing
// mode, and the ordered rewrite rules. A built-in catalog ships with the
// library; a project may override it with its own file.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ast.hpp"
#include "tmpl.hpp"

namespace retype {

// How a pattern is surfaced: Classic is invoked explicitly, Inspection is
// flagged by the lint pass, SuggestedRefactoring fires after a manual type
// edit (safe only for interchangeable type pairs).
enum class PatternMode { Classic, SuggestedRefactoring, Inspection };

// The catalog's label for a mode, e.g. "Suggested Refactoring".
const char* pattern_mode_label(PatternMode mode);
std::optional<PatternMode> pattern_mode_from_label(std::string_view label);

struct RewriteRule {
  Template before;
  Template after;
  int index = 0;  // position within the pattern's rule list
};

struct TypeChangePattern {
  TypeRef from;
  TypeRef to;
  int id = 0;
  int priority = 0;  // lower = shown first
  PatternMode mode = PatternMode::Classic;
  std::vector<RewriteRule> rules;
};

struct Catalog {
  std::vector<TypeChangePattern> patterns;

  [[nodiscard]] const TypeChangePattern* find_by_id(int id) const;
};

// Bindings for single-uppercase-letter type variables (`T` in
// `java.util.function.Function<T, java.lang.Boolean>`).
using TypeVarBindings = std::map<std::string, TypeRef>;

bool is_type_variable(const TypeRef& type);

// Matches a catalog type against a concrete declared type. Type variables
// bind (consistently); a catalog type written without type arguments
// matches any parameterization of the same class.
bool unify_types(const TypeRef& pattern, const TypeRef& concrete,
                 TypeVarBindings& bindings);

// Replaces type variables by their bindings; unbound variables stay.
TypeRef instantiate_type(const TypeRef& pattern,
                         const TypeVarBindings& bindings);

// Parses and validates a catalog document (top-level JSON array of pattern
// objects with keys From/To/ID/Priority/Mode/Rules, rules with
// Before/After). Throws Error(Schema) naming the offending element; never
// returns a partially-valid catalog.
Catalog load_catalog(const std::string& json_text);
Catalog load_catalog_file(const std::string& path);

// Serializes a catalog back to its document form; load(dump(c)) == c.
std::string dump_catalog(const Catalog& catalog);

// The embedded default catalog, used when no catalog file is given.
const Catalog& builtin_catalog();

// Patterns whose from-type matches `type`, sorted by ascending priority,
// ties by ascending id.
std::vector<const TypeChangePattern*> patterns_for_source_type(
    const Catalog& catalog, const TypeRef& type);

}  // namespace retype
