// catalog.cpp - Catalog loading, validation, and type unification.
#include "catalog.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

#include "error.hpp"
#include "parser.hpp"
#include "util.hpp"

namespace retype {

namespace {

// ordered_json keeps document key order (From, To, ID, ...) when dumping.
using json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& where,
                               const std::string& message) {
  throw_error(ErrorCode::Schema, where + ": " + message);
}

void require_keys(const json& object, const std::vector<std::string>& keys,
                  const std::string& where) {
  for (const std::string& key : keys) {
    if (!object.contains(key)) schema_error(where, "missing key " + key);
  }
  for (const auto& [key, value] : object.items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      schema_error(where, "unknown key " + key);
    }
  }
}

int require_positive_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) schema_error(where, "expected an integer");
  const int n = value.get<int>();
  if (n < 1) schema_error(where, "expected a positive integer");
  return n;
}

std::string require_string(const json& value, const std::string& where) {
  if (!value.is_string()) schema_error(where, "expected a string");
  return value.get<std::string>();
}

TypeRef parse_catalog_type(const std::string& text, const std::string& where) {
  try {
    return parse_type_text(text);
  } catch (const Error& e) {
    schema_error(where, "bad type `" + text + "`: " + e.what());
  }
}

Template parse_catalog_template(const std::string& text,
                                const std::string& where) {
  try {
    return parse_template(text);
  } catch (const Error& e) {
    schema_error(where, e.what());
  }
}

TypeChangePattern load_pattern(const json& object, const std::string& where) {
  if (!object.is_object()) schema_error(where, "expected an object");
  require_keys(object, {"From", "To", "ID", "Priority", "Mode", "Rules"},
               where);
  TypeChangePattern pattern;
  pattern.from = parse_catalog_type(require_string(object.at("From"), where + ".From"),
                                    where + ".From");
  pattern.to = parse_catalog_type(require_string(object.at("To"), where + ".To"),
                                  where + ".To");
  pattern.id = require_positive_int(object.at("ID"), where + ".ID");
  pattern.priority =
      require_positive_int(object.at("Priority"), where + ".Priority");
  const std::string mode_label =
      require_string(object.at("Mode"), where + ".Mode");
  const std::optional<PatternMode> mode = pattern_mode_from_label(mode_label);
  if (!mode) {
    schema_error(where + ".Mode", "unknown mode `" + mode_label + "`");
  }
  pattern.mode = *mode;
  if (pattern.from == pattern.to) {
    schema_error(where, "From and To name the same type");
  }
  const json& rules = object.at("Rules");
  if (!rules.is_array()) schema_error(where + ".Rules", "expected an array");
  for (size_t i = 0; i < rules.size(); ++i) {
    const std::string rule_where = "pattern " + std::to_string(pattern.id) +
                                   " rule " + std::to_string(i);
    const json& rule_object = rules[i];
    if (!rule_object.is_object()) schema_error(rule_where, "expected an object");
    require_keys(rule_object, {"Before", "After"}, rule_where);
    RewriteRule rule;
    rule.before = parse_catalog_template(
        require_string(rule_object.at("Before"), rule_where + ".Before"),
        rule_where + ".Before");
    rule.after = parse_catalog_template(
        require_string(rule_object.at("After"), rule_where + ".After"),
        rule_where + ".After");
    rule.index = static_cast<int>(i);
    for (const HoleSite& hole : rule.after.holes) {
      if (!rule.before.has_hole(hole.index)) {
        schema_error(rule_where, "after-template hole $" +
                                     std::to_string(hole.index) +
                                     "$ is not bound by the before-template");
      }
    }
    pattern.rules.push_back(std::move(rule));
  }
  return pattern;
}

// The shipped defaults: the File->Path pattern with its three published
// rules, plus hand-written patterns covering generics (Function->Predicate),
// both Classic-only flows, and an identity-rule migration.
constexpr std::string_view kBuiltinCatalogJson = R"json([
  {
    "From": "java.io.File",
    "To": "java.nio.file.Path",
    "ID": 1,
    "Priority": 2,
    "Mode": "Suggested Refactoring",
    "Rules": [
      {
        "Before": "new File($1$, $2$)",
        "After": "$1$.resolve($2$)"
      },
      {
        "Before": "$1$.exists()",
        "After": "Files.exists($1$)"
      },
      {
        "Before": "$1$.toPath()",
        "After": "$1$"
      }
    ]
  },
  {
    "From": "java.util.function.Function<T, java.lang.Boolean>",
    "To": "java.util.function.Predicate<T>",
    "ID": 2,
    "Priority": 1,
    "Mode": "Inspection",
    "Rules": [
      {
        "Before": "$1$.apply($2$)",
        "After": "$1$.test($2$)"
      }
    ]
  },
  {
    "From": "java.lang.String",
    "To": "java.util.regex.Pattern",
    "ID": 3,
    "Priority": 3,
    "Mode": "Classic",
    "Rules": [
      {
        "Before": "Pattern.compile($1$)",
        "After": "$1$"
      },
      {
        "Before": "$2$.matches($1$)",
        "After": "$1$.matcher($2$).matches()"
      }
    ]
  },
  {
    "From": "java.util.Date",
    "To": "java.time.LocalDate",
    "ID": 4,
    "Priority": 4,
    "Mode": "Suggested Refactoring",
    "Rules": [
      {
        "Before": "$1$ = new Date()",
        "After": "$1$ = LocalDate.now()"
      },
      {
        "Before": "$1$.before($2$)",
        "After": "$1$.isBefore($2$)"
      },
      {
        "Before": "$1$.after($2$)",
        "After": "$1$.isAfter($2$)"
      }
    ]
  },
  {
    "From": "java.lang.StringBuffer",
    "To": "java.lang.StringBuilder",
    "ID": 5,
    "Priority": 5,
    "Mode": "Classic",
    "Rules": [
      {
        "Before": "$1$",
        "After": "$1$"
      }
    ]
  }
])json";

}  // namespace

const char* pattern_mode_label(PatternMode mode) {
  switch (mode) {
    case PatternMode::Classic:
      return "Classic";
    case PatternMode::SuggestedRefactoring:
      return "Suggested Refactoring";
    case PatternMode::Inspection:
      return "Inspection";
  }
  return "Classic";
}

std::optional<PatternMode> pattern_mode_from_label(std::string_view label) {
  if (label == "Classic") return PatternMode::Classic;
  if (label == "Suggested Refactoring") return PatternMode::SuggestedRefactoring;
  if (label == "Inspection") return PatternMode::Inspection;
  return std::nullopt;
}

const TypeChangePattern* Catalog::find_by_id(int id) const {
  for (const TypeChangePattern& pattern : patterns) {
    if (pattern.id == id) return &pattern;
  }
  return nullptr;
}

bool is_type_variable(const TypeRef& type) {
  return type.qualified.size() == 1 && type.args.empty() &&
         std::isupper(static_cast<unsigned char>(type.qualified[0]));
}

bool unify_types(const TypeRef& pattern, const TypeRef& concrete,
                 TypeVarBindings& bindings) {
  if (is_type_variable(pattern)) {
    const auto [it, fresh] = bindings.emplace(pattern.qualified, concrete);
    return fresh || it->second == concrete;
  }
  if (pattern.qualified != concrete.qualified) return false;
  if (pattern.args.empty()) return true;  // bare type matches any arguments
  if (pattern.args.size() != concrete.args.size()) return false;
  for (size_t i = 0; i < pattern.args.size(); ++i) {
    if (!unify_types(pattern.args[i], concrete.args[i], bindings)) {
      return false;
    }
  }
  return true;
}

TypeRef instantiate_type(const TypeRef& pattern,
                         const TypeVarBindings& bindings) {
  if (is_type_variable(pattern)) {
    const auto it = bindings.find(pattern.qualified);
    return it == bindings.end() ? pattern : it->second;
  }
  TypeRef out;
  out.raw = pattern.raw;
  out.qualified = pattern.qualified;
  for (const TypeRef& arg : pattern.args) {
    out.args.push_back(instantiate_type(arg, bindings));
  }
  return out;
}

Catalog load_catalog(const std::string& json_text) {
  json document;
  try {
    document = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error("catalog", std::string("invalid JSON: ") + e.what());
  }
  if (!document.is_array()) {
    schema_error("catalog", "expected a top-level array of patterns");
  }
  Catalog catalog;
  for (size_t i = 0; i < document.size(); ++i) {
    TypeChangePattern pattern =
        load_pattern(document[i], "patterns[" + std::to_string(i) + "]");
    for (const TypeChangePattern& seen : catalog.patterns) {
      if (seen.id == pattern.id) {
        schema_error("patterns[" + std::to_string(i) + "].ID",
                     "duplicate id " + std::to_string(pattern.id));
      }
    }
    catalog.patterns.push_back(std::move(pattern));
  }
  return catalog;
}

Catalog load_catalog_file(const std::string& path) {
  return load_catalog(read_file(path));
}

std::string dump_catalog(const Catalog& catalog) {
  json document = json::array();
  for (const TypeChangePattern& pattern : catalog.patterns) {
    json rules = json::array();
    for (const RewriteRule& rule : pattern.rules) {
      rules.push_back(
          {{"Before", rule.before.text}, {"After", rule.after.text}});
    }
    json object;
    object["From"] = pattern.from.display();
    object["To"] = pattern.to.display();
    object["ID"] = pattern.id;
    object["Priority"] = pattern.priority;
    object["Mode"] = pattern_mode_label(pattern.mode);
    object["Rules"] = std::move(rules);
    document.push_back(std::move(object));
  }
  return document.dump(2) + "\n";
}

const Catalog& builtin_catalog() {
  static const Catalog catalog =
      load_catalog(std::string(kBuiltinCatalogJson));
  return catalog;
}

std::vector<const TypeChangePattern*> patterns_for_source_type(
    const Catalog& catalog, const TypeRef& type) {
  std::vector<const TypeChangePattern*> out;
  for (const TypeChangePattern& pattern : catalog.patterns) {
    TypeVarBindings bindings;
    if (unify_types(pattern.from, type, bindings)) out.push_back(&pattern);
  }
  std::sort(out.begin(), out.end(),
            [](const TypeChangePattern* a, const TypeChangePattern* b) {
              return a->priority != b->priority ? a->priority < b->priority
                                                : a->id < b->id;
            });
  return out;
}

}  // namespace retype
