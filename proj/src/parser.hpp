// parser.hpp - Recursive-descent parser for the supported Java subset.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "ast.hpp"

namespace retype {

// Parses a whole .java file. Unsupported constructs inside method bodies
// become Opaque statement nodes (with NameRef children for scanning);
// malformed declarations throw SyntaxError(ErrorCode::Parse).
Ast parse_compilation_unit(std::string_view source);

// Parses a single expression covering the whole input. Used by the
// template language; `$n$` atoms arrive here as ordinary identifiers.
Ast parse_expression_text(std::string_view source);

// Parses a standalone type reference, e.g. a catalog's From/To value.
// Simple names resolve through the built-in import table only.
TypeRef parse_type_text(std::string_view source);

// Simple-name -> fully-qualified-name resolution for one file: explicit
// imports override the built-in table; wildcard imports resolve names in
// their package only through the built-in table's known members.
class ImportEnv {
 public:
  ImportEnv() = default;
  explicit ImportEnv(const Ast& ast);

  [[nodiscard]] std::optional<std::string> resolve(
      const std::string& simple) const;
  [[nodiscard]] bool has_explicit_import(const std::string& fqn) const;
  [[nodiscard]] bool wildcard_covers(const std::string& fqn) const;

 private:
  std::map<std::string, std::string> explicit_imports_;  // simple -> fqn
  std::vector<std::string> wildcard_packages_;
};

// Fixed table mapping simple names of common JDK types to fully-qualified
// names (java.lang, java.util, java.util.function, java.io, java.nio.file,
// java.util.regex, java.time).
const std::map<std::string, std::string>& builtin_import_table();

}  // namespace retype
