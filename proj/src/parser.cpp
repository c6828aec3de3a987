// parser.cpp
#include "parser.hpp"

#include <algorithm>
#include <cassert>

#include "error.hpp"

namespace retype {

namespace {

const std::map<std::string, std::string>& builtin_table_impl() {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> t;
    auto add = [&t](const char* pkg, std::initializer_list<const char*> names) {
      for (const char* n : names) t[n] = std::string(pkg) + "." + n;
    };
    add("java.lang",
        {"Object", "String", "Boolean", "Integer", "Long", "Short", "Byte",
         "Double", "Float", "Character", "Number", "Void", "Math", "System",
         "Thread", "Runnable", "Exception", "RuntimeException", "Throwable",
         "Error", "StringBuilder", "StringBuffer", "CharSequence",
         "Comparable", "Iterable", "Class"});
    add("java.util",
        {"List", "ArrayList", "LinkedList", "Map", "HashMap", "TreeMap",
         "Set", "HashSet", "TreeSet", "Collection", "Collections", "Arrays",
         "Objects", "Optional", "Iterator", "Queue", "Deque", "ArrayDeque",
         "Date", "Calendar", "Random", "Scanner", "UUID", "Comparator"});
    add("java.util.function",
        {"Function", "Predicate", "Supplier", "Consumer", "BiFunction",
         "BiConsumer", "BiPredicate", "UnaryOperator", "BinaryOperator"});
    add("java.io",
        {"File", "InputStream", "OutputStream", "Reader", "Writer",
         "BufferedReader", "BufferedWriter", "FileReader", "FileWriter",
         "IOException", "PrintStream", "PrintWriter", "Closeable"});
    add("java.nio.file", {"Path", "Paths", "Files", "FileSystems"});
    add("java.util.regex", {"Pattern", "Matcher"});
    add("java.time",
        {"LocalDate", "LocalTime", "LocalDateTime", "Instant", "Duration",
         "Period", "ZonedDateTime", "ZoneId", "Clock"});
    return t;
  }();
  return table;
}

bool is_primitive_type_keyword(const std::string& text) {
  return text == "int" || text == "long" || text == "short" || text == "byte" ||
         text == "char" || text == "float" || text == "double" ||
         text == "boolean" || text == "void";
}

bool is_modifier_keyword(const std::string& text) {
  return text == "public" || text == "private" || text == "protected" ||
         text == "static" || text == "final" || text == "abstract" ||
         text == "native" || text == "synchronized" || text == "transient" ||
         text == "volatile" || text == "strictfp" || text == "default";
}

bool is_assign_op(const std::string& text) {
  return text == "=" || text == "+=" || text == "-=" || text == "*=" ||
         text == "/=" || text == "%=" || text == "&=" || text == "|=" ||
         text == "^=" || text == "<<=" || text == ">>=" || text == ">>>=";
}

// Statements we deliberately do not model; they become Opaque spans.
bool starts_opaque_statement(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  return t.text == "do" || t.text == "switch" || t.text == "try" ||
         t.text == "synchronized" || t.text == "throw" || t.text == "break" ||
         t.text == "continue" || t.text == "assert" || t.text == "yield" ||
         t.text == "var";
}

class Parser {
 public:
  Parser(std::string_view source, std::vector<Token> tokens)
      : src_(source), toks_(std::move(tokens)) {}

  Ast parse_unit() {
    const NodeId unit = add(NodeKind::CompilationUnit,
                            {0, static_cast<uint32_t>(src_.size())});
    skip_annotations();
    if (at_keyword("package")) parse_package(unit);
    while (at_keyword("import")) parse_import(unit);
    while (!eof()) {
      skip_annotations();
      if (eof()) break;
      attach(unit, parse_class());
    }
    ast_.nodes[unit].span = {0, static_cast<uint32_t>(src_.size())};
    ast_.tokens = std::move(toks_);
    return std::move(ast_);
  }

  Ast parse_expr() {
    if (eof()) fail("expected expression");
    const NodeId e = parse_expression();
    if (!eof()) fail("unexpected trailing tokens after expression");
    ast_.root = e;
    ast_.tokens = std::move(toks_);
    return std::move(ast_);
  }

  TypeRef parse_lone_type() {
    if (eof()) fail("expected type");
    const NodeId node = parse_type();
    if (!eof()) fail("unexpected trailing tokens after type");
    return ast_.types[static_cast<size_t>(ast_.nodes[node].type_index)];
  }

 private:
  std::string_view src_;
  Ast ast_;
  std::vector<Token> toks_;
  size_t pos_ = 0;
  int pending_gt_ = 0;       // split `>>`/`>>>` while closing type args
  uint32_t pending_gt_end_ = 0;
  std::map<std::string, std::string> explicit_imports_;

  // ---- token cursor ---------------------------------------------------

  [[nodiscard]] bool eof() const { return pos_ >= toks_.size(); }
  [[nodiscard]] const Token& peek(size_t k = 0) const {
    static const Token sentinel{TokenKind::Punctuation, "", {0, 0}};
    return pos_ + k < toks_.size() ? toks_[pos_ + k] : sentinel;
  }
  const Token& advance() { return toks_[pos_++]; }

  [[nodiscard]] bool at(const std::string& text) const {
    return !eof() && peek().text == text;
  }
  [[nodiscard]] bool at_keyword(const std::string& kw) const {
    return !eof() && peek().kind == TokenKind::Keyword && peek().text == kw;
  }
  [[nodiscard]] bool at_identifier() const {
    return !eof() && peek().kind == TokenKind::Identifier;
  }

  bool accept(const std::string& text) {
    if (at(text)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const std::string& text) {
    if (!accept(text))
      fail("expected '" + text + "', found '" +
           (eof() ? std::string("<eof>") : peek().text) + "'");
  }

  std::string expect_identifier(const char* what) {
    if (!at_identifier()) fail(std::string("expected ") + what);
    return advance().text;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    const uint32_t off = eof() ? static_cast<uint32_t>(src_.size())
                               : peek().span.begin;
    throw SyntaxError(ErrorCode::Parse, msg, off);
  }

  [[nodiscard]] uint32_t here() const {
    return eof() ? static_cast<uint32_t>(src_.size()) : peek().span.begin;
  }
  [[nodiscard]] uint32_t prev_end() const {
    return pos_ == 0 ? 0 : toks_[pos_ - 1].span.end;
  }

  // ---- node arena ------------------------------------------------------

  NodeId add(NodeKind kind, Span span = {}) {
    AstNode n;
    n.kind = kind;
    n.span = span;
    ast_.nodes.push_back(std::move(n));
    const NodeId id = static_cast<NodeId>(ast_.nodes.size() - 1);
    if (kind == NodeKind::CompilationUnit && ast_.root == kNoNode)
      ast_.root = id;
    return id;
  }

  void attach(NodeId parent, NodeId child) {
    ast_.nodes[parent].children.push_back(child);
    ast_.nodes[child].parent = parent;
  }

  // Span end defaults to the end of the last consumed token.
  void finish(NodeId id) { ast_.nodes[id].span.end = prev_end(); }

  void set_span(NodeId id, uint32_t begin, uint32_t end) {
    ast_.nodes[id].span = {begin, end};
  }

  // Savepoints let speculative parses roll back both the cursor and any
  // arena nodes they created, so no orphan nodes survive backtracking.
  struct Savepoint {
    size_t pos;
    size_t nodes;
    size_t types;
  };

  [[nodiscard]] Savepoint save() const {
    return {pos_, ast_.nodes.size(), ast_.types.size()};
  }

  void rollback(const Savepoint& sp) {
    pos_ = sp.pos;
    ast_.nodes.resize(sp.nodes);
    ast_.types.resize(sp.types);
    pending_gt_ = 0;
  }

  // ---- trivia-level skips ---------------------------------------------

  void skip_annotations() {
    while (at("@")) {
      advance();
      expect_identifier("annotation name");
      while (accept(".")) expect_identifier("annotation name");
      if (at("(")) skip_balanced_parens();
    }
  }

  void skip_modifiers() {
    while (!eof()) {
      if (at("@")) {
        skip_annotations();
        continue;
      }
      if (peek().kind == TokenKind::Keyword && is_modifier_keyword(peek().text)) {
        advance();
        continue;
      }
      break;
    }
  }

  void skip_balanced_parens() {
    expect("(");
    int depth = 1;
    while (!eof() && depth > 0) {
      if (at("(")) ++depth;
      if (at(")")) --depth;
      advance();
    }
    if (depth != 0) fail("unbalanced parentheses");
  }

  // Skips `<...>` type parameter lists on classes and methods.
  void skip_type_params() {
    if (!at("<")) return;
    advance();
    int depth = 1;
    while (!eof() && depth > 0) {
      const std::string& t = peek().text;
      if (t == "<") ++depth;
      else if (t == ">") --depth;
      else if (t == ">>") depth -= 2;
      else if (t == ">>>") depth -= 3;
      advance();
    }
    if (depth < 0) fail("unbalanced type parameter list");
  }

  // ---- declarations ----------------------------------------------------

  void parse_package(NodeId unit) {
    const uint32_t begin = here();
    expect("package");
    std::string name = expect_identifier("package name");
    while (accept(".")) name += "." + expect_identifier("package name");
    expect(";");
    const NodeId pkg = add(NodeKind::PackageDecl, {begin, prev_end()});
    ast_.nodes[pkg].text = std::move(name);
    attach(unit, pkg);
  }

  void parse_import(NodeId unit) {
    const uint32_t begin = here();
    expect("import");
    accept("static");
    std::string name = expect_identifier("import name");
    bool wildcard = false;
    while (accept(".")) {
      if (accept("*")) {
        wildcard = true;
        name += ".*";
        break;
      }
      name += "." + expect_identifier("import name");
    }
    expect(";");
    const NodeId imp = add(NodeKind::ImportDecl, {begin, prev_end()});
    ast_.nodes[imp].text = name;
    if (wildcard) ast_.nodes[imp].aux |= kAuxWildcardImport;
    attach(unit, imp);
    if (!wildcard) {
      const size_t dot = name.rfind('.');
      const std::string simple =
          dot == std::string::npos ? name : name.substr(dot + 1);
      explicit_imports_[simple] = name;
    }
  }

  NodeId parse_class() {
    const uint32_t begin = here();
    skip_modifiers();
    if (!at_keyword("class") && !at_keyword("interface"))
      fail("expected class or interface declaration");
    advance();
    const std::string name = expect_identifier("class name");
    const NodeId cls = add(NodeKind::ClassDecl, {begin, 0});
    ast_.nodes[cls].text = name;
    skip_type_params();
    if (accept("extends")) skip_type_list();
    if (accept("implements")) skip_type_list();
    expect("{");
    while (!eof() && !at("}")) attach(cls, parse_member(name));
    expect("}");
    finish(cls);
    return cls;
  }

  // Consumes `extends`/`implements`/`throws` type lists without keeping
  // the parsed nodes in the arena.
  void skip_type_list() {
    const size_t nodes_mark = ast_.nodes.size();
    const size_t types_mark = ast_.types.size();
    parse_type();
    while (accept(",")) parse_type();
    ast_.nodes.resize(nodes_mark);
    ast_.types.resize(types_mark);
  }

  NodeId parse_member(const std::string& class_name) {
    const uint32_t begin = here();
    skip_modifiers();
    // Static / instance initializer block: keep as an opaque span.
    if (at("{")) return opaque_from(begin);
    skip_type_params();
    // Constructor: name matching the class, directly followed by `(`.
    if (at_identifier() && peek().text == class_name && peek(1).text == "(") {
      const std::string name = advance().text;
      return parse_method_rest(begin, name, kNoNode);
    }
    const NodeId type = parse_type();
    const std::string name = expect_identifier("member name");
    if (at("(")) return parse_method_rest(begin, name, type);
    // Field with a single declarator.
    const NodeId field = add(NodeKind::FieldDecl, {begin, 0});
    ast_.nodes[field].text = name;
    attach(field, type);
    if (accept("=")) attach(field, parse_expression());
    expect(";");
    finish(field);
    return field;
  }

  NodeId parse_method_rest(uint32_t begin, const std::string& name,
                           NodeId return_type) {
    const NodeId method = add(NodeKind::MethodDecl, {begin, 0});
    ast_.nodes[method].text = name;
    if (return_type != kNoNode) attach(method, return_type);
    expect("(");
    if (!at(")")) {
      attach(method, parse_param());
      while (accept(",")) attach(method, parse_param());
    }
    expect(")");
    if (accept("throws")) skip_type_list();
    if (at("{"))
      attach(method, parse_block());
    else
      expect(";");  // abstract/interface method
    finish(method);
    return method;
  }

  NodeId parse_param() {
    const uint32_t begin = here();
    skip_annotations();
    while (at_keyword("final")) advance();
    const NodeId type = parse_type();
    const std::string name = expect_identifier("parameter name");
    const NodeId param = add(NodeKind::Param, {begin, prev_end()});
    ast_.nodes[param].text = name;
    attach(param, type);
    return param;
  }

  // ---- types -----------------------------------------------------------

  // Parses a type reference, producing both the TypeRefNode (with arg
  // children) and the structured TypeRef in the type table.
  NodeId parse_type() {
    TypeRef structured;
    const NodeId node = parse_type_inner(structured);
    ast_.types.push_back(std::move(structured));
    ast_.nodes[node].type_index = static_cast<int32_t>(ast_.types.size() - 1);
    return node;
  }

  NodeId parse_type_inner(TypeRef& out) {
    const uint32_t begin = here();
    std::string written;
    if (!eof() && peek().kind == TokenKind::Keyword &&
        is_primitive_type_keyword(peek().text)) {
      written = advance().text;
      out.qualified = written;
    } else {
      written = expect_identifier("type name");
      bool dotted = false;
      while (at(".") && peek(1).kind == TokenKind::Identifier) {
        advance();
        written += "." + advance().text;
        dotted = true;
      }
      out.qualified = dotted ? written : resolve_simple_type(written);
    }
    const NodeId node = add(NodeKind::TypeRefNode, {begin, 0});
    if (at("<")) {
      advance();
      if (!try_consume_gt()) {  // `<>` diamond keeps zero args
        while (true) {
          TypeRef arg;
          const NodeId arg_node = parse_type_inner(arg);
          ast_.types.push_back(arg);
          ast_.nodes[arg_node].type_index =
              static_cast<int32_t>(ast_.types.size() - 1);
          attach(node, arg_node);
          out.args.push_back(std::move(arg));
          if (accept(",")) continue;
          if (!try_consume_gt()) fail("expected '>' or ',' in type arguments");
          break;
        }
      }
    }
    uint32_t end = pending_gt_ > 0 ? pending_gt_end_ : prev_end();
    while (pending_gt_ == 0 && at("[") && peek(1).text == "]") {
      advance();
      advance();
      out.qualified += "[]";
      end = prev_end();
    }
    set_span(node, begin, end);
    out.raw = std::string(src_.substr(begin, end - begin));
    ast_.nodes[node].text = out.raw;
    return node;
  }

  // Consumes one `>` of a possibly-fused `>`/`>>`/`>>>` token.
  bool try_consume_gt() {
    if (pending_gt_ > 0) {
      --pending_gt_;
      ++pending_gt_end_;
      return true;
    }
    if (at(">")) {
      advance();
      return true;
    }
    if (at(">>") || at(">>>")) {
      const Token& t = advance();
      pending_gt_ = static_cast<int>(t.text.size()) - 1;
      pending_gt_end_ = t.span.begin + 1;
      return true;
    }
    return false;
  }

  std::string resolve_simple_type(const std::string& simple) {
    const auto it = explicit_imports_.find(simple);
    if (it != explicit_imports_.end()) return it->second;
    const auto& builtin = builtin_table_impl();
    const auto bit = builtin.find(simple);
    if (bit != builtin.end()) return bit->second;
    return simple;
  }

  // ---- statements ------------------------------------------------------

  NodeId parse_block() {
    const uint32_t begin = here();
    expect("{");
    const NodeId block = add(NodeKind::Block, {begin, 0});
    while (!eof() && !at("}")) attach(block, parse_statement());
    expect("}");
    finish(block);
    return block;
  }

  NodeId parse_statement() {
    const uint32_t begin = here();
    if (eof()) fail("expected statement");
    if (starts_opaque_statement(peek())) return opaque_from(begin);
    const Savepoint sp = save();
    try {
      return parse_statement_strict();
    } catch (const SyntaxError&) {
      rollback(sp);
      return opaque_from(begin);
    }
  }

  NodeId parse_statement_strict() {
    const uint32_t begin = here();
    if (at("{")) return parse_block();
    if (at(";")) {  // empty statement
      advance();
      return add(NodeKind::Opaque, {begin, prev_end()});
    }
    if (at_keyword("if")) return parse_if();
    if (at_keyword("while")) return parse_while();
    if (at_keyword("for")) return parse_for();
    if (at_keyword("return")) return parse_return();
    // Local variable declaration, detected by backtracking.
    if (const NodeId local = try_parse_local_decl(); local != kNoNode)
      return local;
    const NodeId stmt = add(NodeKind::ExprStmt, {begin, 0});
    attach(stmt, parse_expression());
    expect(";");
    finish(stmt);
    return stmt;
  }

  NodeId try_parse_local_decl() {
    const Savepoint sp = save();
    const uint32_t begin = here();
    try {
      while (at_keyword("final")) advance();
      if (eof() || (peek().kind != TokenKind::Identifier &&
                    !(peek().kind == TokenKind::Keyword &&
                      is_primitive_type_keyword(peek().text))))
        fail("not a declaration");
      const NodeId type = parse_type();
      if (!at_identifier()) fail("not a declaration");
      const std::string name = advance().text;
      if (!at("=") && !at(";")) fail("not a declaration");
      const NodeId local = add(NodeKind::LocalVarDecl, {begin, 0});
      ast_.nodes[local].text = name;
      attach(local, type);
      if (accept("=")) attach(local, parse_expression());
      expect(";");
      finish(local);
      return local;
    } catch (const SyntaxError&) {
      rollback(sp);
      return kNoNode;
    }
  }

  NodeId parse_if() {
    const uint32_t begin = here();
    expect("if");
    expect("(");
    const NodeId stmt = add(NodeKind::If, {begin, 0});
    attach(stmt, parse_expression());
    expect(")");
    attach(stmt, parse_statement());
    if (accept("else")) attach(stmt, parse_statement());
    finish(stmt);
    return stmt;
  }

  NodeId parse_while() {
    const uint32_t begin = here();
    expect("while");
    expect("(");
    const NodeId stmt = add(NodeKind::While, {begin, 0});
    attach(stmt, parse_expression());
    expect(")");
    attach(stmt, parse_statement());
    finish(stmt);
    return stmt;
  }

  NodeId parse_for() {
    const uint32_t begin = here();
    expect("for");
    expect("(");
    const NodeId stmt = add(NodeKind::For, {begin, 0});
    // Enhanced for header: `[final] Type name : expr`. Probe without
    // attaching anything so the classic form can be retried cleanly.
    const Savepoint sp = save();
    bool enhanced = false;
    try {
      while (at_keyword("final")) advance();
      const uint32_t var_begin = here();
      const NodeId type = parse_type();
      if (at_identifier() && peek(1).text == ":") {
        const Token name = advance();
        advance();  // ':'
        const NodeId var = add(NodeKind::LocalVarDecl,
                               {var_begin, name.span.end});
        ast_.nodes[var].text = name.text;
        attach(var, type);
        attach(stmt, var);
        ast_.nodes[stmt].aux |= kAuxForEach;
        enhanced = true;
      }
    } catch (const SyntaxError&) {
      enhanced = false;
    }
    if (enhanced) {
      attach(stmt, parse_expression());  // the iterable
    } else {
      rollback(sp);
      // Classic for: `init; cond; update`.
      if (!accept(";")) {
        if (const NodeId local = try_parse_local_decl(); local != kNoNode) {
          attach(stmt, local);
        } else {
          const uint32_t init_begin = here();
          const NodeId init = add(NodeKind::ExprStmt, {init_begin, 0});
          attach(init, parse_expression());
          expect(";");
          finish(init);
          attach(stmt, init);
        }
      }
      if (!at(";")) attach(stmt, parse_expression());
      expect(";");
      if (!at(")")) attach(stmt, parse_expression());
    }
    expect(")");
    attach(stmt, parse_statement());
    finish(stmt);
    return stmt;
  }

  NodeId parse_return() {
    const uint32_t begin = here();
    expect("return");
    const NodeId stmt = add(NodeKind::Return, {begin, 0});
    if (!at(";")) attach(stmt, parse_expression());
    expect(";");
    finish(stmt);
    return stmt;
  }

  // Skips one unsupported statement and records its identifier tokens as
  // NameRef children so reference scanning still sees them.
  NodeId opaque_from(uint32_t begin) {
    const size_t start_pos = pos_;
    int depth = 0;       // (), [] nesting
    int braces = 0;      // {} nesting
    bool progressed = false;
    while (!eof()) {
      const std::string& t = peek().text;
      if (t == "}" && braces == 0) break;
      advance();
      progressed = true;
      if (t == "(" || t == "[") ++depth;
      else if (t == ")" || t == "]") --depth;
      else if (t == "{") ++braces;
      else if (t == "}") {
        --braces;
        if (braces == 0 && depth == 0) {
          // End of a construct body unless a continuation keyword follows.
          if (!(at_keyword("while") || at_keyword("catch") ||
                at_keyword("finally") || at_keyword("else")))
            break;
        }
      } else if (t == ";" && depth == 0 && braces == 0) {
        break;
      }
    }
    if (!progressed && !eof()) advance();  // always make progress
    const NodeId opaque = add(NodeKind::Opaque, {begin, prev_end()});
    for (size_t i = start_pos; i < pos_; ++i) {
      const Token& tok = toks_[i];
      if (tok.kind != TokenKind::Identifier) continue;
      if (i > start_pos && toks_[i - 1].text == ".") continue;  // member names
      const NodeId ref = add(NodeKind::NameRef, tok.span);
      ast_.nodes[ref].text = tok.text;
      attach(opaque, ref);
    }
    return opaque;
  }

  // ---- expressions -----------------------------------------------------

  struct BinLevel {
    int prec;
    std::vector<std::string> ops;
  };

  static const std::vector<BinLevel>& binary_levels() {
    static const std::vector<BinLevel> levels = {
        {2, {"||"}},
        {3, {"&&"}},
        {4, {"|"}},
        {5, {"^"}},
        {6, {"&"}},
        {7, {"==", "!="}},
        {8, {"<", ">", "<=", ">="}},
        {9, {"<<", ">>", ">>>"}},
        {10, {"+", "-"}},
        {11, {"*", "/", "%"}},
    };
    return levels;
  }

  NodeId parse_expression() { return parse_assignment(); }

  NodeId parse_assignment() {
    const uint32_t begin = here();
    const NodeId lhs = parse_binary(0);
    if (!eof() && peek().kind == TokenKind::Operator &&
        is_assign_op(peek().text)) {
      const std::string op = advance().text;
      const NodeId rhs = parse_assignment();
      const NodeId node = add(NodeKind::Assignment, {begin, 0});
      ast_.nodes[node].text = op;
      attach(node, lhs);
      attach(node, rhs);
      finish(node);
      return node;
    }
    return lhs;
  }

  NodeId parse_binary(size_t level) {
    const auto& levels = binary_levels();
    if (level >= levels.size()) return parse_unary();
    const uint32_t begin = here();
    NodeId lhs = parse_binary(level + 1);
    while (!eof()) {
      const Token& t = peek();
      const auto& ops = levels[level].ops;
      if (std::find(ops.begin(), ops.end(), t.text) == ops.end()) break;
      // `<` here is always relational: types are parsed only in type
      // positions, never through this path.
      const std::string op = advance().text;
      const NodeId rhs = parse_binary(level + 1);
      const NodeId node = add(NodeKind::Binary, {begin, 0});
      ast_.nodes[node].text = op;
      attach(node, lhs);
      attach(node, rhs);
      finish(node);
      lhs = node;
    }
    return lhs;
  }

  NodeId parse_unary() {
    const uint32_t begin = here();
    if (at("!") || at("~") || at("+") || at("-") || at("++") || at("--")) {
      const std::string op = advance().text;
      const NodeId operand = parse_unary();
      const NodeId node = add(NodeKind::Unary, {begin, 0});
      ast_.nodes[node].text = op;
      attach(node, operand);
      finish(node);
      return node;
    }
    return parse_postfix();
  }

  NodeId parse_postfix() {
    const uint32_t begin = here();
    NodeId cur = parse_primary();
    while (!eof()) {
      if (at(".") && peek(1).kind == TokenKind::Identifier) {
        advance();
        const std::string name = advance().text;
        if (at("(")) {
          const NodeId call = add(NodeKind::MethodCall, {begin, 0});
          ast_.nodes[call].text = name;
          ast_.nodes[call].aux |= kAuxHasReceiver;
          attach(call, cur);
          parse_call_args(call);
          finish(call);
          cur = call;
        } else {
          const NodeId access = add(NodeKind::FieldAccess, {begin, 0});
          ast_.nodes[access].text = name;
          attach(access, cur);
          finish(access);
          cur = access;
        }
        continue;
      }
      if (at("++") || at("--")) {
        const std::string op = advance().text;
        const NodeId node = add(NodeKind::Unary, {begin, 0});
        ast_.nodes[node].text = op;
        ast_.nodes[node].aux |= kAuxPostfix;
        attach(node, cur);
        finish(node);
        cur = node;
        continue;
      }
      break;
    }
    return cur;
  }

  void parse_call_args(NodeId call) {
    expect("(");
    if (!at(")")) {
      attach(call, parse_expression());
      while (accept(",")) attach(call, parse_expression());
    }
    expect(")");
  }

  NodeId parse_primary() {
    if (eof()) fail("expected expression");
    const Token& t = peek();
    const uint32_t begin = t.span.begin;

    if (t.kind == TokenKind::Literal) {
      advance();
      const NodeId lit = add(NodeKind::Literal, t.span);
      ast_.nodes[lit].text = t.text;
      return lit;
    }
    if (t.kind == TokenKind::Keyword && t.text == "new") return parse_new();
    if (t.kind == TokenKind::Keyword && t.text == "this") {
      advance();
      const NodeId self = add(NodeKind::NameRef, t.span);
      ast_.nodes[self].text = "this";
      return self;
    }
    if (t.kind == TokenKind::Identifier) {
      // Single-parameter lambda: `x -> body`.
      if (peek(1).text == "->") return parse_lambda_single();
      advance();
      if (at("(")) {
        const NodeId call = add(NodeKind::MethodCall, {begin, 0});
        ast_.nodes[call].text = t.text;
        parse_call_args(call);
        finish(call);
        return call;
      }
      const NodeId ref = add(NodeKind::NameRef, t.span);
      ast_.nodes[ref].text = t.text;
      return ref;
    }
    if (t.text == "(") {
      if (is_lambda_params_ahead()) return parse_lambda_parenthesized();
      if (is_cast_ahead()) return parse_cast();
      advance();
      const NodeId inner = parse_expression();
      expect(")");
      // Widen the inner node's span over the parens so rewrites and hole
      // bindings carry the original parentheses.
      ast_.nodes[inner].span = {begin, prev_end()};
      ast_.nodes[inner].aux |= kAuxParenthesized;
      return inner;
    }
    fail("expected expression, found '" + t.text + "'");
  }

  NodeId parse_new() {
    const uint32_t begin = here();
    expect("new");
    const NodeId node = add(NodeKind::New, {begin, 0});
    const NodeId type = parse_type();
    attach(node, type);
    ast_.nodes[node].text = ast_.types[static_cast<size_t>(
                                           ast_.nodes[type].type_index)]
                                .simple_name();
    if (at("[")) fail("array creation is not supported");
    parse_call_args(node);
    if (at("{")) fail("anonymous class bodies are not supported");
    finish(node);
    return node;
  }

  NodeId parse_lambda_single() {
    const uint32_t begin = here();
    const Token name = advance();
    expect("->");
    const NodeId lambda = add(NodeKind::Lambda, {begin, 0});
    const NodeId param = add(NodeKind::Param, name.span);
    ast_.nodes[param].text = name.text;
    attach(lambda, param);
    attach(lambda, parse_lambda_body());
    finish(lambda);
    return lambda;
  }

  NodeId parse_lambda_parenthesized() {
    const uint32_t begin = here();
    expect("(");
    const NodeId lambda = add(NodeKind::Lambda, {begin, 0});
    if (!at(")")) {
      do {
        attach(lambda, parse_lambda_param());
      } while (accept(","));
    }
    expect(")");
    expect("->");
    attach(lambda, parse_lambda_body());
    finish(lambda);
    return lambda;
  }

  NodeId parse_lambda_param() {
    const uint32_t begin = here();
    // Either `name` or `Type name`.
    if (at_identifier() && (peek(1).text == "," || peek(1).text == ")")) {
      const Token name = advance();
      const NodeId param = add(NodeKind::Param, name.span);
      ast_.nodes[param].text = name.text;
      return param;
    }
    const NodeId type = parse_type();
    const std::string name = expect_identifier("lambda parameter name");
    const NodeId param = add(NodeKind::Param, {begin, prev_end()});
    ast_.nodes[param].text = name;
    attach(param, type);
    return param;
  }

  NodeId parse_lambda_body() {
    if (at("{")) return parse_block();
    return parse_expression();
  }

  NodeId parse_cast() {
    const uint32_t begin = here();
    expect("(");
    const NodeId node = add(NodeKind::Cast, {begin, 0});
    attach(node, parse_type());
    expect(")");
    attach(node, parse_unary());
    finish(node);
    return node;
  }

  // Lookahead: `( idents... ) ->` or `( Type name, ... ) ->`.
  bool is_lambda_params_ahead() const {
    size_t i = pos_ + 1;
    int depth = 1;
    while (i < toks_.size() && depth > 0) {
      const std::string& t = toks_[i].text;
      if (t == "(") ++depth;
      else if (t == ")") --depth;
      ++i;
    }
    return depth == 0 && i < toks_.size() && toks_[i].text == "->";
  }

  // Lookahead: parenthesized type followed by something an operand can
  // start with distinguishes a cast from a parenthesized expression.
  bool is_cast_ahead() const {
    size_t i = pos_ + 1;
    bool saw_name = false;
    while (i < toks_.size()) {
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Identifier ||
          (t.kind == TokenKind::Keyword && is_primitive_type_keyword(t.text))) {
        saw_name = true;
        ++i;
        continue;
      }
      if (t.text == "." || t.text == "<" || t.text == ">" || t.text == ">>" ||
          t.text == "," || t.text == "[" || t.text == "]") {
        ++i;
        continue;
      }
      break;
    }
    if (!saw_name || i >= toks_.size() || toks_[i].text != ")") return false;
    if (i + 1 >= toks_.size()) return false;
    const Token& next = toks_[i + 1];
    return next.kind == TokenKind::Identifier ||
           next.kind == TokenKind::Literal ||
           (next.kind == TokenKind::Keyword &&
            (next.text == "new" || next.text == "this")) ||
           next.text == "(";
  }
};

}  // namespace

Ast parse_compilation_unit(std::string_view source) {
  Parser parser(source, tokenize(source));
  return parser.parse_unit();
}

Ast parse_expression_text(std::string_view source) {
  Parser parser(source, tokenize(source));
  return parser.parse_expr();
}

TypeRef parse_type_text(std::string_view source) {
  Parser parser(source, tokenize(source));
  return parser.parse_lone_type();
}

ImportEnv::ImportEnv(const Ast& ast) {
  if (ast.root == kNoNode) return;
  for (const NodeId c : ast.node(ast.root).children) {
    const AstNode& n = ast.node(c);
    if (n.kind != NodeKind::ImportDecl) continue;
    if (n.flag(kAuxWildcardImport)) {
      wildcard_packages_.push_back(n.text.substr(0, n.text.size() - 2));
    } else {
      const size_t dot = n.text.rfind('.');
      const std::string simple =
          dot == std::string::npos ? n.text : n.text.substr(dot + 1);
      explicit_imports_[simple] = n.text;
    }
  }
}

std::optional<std::string> ImportEnv::resolve(const std::string& simple) const {
  const auto it = explicit_imports_.find(simple);
  if (it != explicit_imports_.end()) return it->second;
  const auto& builtin = builtin_table_impl();
  const auto bit = builtin.find(simple);
  if (bit != builtin.end()) return bit->second;
  return std::nullopt;
}

bool ImportEnv::has_explicit_import(const std::string& fqn) const {
  for (const auto& [simple, full] : explicit_imports_)
    if (full == fqn) return true;
  return false;
}

bool ImportEnv::wildcard_covers(const std::string& fqn) const {
  const size_t dot = fqn.rfind('.');
  if (dot == std::string::npos) return false;
  const std::string pkg = fqn.substr(0, dot);
  for (const std::string& w : wildcard_packages_)
    if (w == pkg) return true;
  return false;
}

const std::map<std::string, std::string>& builtin_import_table() {
  return builtin_table_impl();
}

}  // namespace retype
