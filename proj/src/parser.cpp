// exnlint/parser.cpp - Java 8 parser producing the simplified syntax tree
//
// Hand-written recursive descent over the token stream. Declarations,
// statements and expressions are parsed fully so that malformed input is
// rejected, but only the constructs the rules inspect get dedicated node
// kinds; everything else becomes an Other node labelled with the construct
// and keeping its sub-expressions and sub-statements as children.
#include "exnlint/parser.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include "exnlint/lexer.hpp"

namespace exnlint {

namespace {

using NodePtr = std::unique_ptr<AstNode>;

constexpr int kMaxNesting = 400;

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double",
};

constexpr std::array<std::string_view, 12> kModifiers = {
    "public",    "protected", "private",  "static",       "abstract", "final",
    "native",    "transient", "volatile", "synchronized", "strictfp", "default",
};

bool is_primitive(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  for (auto p : kPrimitiveTypes) {
    if (t.text == p) return true;
  }
  return false;
}

bool is_modifier(const Token& t) {
  if (t.kind != TokenKind::Keyword) return false;
  for (auto m : kModifiers) {
    if (t.text == m) return true;
  }
  return false;
}

bool is_literal(const Token& t) {
  switch (t.kind) {
    case TokenKind::IntLiteral:
    case TokenKind::FloatLiteral:
    case TokenKind::CharLiteral:
    case TokenKind::StringLiteral:
    case TokenKind::BoolLiteral:
    case TokenKind::NullLiteral:
      return true;
    default:
      return false;
  }
}

struct SyntaxError {
  std::string message;
  std::size_t begin;
  std::size_t end;
};

class Parser {
 public:
  Parser(const SourceFile& file, const std::vector<Token>& toks) : file_(file), toks_(toks) {}

  NodePtr compilation_unit() {
    auto unit = std::make_unique<AstNode>(NodeKind::CompilationUnit, Span{});
    // Package annotations precede the package clause.
    std::size_t save = pos_;
    skip_annotations();
    if (at_kw("package")) {
      ++pos_;
      package_ = qualified_name();
      expect_op(";");
    } else {
      pos_ = save;
    }
    while (at_kw("import")) {
      ++pos_;
      if (at_kw("static")) ++pos_;
      qualified_name();
      if (at_op(".")) {
        ++pos_;
        expect_op("*");
      }
      expect_op(";");
    }
    while (!at_end()) {
      if (at_op(";")) {
        ++pos_;
        continue;
      }
      const std::size_t begin = pos_;
      skip_modifiers();
      if (!at_type_decl_keyword()) fail("expected a class, interface or enum declaration");
      auto decl = type_declaration(begin);
      if (!primary_type_) primary_type_ = decl->attrs.name;
      unit->add(std::move(decl));
    }
    unit->span = file_.lines().span(0, file_.text.size());
    return unit;
  }

  const std::optional<std::string>& package_name() const { return package_; }
  const std::optional<std::string>& primary_type() const { return primary_type_; }

 private:
  // ---- token helpers -------------------------------------------------------

  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = pos_ + ahead;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  const Token& tok_at(std::size_t i) const { return i < toks_.size() ? toks_[i] : toks_.back(); }
  bool at_end() const { return peek().kind == TokenKind::End; }
  bool at_op(std::string_view op) const { return peek().is_op(op); }
  bool at_kw(std::string_view kw) const { return peek().is_keyword(kw); }
  bool at_ident() const { return peek().kind == TokenKind::Identifier; }

  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of file" : "'" + std::string(t.text) + "'";
    throw SyntaxError{what + ", found " + found, t.begin, t.end};
  }

  void expect_op(std::string_view op) {
    if (!at_op(op)) fail("expected '" + std::string(op) + "'");
    ++pos_;
  }

  void expect_kw(std::string_view kw) {
    if (!at_kw(kw)) fail("expected '" + std::string(kw) + "'");
    ++pos_;
  }

  std::string expect_ident() {
    if (!at_ident()) fail("expected an identifier");
    return std::string(toks_[pos_++].text);
  }

  // Two tokens are adjacent when no whitespace or comment separates them.
  bool adjacent(std::size_t i) const { return tok_at(i).end == tok_at(i + 1).begin; }

  Span span_from(std::size_t begin_tok) const {
    const std::size_t last = pos_ > begin_tok ? pos_ - 1 : begin_tok;
    return file_.lines().span(tok_at(begin_tok).begin, tok_at(last).end);
  }

  NodePtr make(NodeKind kind, std::size_t begin_tok) const {
    return std::make_unique<AstNode>(kind, span_from(begin_tok));
  }

  NodePtr make_other(std::string label, std::size_t begin_tok) const {
    auto n = make(NodeKind::Other, begin_tok);
    n->attrs.name = std::move(label);
    return n;
  }

  void finish(AstNode& node, std::size_t begin_tok) const { node.span = span_from(begin_tok); }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) parser.fail("nesting too deep");
    }
    ~DepthGuard() { --parser.depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;
    Parser& parser;
  };

  // ---- names, annotations, modifiers --------------------------------------

  std::string qualified_name() {
    std::string name = expect_ident();
    while (at_op(".") && peek(1).kind == TokenKind::Identifier) {
      pos_ += 1;
      name += '.';
      name += expect_ident();
    }
    return name;
  }

  // Skips tokens up to and including the closer matching the opener at pos_.
  void skip_balanced(std::string_view open, std::string_view close) {
    const std::size_t begin = pos_;
    int depth = 0;
    do {
      if (at_end()) {
        pos_ = begin;
        fail("unbalanced '" + std::string(open) + "'");
      }
      if (at_op(open)) ++depth;
      if (at_op(close)) --depth;
      ++pos_;
    } while (depth > 0);
  }

  bool at_annotation() const { return at_op("@") && !peek(1).is_keyword("interface"); }

  void skip_annotation() {
    expect_op("@");
    qualified_name();
    if (at_op("(")) skip_balanced("(", ")");
  }

  void skip_annotations() {
    while (at_annotation()) skip_annotation();
  }

  void skip_modifiers() {
    for (;;) {
      if (at_annotation()) {
        skip_annotation();
      } else if (is_modifier(peek()) &&
                 // `default:` inside a switch and `default` values are not
                 // modifiers; only reached from declaration contexts.
                 !(peek().is_keyword("default") && (peek(1).is_op(":") || peek(1).is_op("->")))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_type_decl_keyword() const {
    return at_kw("class") || at_kw("interface") || at_kw("enum") ||
           (at_op("@") && peek(1).is_keyword("interface"));
  }

  // ---- types ---------------------------------------------------------------

  // Non-throwing type scanner used for lookahead. Advances `p` past a type
  // when one starts at `p`.
  bool scan_type(std::size_t& p) const {
    while (tok_at(p).is_op("@")) {
      if (!scan_annotation(p)) return false;
    }
    const Token& t = tok_at(p);
    if (is_primitive(t)) {
      ++p;
    } else if (t.kind == TokenKind::Identifier) {
      ++p;
      if (tok_at(p).is_op("<") && !scan_type_args(p)) return false;
      while (tok_at(p).is_op(".") && (tok_at(p + 1).kind == TokenKind::Identifier ||
                                      tok_at(p + 1).is_op("@"))) {
        ++p;
        while (tok_at(p).is_op("@")) {
          if (!scan_annotation(p)) return false;
        }
        if (tok_at(p).kind != TokenKind::Identifier) return false;
        ++p;
        if (tok_at(p).is_op("<") && !scan_type_args(p)) return false;
      }
    } else {
      return false;
    }
    for (;;) {
      std::size_t q = p;
      while (tok_at(q).is_op("@")) {
        if (!scan_annotation(q)) return false;
      }
      if (tok_at(q).is_op("[") && tok_at(q + 1).is_op("]")) {
        p = q + 2;
      } else {
        break;
      }
    }
    return true;
  }

  bool scan_annotation(std::size_t& p) const {
    if (!tok_at(p).is_op("@")) return false;
    ++p;
    if (tok_at(p).kind != TokenKind::Identifier) return false;
    ++p;
    while (tok_at(p).is_op(".") && tok_at(p + 1).kind == TokenKind::Identifier) p += 2;
    if (tok_at(p).is_op("(")) {
      int depth = 0;
      do {
        if (tok_at(p).kind == TokenKind::End) return false;
        if (tok_at(p).is_op("(")) ++depth;
        if (tok_at(p).is_op(")")) --depth;
        ++p;
      } while (depth > 0);
    }
    return true;
  }

  bool scan_type_args(std::size_t& p) const {
    if (!tok_at(p).is_op("<")) return false;
    ++p;
    if (tok_at(p).is_op(">")) {  // diamond
      ++p;
      return true;
    }
    for (;;) {
      while (tok_at(p).is_op("@")) {
        if (!scan_annotation(p)) return false;
      }
      if (tok_at(p).is_op("?")) {
        ++p;
        if (tok_at(p).is_keyword("extends") || tok_at(p).is_keyword("super")) {
          ++p;
          if (!scan_type(p)) return false;
        }
      } else if (!scan_type(p)) {
        return false;
      }
      if (tok_at(p).is_op(",")) {
        ++p;
        continue;
      }
      if (tok_at(p).is_op(">")) {
        ++p;
        return true;
      }
      return false;
    }
  }

  // Parses a type and returns its erased dotted name ("java.util.List",
  // "int[]" keeps array brackets).
  std::string type() {
    const std::size_t begin = pos_;
    std::size_t p = pos_;
    if (!scan_type(p)) fail("expected a type");
    std::string name;
    int angle = 0;
    for (std::size_t i = begin; i < p; ++i) {
      const Token& t = toks_[i];
      if (t.is_op("<")) ++angle;
      if (t.is_op(">")) --angle;
      if (angle > 0 || t.is_op(">")) continue;
      if (t.is_op("@")) {
        // Drop type annotations from the name.
        std::size_t q = i;
        scan_annotation(q);
        i = q - 1;
        continue;
      }
      name += t.text;
    }
    pos_ = p;
    return name;
  }

  void type_parameters() {
    expect_op("<");
    for (;;) {
      skip_annotations();
      expect_ident();
      if (at_kw("extends")) {
        ++pos_;
        type();
        while (at_op("&")) {
          ++pos_;
          type();
        }
      }
      if (at_op(",")) {
        ++pos_;
        continue;
      }
      expect_op(">");
      return;
    }
  }

  void type_arguments() {
    std::size_t p = pos_;
    if (!scan_type_args(p)) fail("malformed type arguments");
    pos_ = p;
  }

  std::vector<std::string> type_list() {
    std::vector<std::string> out;
    out.push_back(type());
    while (at_op(",")) {
      ++pos_;
      out.push_back(type());
    }
    return out;
  }

  void dims() {
    for (;;) {
      std::size_t q = pos_;
      while (tok_at(q).is_op("@")) {
        if (!scan_annotation(q)) break;
      }
      if (tok_at(q).is_op("[") && tok_at(q + 1).is_op("]")) {
        pos_ = q + 2;
      } else {
        return;
      }
    }
  }

  // ---- declarations --------------------------------------------------------

  NodePtr type_declaration(std::size_t begin) {
    DepthGuard guard(*this);
    auto decl = std::make_unique<AstNode>(NodeKind::TypeDecl, Span{});
    if (at_kw("class")) {
      ++pos_;
      decl->attrs.name = expect_ident();
      if (at_op("<")) type_parameters();
      if (at_kw("extends")) {
        ++pos_;
        type();
      }
      if (at_kw("implements")) {
        ++pos_;
        type_list();
      }
      class_body(*decl, false);
    } else if (at_kw("interface")) {
      ++pos_;
      decl->attrs.name = expect_ident();
      if (at_op("<")) type_parameters();
      if (at_kw("extends")) {
        ++pos_;
        type_list();
      }
      class_body(*decl, false);
    } else if (at_kw("enum")) {
      ++pos_;
      decl->attrs.name = expect_ident();
      if (at_kw("implements")) {
        ++pos_;
        type_list();
      }
      class_body(*decl, true);
    } else if (at_op("@") && peek(1).is_keyword("interface")) {
      pos_ += 2;
      decl->attrs.name = expect_ident();
      class_body(*decl, false);
    } else {
      fail("expected a type declaration");
    }
    finish(*decl, begin);
    return decl;
  }

  // Parses `{ members }` appending member nodes to `owner`.
  void class_body(AstNode& owner, bool is_enum) {
    expect_op("{");
    if (is_enum) enum_constants(owner);
    while (!at_op("}")) {
      if (at_end()) fail("expected '}' to close the class body");
      member(owner);
    }
    expect_op("}");
  }

  void enum_constants(AstNode& owner) {
    while (!at_op(";") && !at_op("}")) {
      const std::size_t begin = pos_;
      skip_annotations();
      expect_ident();
      auto constant = make_other("enum_constant", begin);
      if (at_op("(")) arguments(*constant);
      if (at_op("{")) {
        const std::size_t body_begin = pos_;
        auto body = std::make_unique<AstNode>(NodeKind::AnonymousClassBody, Span{});
        class_body(*body, false);
        finish(*body, body_begin);
        constant->add(std::move(body));
      }
      finish(*constant, begin);
      owner.add(std::move(constant));
      if (at_op(",")) {
        ++pos_;
      } else {
        break;
      }
    }
    if (at_op(";")) ++pos_;
  }

  void member(AstNode& owner) {
    DepthGuard guard(*this);
    if (at_op(";")) {
      ++pos_;
      return;
    }
    const std::size_t begin = pos_;
    if (at_op("{") || (at_kw("static") && peek(1).is_op("{"))) {
      if (at_kw("static")) ++pos_;
      auto init = make_other("initializer", begin);
      init->add(block());
      finish(*init, begin);
      owner.add(std::move(init));
      return;
    }
    std::size_t header_begin = pos_;
    while (tok_at(header_begin).is_op("@") && !tok_at(header_begin + 1).is_keyword("interface")) {
      if (!scan_annotation(header_begin)) break;
    }
    skip_modifiers();
    if (at_type_decl_keyword()) {
      owner.add(type_declaration(begin));
      return;
    }
    if (at_op("<")) type_parameters();
    // Constructor: Name '('
    if (at_ident() && peek(1).is_op("(")) {
      auto ctor = std::make_unique<AstNode>(NodeKind::ConstructorDecl, Span{});
      ctor->attrs.name = expect_ident();
      method_rest(*ctor, begin, header_begin);
      owner.add(std::move(ctor));
      return;
    }
    std::string result_type;
    if (at_kw("void")) {
      ++pos_;
      result_type = "void";
    } else {
      result_type = type();
    }
    if (at_ident() && peek(1).is_op("(")) {
      auto method = std::make_unique<AstNode>(NodeKind::MethodDecl, Span{});
      method->attrs.name = expect_ident();
      method_rest(*method, begin, header_begin);
      owner.add(std::move(method));
      return;
    }
    if (result_type == "void") fail("expected a method name");
    auto field = std::make_unique<AstNode>(NodeKind::Other, Span{});
    field->attrs.name = "field";
    variable_declarators(*field);
    expect_op(";");
    finish(*field, begin);
    owner.add(std::move(field));
  }

  // Parameters, throws clause and body of a method or constructor whose name
  // has just been consumed.
  void method_rest(AstNode& decl, std::size_t begin, std::size_t header_begin) {
    formal_parameters();
    dims();
    if (at_kw("throws")) {
      ++pos_;
      decl.attrs.throws = type_list();
    }
    // The header excludes leading annotations and the body.
    decl.attrs.header = span_from(header_begin);
    if (at_op("{")) {
      decl.add(block());
    } else if (at_kw("default")) {
      // Annotation element default value.
      ++pos_;
      auto value = element_value();
      decl.add(std::move(value));
      expect_op(";");
    } else {
      expect_op(";");
    }
    finish(decl, begin);
  }

  NodePtr element_value() {
    if (at_annotation()) {
      const std::size_t begin = pos_;
      skip_annotation();
      return make_other("annotation", begin);
    }
    if (at_op("{")) return array_initializer();
    return expression();
  }

  void formal_parameters() {
    expect_op("(");
    if (at_op(")")) {
      ++pos_;
      return;
    }
    for (;;) {
      skip_modifiers();
      type();
      if (at_op("...")) {
        ++pos_;
        skip_annotations();
      }
      if (at_kw("this")) {
        // Receiver parameter.
        ++pos_;
      } else {
        expect_ident();
        if (at_op(".") && peek(1).is_keyword("this")) pos_ += 2;
      }
      dims();
      if (at_op(",")) {
        ++pos_;
        continue;
      }
      expect_op(")");
      return;
    }
  }

  // name [dims] [= init] {, name [dims] [= init]}
  void variable_declarators(AstNode& owner) {
    for (;;) {
      expect_ident();
      dims();
      if (at_op("=")) {
        ++pos_;
        owner.add(variable_initializer());
      }
      if (!at_op(",")) return;
      ++pos_;
    }
  }

  NodePtr variable_initializer() {
    if (at_op("{")) return array_initializer();
    return expression();
  }

  NodePtr array_initializer() {
    DepthGuard guard(*this);
    const std::size_t begin = pos_;
    auto init = make_other("array_init", begin);
    expect_op("{");
    while (!at_op("}")) {
      if (at_annotation()) {
        const std::size_t a = pos_;
        skip_annotation();
        init->add(make_other("annotation", a));
      } else {
        init->add(variable_initializer());
      }
      if (!at_op(",")) break;
      ++pos_;
    }
    expect_op("}");
    finish(*init, begin);
    return init;
  }

  // ---- statements ----------------------------------------------------------

  NodePtr block() {
    DepthGuard guard(*this);
    const std::size_t begin = pos_;
    auto blk = make(NodeKind::Block, begin);
    expect_op("{");
    while (!at_op("}")) {
      if (at_end()) fail("expected '}' to close the block");
      blk->add(block_statement());
    }
    expect_op("}");
    finish(*blk, begin);
    return blk;
  }

  bool looks_like_local_var_decl() const {
    std::size_t p = pos_;
    if (!scan_type(p)) return false;
    if (tok_at(p).kind != TokenKind::Identifier) return false;
    const Token& after = tok_at(p + 1);
    return after.is_op("=") || after.is_op(";") || after.is_op(",") || after.is_op("[") ||
           after.is_op(":") || after.is_op("@");
  }

  bool at_local_class_decl() const {
    std::size_t p = pos_;
    for (;;) {
      const Token& t = tok_at(p);
      if (t.is_keyword("abstract") || t.is_keyword("final") || t.is_keyword("static") ||
          t.is_keyword("strictfp")) {
        ++p;
      } else if (t.is_op("@") && !tok_at(p + 1).is_keyword("interface")) {
        if (!scan_annotation(p)) return false;
      } else {
        break;
      }
    }
    const Token& t = tok_at(p);
    return t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum");
  }

  NodePtr block_statement() {
    const std::size_t begin = pos_;
    if (at_local_class_decl()) {
      skip_modifiers();
      return type_declaration(begin);
    }
    if (at_kw("final") || at_annotation() ||
        (is_primitive(peek()) && !peek(1).is_op(".") && !peek(1).is_op("[")) ||
        (is_primitive(peek()) && peek(1).is_op("[") && peek(2).is_op("]") &&
         !peek(3).is_op(".") && !peek(3).is_op("::")) ||
        (at_ident() && looks_like_local_var_decl())) {
      auto decl = local_variable_declaration();
      expect_op(";");
      finish(*decl, begin);
      return decl;
    }
    return statement();
  }

  NodePtr local_variable_declaration() {
    const std::size_t begin = pos_;
    auto decl = make_other("local_var", begin);
    skip_modifiers();
    type();
    variable_declarators(*decl);
    finish(*decl, begin);
    return decl;
  }

  NodePtr paren_expression() {
    expect_op("(");
    auto e = expression();
    expect_op(")");
    return e;
  }

  NodePtr statement() {
    DepthGuard guard(*this);
    const std::size_t begin = pos_;
    const Token& t = peek();

    if (t.is_op("{")) return block();
    if (t.is_op(";")) {
      ++pos_;
      return make_other("empty", begin);
    }
    if (t.kind == TokenKind::Identifier && peek(1).is_op(":")) {
      pos_ += 2;
      auto labeled = make_other("labeled", begin);
      labeled->add(statement());
      finish(*labeled, begin);
      return labeled;
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") {
        ++pos_;
        auto n = make_other("if", begin);
        n->add(paren_expression());
        n->add(statement());
        if (at_kw("else")) {
          ++pos_;
          n->add(statement());
        }
        finish(*n, begin);
        return n;
      }
      if (t.text == "while") {
        ++pos_;
        auto n = make_other("while", begin);
        n->add(paren_expression());
        n->add(statement());
        finish(*n, begin);
        return n;
      }
      if (t.text == "do") {
        ++pos_;
        auto n = make_other("do", begin);
        n->add(statement());
        expect_kw("while");
        n->add(paren_expression());
        expect_op(";");
        finish(*n, begin);
        return n;
      }
      if (t.text == "for") return for_statement();
      if (t.text == "try") return try_statement();
      if (t.text == "switch") return switch_statement();
      if (t.text == "synchronized") {
        ++pos_;
        auto n = make_other("synchronized", begin);
        n->add(paren_expression());
        n->add(block());
        finish(*n, begin);
        return n;
      }
      if (t.text == "return") {
        ++pos_;
        auto n = make(NodeKind::ReturnStmt, begin);
        if (!at_op(";")) n->add(expression());
        expect_op(";");
        finish(*n, begin);
        return n;
      }
      if (t.text == "throw") {
        ++pos_;
        auto n = make(NodeKind::ThrowStmt, begin);
        n->add(expression());
        expect_op(";");
        finish(*n, begin);
        return n;
      }
      if (t.text == "break" || t.text == "continue") {
        ++pos_;
        auto n = make_other(std::string(t.text), begin);
        if (at_ident()) ++pos_;
        expect_op(";");
        finish(*n, begin);
        return n;
      }
      if (t.text == "assert") {
        ++pos_;
        auto n = make_other("assert", begin);
        n->add(expression());
        if (at_op(":")) {
          ++pos_;
          n->add(expression());
        }
        expect_op(";");
        finish(*n, begin);
        return n;
      }
      if (t.text == "else" || t.text == "catch" || t.text == "finally" || t.text == "case" ||
          t.text == "default") {
        fail("unexpected '" + std::string(t.text) + "'");
      }
    }
    auto stmt = make(NodeKind::ExprStmt, begin);
    stmt->add(expression());
    expect_op(";");
    finish(*stmt, begin);
    return stmt;
  }

  NodePtr for_statement() {
    const std::size_t begin = pos_;
    expect_kw("for");
    expect_op("(");
    // Enhanced for: [modifiers] Type name : expr
    {
      std::size_t p = pos_;
      while (tok_at(p).is_keyword("final") || tok_at(p).is_op("@")) {
        if (tok_at(p).is_op("@")) {
          if (!scan_annotation(p)) break;
        } else {
          ++p;
        }
      }
      if (scan_type(p) && tok_at(p).kind == TokenKind::Identifier && tok_at(p + 1).is_op(":")) {
        auto n = make_other("foreach", begin);
        skip_modifiers();
        type();
        expect_ident();
        expect_op(":");
        n->add(expression());
        expect_op(")");
        n->add(statement());
        finish(*n, begin);
        return n;
      }
    }
    auto n = make_other("for", begin);
    if (!at_op(";")) {
      if (at_kw("final") || at_annotation() || is_primitive(peek()) ||
          (at_ident() && looks_like_local_var_decl())) {
        n->add(local_variable_declaration());
      } else {
        n->add(expression_list());
      }
    }
    expect_op(";");
    if (!at_op(";")) n->add(expression());
    expect_op(";");
    if (!at_op(")")) n->add(expression_list());
    expect_op(")");
    n->add(statement());
    finish(*n, begin);
    return n;
  }

  NodePtr expression_list() {
    const std::size_t begin = pos_;
    auto first = expression();
    if (!at_op(",")) return first;
    auto list = make_other("expr_list", begin);
    list->add(std::move(first));
    while (at_op(",")) {
      ++pos_;
      list->add(expression());
    }
    finish(*list, begin);
    return list;
  }

  NodePtr try_statement() {
    const std::size_t begin = pos_;
    expect_kw("try");
    auto n = make(NodeKind::TryStmt, begin);
    bool has_resources = false;
    if (at_op("(")) {
      has_resources = true;
      const std::size_t rbegin = pos_;
      ++pos_;
      auto resources = make_other("resources", rbegin);
      while (!at_op(")")) {
        const std::size_t res_begin = pos_;
        std::size_t p = pos_;
        while (tok_at(p).is_keyword("final") || tok_at(p).is_op("@")) {
          if (tok_at(p).is_op("@")) {
            if (!scan_annotation(p)) break;
          } else {
            ++p;
          }
        }
        if (scan_type(p) && tok_at(p).kind == TokenKind::Identifier && tok_at(p + 1).is_op("=")) {
          auto res = make_other("resource", res_begin);
          skip_modifiers();
          type();
          expect_ident();
          expect_op("=");
          res->add(expression());
          finish(*res, res_begin);
          resources->add(std::move(res));
        } else {
          resources->add(expression());
        }
        if (at_op(";")) {
          ++pos_;
        } else {
          break;
        }
      }
      expect_op(")");
      finish(*resources, rbegin);
      n->add(std::move(resources));
    }
    n->add(block());
    bool has_handler = false;
    while (at_kw("catch")) {
      has_handler = true;
      n->add(catch_clause());
    }
    if (at_kw("finally")) {
      has_handler = true;
      const std::size_t fbegin = pos_;
      ++pos_;
      auto fin = make_other("finally", fbegin);
      fin->add(block());
      finish(*fin, fbegin);
      n->add(std::move(fin));
    }
    if (!has_handler && !has_resources) fail("expected 'catch' or 'finally' after try block");
    finish(*n, begin);
    return n;
  }

  NodePtr catch_clause() {
    const std::size_t begin = pos_;
    expect_kw("catch");
    auto n = make(NodeKind::CatchClause, begin);
    expect_op("(");
    skip_modifiers();
    n->attrs.caught_types.push_back(type());
    while (at_op("|")) {
      ++pos_;
      n->attrs.caught_types.push_back(type());
    }
    n->attrs.param_name = expect_ident();
    expect_op(")");
    n->add(block());
    finish(*n, begin);
    return n;
  }

  NodePtr switch_statement() {
    const std::size_t begin = pos_;
    expect_kw("switch");
    auto n = make_other("switch", begin);
    n->add(paren_expression());
    expect_op("{");
    while (!at_op("}")) {
      if (at_end()) fail("expected '}' to close the switch");
      const std::size_t lbegin = pos_;
      if (at_kw("case")) {
        ++pos_;
        auto label = make_other("case", lbegin);
        label->add(expression());
        expect_op(":");
        finish(*label, lbegin);
        n->add(std::move(label));
      } else if (at_kw("default") && peek(1).is_op(":")) {
        pos_ += 2;
        n->add(make_other("default", lbegin));
      } else {
        n->add(block_statement());
      }
    }
    expect_op("}");
    finish(*n, begin);
    return n;
  }

  // ---- expressions ---------------------------------------------------------

  NodePtr expression() {
    DepthGuard guard(*this);
    return assignment();
  }

  // Length of the assignment operator at pos_, in tokens, or 0.
  std::size_t assignment_op_length() const {
    const Token& t = peek();
    if (t.kind != TokenKind::Operator) return 0;
    if (t.text == "=" || t.text == "+=" || t.text == "-=" || t.text == "*=" || t.text == "/=" ||
        t.text == "%=" || t.text == "&=" || t.text == "|=" || t.text == "^=" || t.text == "<<=") {
      return 1;
    }
    if (t.text == ">" && adjacent(pos_)) {
      if (peek(1).is_op(">=")) return 2;  // >>=
      if (peek(1).is_op(">") && adjacent(pos_ + 1) && peek(2).is_op(">=")) return 3;  // >>>=
    }
    return 0;
  }

  bool at_lambda() const {
    if (at_ident() && peek(1).is_op("->")) return true;
    if (!at_op("(")) return false;
    std::size_t p = pos_;
    int depth = 0;
    do {
      const Token& t = tok_at(p);
      if (t.kind == TokenKind::End) return false;
      if (t.is_op("(")) ++depth;
      if (t.is_op(")")) --depth;
      ++p;
    } while (depth > 0);
    return tok_at(p).is_op("->");
  }

  NodePtr lambda() {
    const std::size_t begin = pos_;
    if (at_ident()) {
      ++pos_;
    } else {
      skip_balanced("(", ")");
    }
    expect_op("->");
    auto n = make(NodeKind::Lambda, begin);
    if (at_op("{")) {
      n->add(block());
    } else {
      n->add(expression());
    }
    finish(*n, begin);
    return n;
  }

  NodePtr assignment() {
    if (at_lambda()) return lambda();
    const std::size_t begin = pos_;
    auto lhs = conditional();
    if (const std::size_t len = assignment_op_length(); len > 0) {
      pos_ += len;
      auto n = make_other("assign", begin);
      n->add(std::move(lhs));
      n->add(expression());
      finish(*n, begin);
      return n;
    }
    return lhs;
  }

  NodePtr conditional() {
    const std::size_t begin = pos_;
    auto cond = binary(1);
    if (!at_op("?")) return cond;
    ++pos_;
    auto n = make_other("conditional", begin);
    n->add(std::move(cond));
    n->add(expression());
    expect_op(":");
    if (at_lambda()) {
      n->add(lambda());
    } else {
      DepthGuard guard(*this);
      n->add(conditional());
    }
    finish(*n, begin);
    return n;
  }

  struct BinaryOp {
    std::string_view label;
    int precedence;
    std::size_t tokens;
  };

  std::optional<BinaryOp> binary_op() const {
    const Token& t = peek();
    if (t.is_keyword("instanceof")) return BinaryOp{"instanceof", 7, 1};
    if (t.kind != TokenKind::Operator) return std::nullopt;
    const std::string_view s = t.text;
    if (s == "||") return BinaryOp{"||", 1, 1};
    if (s == "&&") return BinaryOp{"&&", 2, 1};
    if (s == "|") return BinaryOp{"|", 3, 1};
    if (s == "^") return BinaryOp{"^", 4, 1};
    if (s == "&") return BinaryOp{"&", 5, 1};
    if (s == "==" || s == "!=") return BinaryOp{s, 6, 1};
    if (s == "<" || s == "<=" || s == ">=") return BinaryOp{s, 7, 1};
    if (s == ">") {
      if (assignment_op_length() > 0) return std::nullopt;
      if (adjacent(pos_) && peek(1).is_op(">")) {
        if (adjacent(pos_ + 1) && peek(2).is_op(">")) return BinaryOp{">>>", 8, 3};
        return BinaryOp{">>", 8, 2};
      }
      return BinaryOp{">", 7, 1};
    }
    if (s == "<<") return BinaryOp{"<<", 8, 1};
    if (s == "+" || s == "-") return BinaryOp{s, 9, 1};
    if (s == "*" || s == "/" || s == "%") return BinaryOp{s, 10, 1};
    return std::nullopt;
  }

  // Precedence climbing. Chains of one left-associative operator are kept
  // flat (one node, many operands) so long string concatenations stay
  // shallow.
  NodePtr binary(int min_precedence) {
    const std::size_t begin = pos_;
    auto lhs = unary();
    for (;;) {
      const auto op = binary_op();
      if (!op || op->precedence < min_precedence) return lhs;
      pos_ += op->tokens;
      NodePtr rhs;
      if (op->label == "instanceof") {
        const std::size_t tbegin = pos_;
        if (at_kw("final")) ++pos_;
        type();
        rhs = make_other("type", tbegin);
      } else {
        DepthGuard guard(*this);
        rhs = binary(op->precedence + 1);
      }
      if (lhs->kind == NodeKind::Other && lhs->attrs.name == op->label &&
          lhs->span.byte_start == tok_at(begin).begin) {
        lhs->add(std::move(rhs));
        finish(*lhs, begin);
      } else {
        auto n = make_other(std::string(op->label), begin);
        n->add(std::move(lhs));
        n->add(std::move(rhs));
        finish(*n, begin);
        lhs = std::move(n);
      }
    }
  }

  bool cast_follows(const Token& t) const {
    if (t.kind == TokenKind::Identifier || is_literal(t)) return true;
    if (t.kind == TokenKind::Keyword) {
      return t.text == "this" || t.text == "super" || t.text == "new" || is_primitive(t) ||
             t.text == "void";
    }
    return t.is_op("(") || t.is_op("!") || t.is_op("~");
  }

  // Recognizes `(Type) operand` at pos_; returns the index just past ')'.
  std::optional<std::size_t> cast_at() const {
    if (!at_op("(")) return std::nullopt;
    std::size_t p = pos_ + 1;
    const bool primitive = is_primitive(tok_at(p));
    if (!scan_type(p)) return std::nullopt;
    while (tok_at(p).is_op("&")) {
      ++p;
      if (!scan_type(p)) return std::nullopt;
    }
    if (!tok_at(p).is_op(")")) return std::nullopt;
    ++p;
    if (primitive) return p;
    if (cast_follows(tok_at(p))) return p;
    return std::nullopt;
  }

  NodePtr unary() {
    DepthGuard guard(*this);
    const std::size_t begin = pos_;
    const Token& t = peek();
    if (t.is_op("+") || t.is_op("-") || t.is_op("++") || t.is_op("--") || t.is_op("!") ||
        t.is_op("~")) {
      ++pos_;
      auto n = make_other(std::string("unary") + std::string(t.text), begin);
      n->add(unary());
      finish(*n, begin);
      return n;
    }
    if (const auto after = cast_at()) {
      ++pos_;
      type();
      while (at_op("&")) {
        ++pos_;
        type();
      }
      expect_op(")");
      auto n = make_other("cast", begin);
      n->add(at_lambda() ? lambda() : unary());
      finish(*n, begin);
      return n;
    }
    return postfix(primary(), begin);
  }

  void arguments(AstNode& call) {
    expect_op("(");
    if (at_op(")")) {
      ++pos_;
      return;
    }
    for (;;) {
      call.add(expression());
      if (at_op(",")) {
        ++pos_;
        continue;
      }
      expect_op(")");
      return;
    }
  }

  NodePtr invocation(std::string name, NodePtr receiver, std::size_t begin) {
    auto call = std::make_unique<AstNode>(NodeKind::MethodInvocation, Span{});
    call->attrs.name = std::move(name);
    if (receiver) {
      call->attrs.has_receiver = true;
      if (receiver->kind == NodeKind::NameRef) call->attrs.receiver = receiver->attrs.name;
      call->add(std::move(receiver));
    }
    arguments(*call);
    finish(*call, begin);
    return call;
  }

  NodePtr primary() {
    const std::size_t begin = pos_;
    const Token& t = peek();
    if (is_literal(t)) {
      ++pos_;
      auto lit = make(NodeKind::Literal, begin);
      lit->attrs.is_null = t.kind == TokenKind::NullLiteral;
      lit->attrs.name = std::string(t.text);
      return lit;
    }
    if (t.is_op("(")) {
      ++pos_;
      auto inner = expression();
      expect_op(")");
      return inner;
    }
    if (t.kind == TokenKind::Identifier) {
      ++pos_;
      if (at_op("(")) return invocation(std::string(t.text), nullptr, begin);
      auto name = make(NodeKind::NameRef, begin);
      name->attrs.name = std::string(t.text);
      return name;
    }
    if (t.is_keyword("this") || t.is_keyword("super")) {
      ++pos_;
      if (at_op("(")) return invocation(std::string(t.text), nullptr, begin);
      auto name = make(NodeKind::NameRef, begin);
      name->attrs.name = std::string(t.text);
      return name;
    }
    if (t.is_keyword("new")) return creator(nullptr, begin);
    if (is_primitive(t) || t.is_keyword("void")) {
      // int.class, int[].class, int[]::new
      ++pos_;
      dims();
      auto n = make_other("primitive_type", begin);
      if (at_op(".") && peek(1).is_keyword("class")) {
        pos_ += 2;
        n->attrs.name = "class_literal";
      } else if (at_op("::")) {
        ++pos_;
        if (at_kw("new")) {
          ++pos_;
        } else {
          expect_ident();
        }
        n->attrs.name = "method_ref";
      } else {
        fail("expected '.class' after primitive type");
      }
      finish(*n, begin);
      return n;
    }
    if (t.is_op("<")) {
      // Explicit generic invocation without a qualifier: <T>this(...)
      type_arguments();
      if (at_kw("this") || at_kw("super")) {
        const std::string name(peek().text);
        ++pos_;
        return invocation(name, nullptr, begin);
      }
      const std::string name = expect_ident();
      return invocation(name, nullptr, begin);
    }
    if (t.is_op("@")) fail("unexpected annotation in expression");
    fail("expected an expression");
  }

  // `new` creator; `outer` is the qualifying expression of `outer.new T()`.
  NodePtr creator(NodePtr outer, std::size_t begin) {
    expect_kw("new");
    if (at_op("<")) type_arguments();
    skip_annotations();
    std::string name;
    const bool primitive = is_primitive(peek());
    if (primitive) {
      name = std::string(peek().text);
      ++pos_;
    } else {
      name = expect_ident();
      if (at_op("<")) type_arguments();
      while (at_op(".")) {
        ++pos_;
        skip_annotations();
        name += '.';
        name += expect_ident();
        if (at_op("<")) type_arguments();
      }
    }
    if (at_op("[") || at_op("@")) {
      auto arr = make_other("array_creation", begin);
      arr->attrs.name = "array_creation";
      bool sized = false;
      for (;;) {
        skip_annotations();
        if (!at_op("[")) break;
        ++pos_;
        if (at_op("]")) {
          ++pos_;
          continue;
        }
        sized = true;
        arr->add(expression());
        expect_op("]");
      }
      if (at_op("{")) {
        arr->add(array_initializer());
      } else if (!sized) {
        fail("expected array dimension or initializer");
      }
      finish(*arr, begin);
      return arr;
    }
    if (primitive) fail("expected '[' after primitive type in array creation");
    auto n = std::make_unique<AstNode>(NodeKind::ClassInstanceCreation, Span{});
    n->attrs.name = name;
    if (outer) {
      n->attrs.has_receiver = true;
      if (outer->kind == NodeKind::NameRef) n->attrs.receiver = outer->attrs.name;
      n->add(std::move(outer));
    }
    arguments(*n);
    if (at_op("{")) {
      const std::size_t body_begin = pos_;
      auto body = std::make_unique<AstNode>(NodeKind::AnonymousClassBody, Span{});
      class_body(*body, false);
      finish(*body, body_begin);
      n->add(std::move(body));
    }
    finish(*n, begin);
    return n;
  }

  NodePtr postfix(NodePtr expr, std::size_t begin) {
    for (;;) {
      if (at_op(".")) {
        ++pos_;
        if (at_op("<")) {
          type_arguments();
          std::string name = at_kw("super") || at_kw("this") ? std::string(toks_[pos_++].text)
                                                              : expect_ident();
          expr = invocation(std::move(name), std::move(expr), begin);
        } else if (at_kw("new")) {
          expr = creator(std::move(expr), begin);
        } else if (at_kw("class")) {
          ++pos_;
          auto n = make_other("class_literal", begin);
          n->add(std::move(expr));
          expr = std::move(n);
        } else if (at_kw("this") || at_kw("super")) {
          const std::string word(peek().text);
          ++pos_;
          if (at_op("(")) {
            expr = invocation(word, std::move(expr), begin);
          } else if (expr->kind == NodeKind::NameRef) {
            expr->attrs.name += "." + word;
            finish(*expr, begin);
          } else {
            fail("unexpected '" + word + "'");
          }
        } else {
          std::string name = expect_ident();
          if (at_op("(")) {
            expr = invocation(std::move(name), std::move(expr), begin);
          } else if (expr->kind == NodeKind::NameRef) {
            expr->attrs.name += "." + name;
            finish(*expr, begin);
          } else {
            auto n = make_other(std::move(name), begin);
            n->attrs.has_receiver = true;
            n->add(std::move(expr));
            expr = std::move(n);
          }
        }
      } else if (at_op("[")) {
        if (peek(1).is_op("]")) {
          // Array type in `T[].class` or `T[]::new`.
          dims();
          auto n = make_other("array_type", begin);
          n->add(std::move(expr));
          if (at_op(".") && peek(1).is_keyword("class")) {
            pos_ += 2;
            n->attrs.name = "class_literal";
          } else if (!at_op("::")) {
            fail("expected '.class' or '::' after array type");
          }
          finish(*n, begin);
          expr = std::move(n);
          continue;
        }
        ++pos_;
        auto n = make_other("index", begin);
        n->add(std::move(expr));
        n->add(expression());
        expect_op("]");
        finish(*n, begin);
        expr = std::move(n);
      } else if (at_op("::")) {
        ++pos_;
        if (at_op("<")) type_arguments();
        if (at_kw("new")) {
          ++pos_;
        } else {
          expect_ident();
        }
        auto n = make_other("method_ref", begin);
        n->add(std::move(expr));
        finish(*n, begin);
        expr = std::move(n);
      } else if (at_op("<") && expr->kind == NodeKind::NameRef && generic_type_method_ref()) {
        // List<String>::size
        type_arguments();
        dims();
        continue;
      } else if (at_op("++") || at_op("--")) {
        ++pos_;
        auto n = make_other("postfix", begin);
        n->add(std::move(expr));
        finish(*n, begin);
        expr = std::move(n);
      } else {
        return expr;
      }
    }
  }

  bool generic_type_method_ref() const {
    std::size_t p = pos_;
    if (!scan_type_args(p)) return false;
    while (tok_at(p).is_op("[") && tok_at(p + 1).is_op("]")) p += 2;
    return tok_at(p).is_op("::");
  }

  const SourceFile& file_;
  const std::vector<Token>& toks_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::optional<std::string> package_;
  std::optional<std::string> primary_type_;
};

ParseOutcome failure(SourceFile file, std::string message, std::optional<Span> span) {
  ParseOutcome out;
  out.file = std::make_shared<const SourceFile>(std::move(file));
  out.result = ParseFailure{std::move(message), span};
  return out;
}

}  // namespace

ParseOutcome parse_source(SourceFile file) {
  if (const auto bad = find_invalid_utf8(file.text)) {
    const Span at = file.lines().span(*bad, *bad + 1);
    return failure(std::move(file), "file is not valid UTF-8", at);
  }
  std::vector<Token> tokens;
  try {
    tokens = tokenize(file.text);
  } catch (const LexError& e) {
    const Span at = file.lines().span(e.offset(), std::min(e.offset() + 1, file.text.size()));
    return failure(std::move(file), e.what(), at);
  }
  Parser parser(file, tokens);
  NodePtr root;
  try {
    root = parser.compilation_unit();
  } catch (const SyntaxError& e) {
    const Span at = file.lines().span(e.begin, e.end);
    return failure(std::move(file), e.message, at);
  }
  file.package_name = parser.package_name();
  file.primary_type_name = parser.primary_type();
  // The tree's spans refer to `file.text`; moving the SourceFile keeps the
  // byte offsets valid.
  ParseOutcome out;
  out.file = std::make_shared<const SourceFile>(std::move(file));
  out.result = std::move(root);
  return out;
}

ParseOutcome parse_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return failure(SourceFile(path, {}), "cannot open file", std::nullopt);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) return failure(SourceFile(path, {}), "error reading file", std::nullopt);
  return parse_source(SourceFile(path, std::move(buf).str()));
}

void prescan_declarations(SourceFile& file) {
  std::vector<Token> toks;
  try {
    toks = tokenize(file.text);
  } catch (const LexError&) {
    return;
  }
  std::size_t i = 0;
  const auto at = [&](std::size_t k) -> const Token& { return toks[std::min(k, toks.size() - 1)]; };
  // Package annotations, then `package a.b.c;`
  while (at(i).is_op("@") || at(i).kind == TokenKind::Identifier || at(i).is_op(".") ||
         at(i).is_op("(")) {
    if (at(i).is_op("(")) {
      int depth = 0;
      do {
        if (at(i).kind == TokenKind::End) return;
        if (at(i).is_op("(")) ++depth;
        if (at(i).is_op(")")) --depth;
        ++i;
      } while (depth > 0);
    } else {
      ++i;
    }
  }
  if (at(i).is_keyword("package")) {
    std::string name;
    for (++i; at(i).kind == TokenKind::Identifier || at(i).is_op("."); ++i) name += at(i).text;
    if (!name.empty()) file.package_name = name;
  } else {
    i = 0;
  }
  // First type declaration at brace depth zero.
  int depth = 0;
  for (; at(i).kind != TokenKind::End; ++i) {
    const Token& t = at(i);
    if (t.is_op("{")) ++depth;
    if (t.is_op("}")) --depth;
    if (depth == 0 && (t.is_keyword("class") || t.is_keyword("interface") || t.is_keyword("enum")) &&
        at(i + 1).kind == TokenKind::Identifier && !(i > 0 && at(i - 1).is_op("."))) {
      file.primary_type_name = std::string(at(i + 1).text);
      return;
    }
  }
}

ParseOutcome parse_string(std::string text, std::filesystem::path path) {
  return parse_source(SourceFile(std::move(path), std::move(text)));
}

}  // namespace exnlint
