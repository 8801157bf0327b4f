// exnlint/ast.hpp - Simplified Java syntax tree
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exnlint/source.hpp"

namespace exnlint {

enum class NodeKind {
  CompilationUnit,
  TypeDecl,
  MethodDecl,
  ConstructorDecl,
  Block,
  TryStmt,
  CatchClause,
  ThrowStmt,
  ReturnStmt,
  ExprStmt,
  MethodInvocation,
  ClassInstanceCreation,
  NameRef,
  Literal,
  Lambda,
  AnonymousClassBody,
  Other,
};

std::string_view to_string(NodeKind kind);

// Kind-specific attributes. Which fields are meaningful depends on the kind:
//
//   TypeDecl               name
//   MethodDecl/Ctor        name, throws, header
//   CatchClause            caught_types, param_name
//   MethodInvocation       name (invoked method), receiver (dotted text when
//                          the receiver is a name chain), has_receiver
//   ClassInstanceCreation  name (created type, no type arguments),
//                          has_receiver (qualified `outer.new T()`)
//   NameRef                name (dotted, e.g. "this.log")
//   Literal                is_null
//   Other                  name (construct label, e.g. "if", "cast", or
//                          the selected member for field accesses)
struct NodeAttrs {
  std::string name;
  std::string receiver;
  bool has_receiver = false;
  std::vector<std::string> caught_types;
  std::string param_name;
  std::vector<std::string> throws;
  std::optional<Span> header;
  bool is_null = false;
};

struct AstNode {
  NodeKind kind = NodeKind::Other;
  Span span;
  std::vector<std::unique_ptr<AstNode>> children;
  NodeAttrs attrs;

  AstNode() = default;
  AstNode(NodeKind k, Span s) : kind(k), span(s) {}
  AstNode(const AstNode&) = delete;
  AstNode& operator=(const AstNode&) = delete;
  AstNode(AstNode&&) = default;
  AstNode& operator=(AstNode&&) = default;

  AstNode& add(std::unique_ptr<AstNode> child) {
    children.push_back(std::move(child));
    return *children.back();
  }

  // First direct child of the given kind, or nullptr.
  const AstNode* child_of_kind(NodeKind k) const;

  // Receiver expression of a MethodInvocation/ClassInstanceCreation.
  const AstNode* receiver_node() const;

  // Argument expressions of a MethodInvocation/ClassInstanceCreation
  // (receiver and anonymous class body excluded).
  std::vector<const AstNode*> arguments() const;

  // Statements of a Block.
  std::vector<const AstNode*> statements() const;
};

// Pre-order walk. The callback returns false to skip a node's children.
void walk(const AstNode& node, const std::function<bool(const AstNode&)>& fn);

// Final identifier of a name-like expression: "log" for "this.log",
// the selected field for field accesses, empty otherwise.
std::string_view terminal_name(const AstNode& node);

// Indented kind/span dump for debugging and tests.
std::string dump(const AstNode& node);

}  // namespace exnlint
