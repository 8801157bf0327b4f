// exnlint/ast.cpp - Simplified Java syntax tree
#include "exnlint/ast.hpp"

#include <sstream>

namespace exnlint {

std::string_view to_string(NodeKind kind) {
  switch (kind) {
    case NodeKind::CompilationUnit: return "CompilationUnit";
    case NodeKind::TypeDecl: return "TypeDecl";
    case NodeKind::MethodDecl: return "MethodDecl";
    case NodeKind::ConstructorDecl: return "ConstructorDecl";
    case NodeKind::Block: return "Block";
    case NodeKind::TryStmt: return "TryStmt";
    case NodeKind::CatchClause: return "CatchClause";
    case NodeKind::ThrowStmt: return "ThrowStmt";
    case NodeKind::ReturnStmt: return "ReturnStmt";
    case NodeKind::ExprStmt: return "ExprStmt";
    case NodeKind::MethodInvocation: return "MethodInvocation";
    case NodeKind::ClassInstanceCreation: return "ClassInstanceCreation";
    case NodeKind::NameRef: return "NameRef";
    case NodeKind::Literal: return "Literal";
    case NodeKind::Lambda: return "Lambda";
    case NodeKind::AnonymousClassBody: return "AnonymousClassBody";
    case NodeKind::Other: return "Other";
  }
  return "?";
}

const AstNode* AstNode::child_of_kind(NodeKind k) const {
  for (const auto& c : children) {
    if (c->kind == k) return c.get();
  }
  return nullptr;
}

const AstNode* AstNode::receiver_node() const {
  if (!attrs.has_receiver || children.empty()) return nullptr;
  return children.front().get();
}

std::vector<const AstNode*> AstNode::arguments() const {
  std::vector<const AstNode*> out;
  for (std::size_t i = attrs.has_receiver ? 1 : 0; i < children.size(); ++i) {
    if (children[i]->kind == NodeKind::AnonymousClassBody) continue;
    out.push_back(children[i].get());
  }
  return out;
}

std::vector<const AstNode*> AstNode::statements() const {
  std::vector<const AstNode*> out;
  out.reserve(children.size());
  for (const auto& c : children) out.push_back(c.get());
  return out;
}

void walk(const AstNode& node, const std::function<bool(const AstNode&)>& fn) {
  // Explicit stack: deeply nested expressions (long string concatenations)
  // would otherwise recurse once per operand.
  std::vector<const AstNode*> stack{&node};
  while (!stack.empty()) {
    const AstNode* n = stack.back();
    stack.pop_back();
    if (!fn(*n)) continue;
    for (auto it = n->children.rbegin(); it != n->children.rend(); ++it) {
      stack.push_back(it->get());
    }
  }
}

std::string_view terminal_name(const AstNode& node) {
  if (node.kind == NodeKind::NameRef) {
    std::string_view name = node.attrs.name;
    const auto dot = name.rfind('.');
    return dot == std::string_view::npos ? name : name.substr(dot + 1);
  }
  if (node.kind == NodeKind::Other && node.attrs.has_receiver) {
    // Field access on a non-name expression: `foo().log`.
    return node.attrs.name;
  }
  return {};
}

namespace {

void dump_into(const AstNode& node, int depth, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(depth) * 2, ' ') << to_string(node.kind) << ' '
     << node.span.start_line << ':' << node.span.start_col << '-' << node.span.end_line << ':'
     << node.span.end_col;
  const auto& a = node.attrs;
  if (!a.name.empty()) os << " name=" << a.name;
  if (a.has_receiver && !a.receiver.empty()) os << " receiver=" << a.receiver;
  if (!a.caught_types.empty()) {
    os << " caught=";
    for (std::size_t i = 0; i < a.caught_types.size(); ++i) {
      os << (i ? "|" : "") << a.caught_types[i];
    }
  }
  if (!a.param_name.empty()) os << " param=" << a.param_name;
  if (!a.throws.empty()) {
    os << " throws=";
    for (std::size_t i = 0; i < a.throws.size(); ++i) os << (i ? "," : "") << a.throws[i];
  }
  if (a.is_null) os << " null";
  os << '\n';
  for (const auto& c : node.children) dump_into(*c, depth + 1, os);
}

}  // namespace

std::string dump(const AstNode& node) {
  std::ostringstream os;
  dump_into(node, 0, os);
  return os.str();
}

}  // namespace exnlint
