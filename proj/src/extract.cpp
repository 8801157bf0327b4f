// exnlint/extract.cpp - Catch clauses, declarations and throw sites of a tree
#include "exnlint/extract.hpp"

namespace exnlint {

namespace {

void collect_catches(const AstNode& node, const std::optional<std::string>& method,
                     const SourceFile& file, std::vector<CatchContext>& out) {
  std::optional<std::string> inner = method;
  switch (node.kind) {
    case NodeKind::MethodDecl:
    case NodeKind::ConstructorDecl:
      inner = node.attrs.name;
      break;
    case NodeKind::Lambda:
      inner = std::string(kLambdaContext);
      break;
    case NodeKind::TypeDecl:
    case NodeKind::AnonymousClassBody:
      inner.reset();
      break;
    case NodeKind::Other:
      if (node.attrs.name == "initializer" || node.attrs.name == "field" ||
          node.attrs.name == "enum_constant") {
        inner = std::string(kInitializerContext);
      }
      break;
    case NodeKind::CatchClause: {
      CatchContext ctx;
      ctx.clause = &node;
      ctx.caught_types = node.attrs.caught_types;
      ctx.param_name = node.attrs.param_name;
      if (const AstNode* body = node.child_of_kind(NodeKind::Block)) {
        ctx.body = body->statements();
        ctx.body_span = body->span;
      }
      ctx.enclosing_method = method;
      ctx.file = &file;
      out.push_back(std::move(ctx));
      break;
    }
    default:
      break;
  }
  for (const auto& child : node.children) collect_catches(*child, inner, file, out);
}

}  // namespace

std::vector<CatchContext> extract_catch_contexts(const AstNode& root, const SourceFile& file) {
  std::vector<CatchContext> out;
  collect_catches(root, std::nullopt, file, out);
  return out;
}

std::vector<const AstNode*> extract_method_decls(const AstNode& root) {
  std::vector<const AstNode*> out;
  walk(root, [&](const AstNode& n) {
    if (n.kind == NodeKind::MethodDecl || n.kind == NodeKind::ConstructorDecl) out.push_back(&n);
    return true;
  });
  return out;
}

std::vector<const AstNode*> extract_throw_sites(const AstNode& root) {
  std::vector<const AstNode*> out;
  walk(root, [&](const AstNode& n) {
    if (n.kind == NodeKind::ThrowStmt) out.push_back(&n);
    return true;
  });
  return out;
}

}  // namespace exnlint
