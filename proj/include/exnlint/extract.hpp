// exnlint/extract.hpp - Catch clauses, declarations and throw sites of a tree
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exnlint/ast.hpp"
#include "exnlint/source.hpp"

namespace exnlint {

// Enclosing-method sentinels for catches outside any method body.
inline constexpr std::string_view kLambdaContext = "<lambda>";
inline constexpr std::string_view kInitializerContext = "<initializer>";

// One catch clause, the unit most detectors consume. Pointers refer into the
// tree the context was extracted from and share its lifetime.
struct CatchContext {
  const AstNode* clause = nullptr;
  std::vector<std::string> caught_types;
  std::string param_name;
  std::vector<const AstNode*> body;
  Span body_span;
  std::optional<std::string> enclosing_method;
  const SourceFile* file = nullptr;
};

// Contexts for every catch clause in source order (an outer catch precedes
// the catches nested in its body).
std::vector<CatchContext> extract_catch_contexts(const AstNode& root, const SourceFile& file);

// Every MethodDecl and ConstructorDecl, including those of nested, local and
// anonymous classes, in source order.
std::vector<const AstNode*> extract_method_decls(const AstNode& root);

// Every ThrowStmt in source order.
std::vector<const AstNode*> extract_throw_sites(const AstNode& root);

}  // namespace exnlint
