// exnlint/parser.hpp - Java 8 parser producing the simplified syntax tree
#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "exnlint/ast.hpp"
#include "exnlint/source.hpp"

namespace exnlint {

struct ParseFailure {
  std::string message;
  std::optional<Span> span;
};

// Result of parsing one file. An empty file parses to a CompilationUnit with
// no type declarations.
struct ParseOutcome {
  std::shared_ptr<const SourceFile> file;
  std::variant<std::unique_ptr<AstNode>, ParseFailure> result;

  bool ok() const { return std::holds_alternative<std::unique_ptr<AstNode>>(result); }
  const AstNode& root() const { return *std::get<std::unique_ptr<AstNode>>(result); }
  const ParseFailure& failure() const { return std::get<ParseFailure>(result); }
};

// Reads and parses a file. IO errors, invalid UTF-8 and syntax errors are
// reported as ParseFailure; this function does not throw for bad input.
ParseOutcome parse_file(const std::filesystem::path& path);

// Parses in-memory text. `file.package_name` and `file.primary_type_name` are
// filled from the parsed declarations.
ParseOutcome parse_source(SourceFile file);

// Fills package_name and primary_type_name from the token stream alone,
// without building a tree. Leaves them unset when the file cannot be lexed
// or declares no type.
void prescan_declarations(SourceFile& file);

// Convenience for tests and tools.
ParseOutcome parse_string(std::string text, std::filesystem::path path = "<memory>.java");

}  // namespace exnlint
