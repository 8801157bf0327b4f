// Test helpers shared by the unit and acceptance suites.
#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "exnlint/cli.hpp"
#include "exnlint/rules.hpp"

namespace exnlint::testing {

namespace fs = std::filesystem;

fs::path data_dir();
fs::path fixture(std::string_view relative);
std::string read_text(const fs::path& path);
void write_text(const fs::path& path, std::string_view text);

// Every .java file below `dir`, sorted.
std::vector<fs::path> java_files_under(const fs::path& dir);

// Parses `source` and runs the given rules; a parse failure fails the
// calling test through an exception.
std::vector<RawFinding> lint(std::string source, const RuleSet& enabled = all_rules());
std::vector<std::string> rule_ids(const std::vector<RawFinding>& findings);
bool has_rule(const std::vector<RawFinding>& findings, RuleCode code);

// ---- independent token scanner -----------------------------------------------

struct ScanToken {
  std::string text;  // string and char literals keep their quotes
  std::uint32_t line;
};

// Minimal scanner for Java text with no knowledge of the grammar: drops
// comments and whitespace, keeps literals opaque.
std::vector<ScanToken> scan_tokens(std::string_view text);

// Number of `catch` keywords outside comments and literals.
std::size_t count_catch_keywords(std::string_view text);

// Token-level implementation of the PMD rules that overlap the shared rule
// set, independent of the exnlint parser.
struct ExternalHit {
  std::string checker;  // PMD rule name
  RuleCode counterpart;
  std::uint32_t line;
};
std::vector<ExternalHit> external_lint(std::string_view text);

// ---- random catch bodies -----------------------------------------------------

struct GeneratedCatch {
  std::string class_name;
  std::string param;
  std::string caught;
  std::vector<std::string> statements;  // top level of the outer catch body
  std::string extra_member;             // optional method after the handler

  // Full compilation unit with the statements inside the outer catch.
  std::string source() const;
  // Same unit with `stmt` inserted before top-level statement `index`.
  std::string source_with(std::size_t index, std::string_view stmt) const;
};

class CatchGenerator {
 public:
  explicit CatchGenerator(std::uint64_t seed) : rng_(seed) {}

  GeneratedCatch next();
  // A throw statement in one of several shapes, rethrowing `param`.
  std::string throw_statement(std::string_view param);
  std::size_t pick(std::size_t n);

 private:
  std::string statement(const std::string& param, int depth);
  std::string block(const std::string& param, int depth);

  std::mt19937_64 rng_;
  unsigned counter_ = 0;
};

// Writes `count` synthetic classes, spread over packages, below `dir`.
void write_synthetic_corpus(const fs::path& dir, std::size_t count, std::uint64_t seed);

// ---- process helpers ---------------------------------------------------------

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

// Runs the command-line driver in process.
CliResult run_cli(const std::vector<std::string>& args);

}  // namespace exnlint::testing
