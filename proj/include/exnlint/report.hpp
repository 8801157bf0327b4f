// exnlint/report.hpp - Severity-tagged findings and report rendering
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "exnlint/config.hpp"
#include "exnlint/parser.hpp"
#include "exnlint/rules.hpp"

namespace exnlint {

struct Finding {
  RuleCode rule;
  Severity severity;  // never Ignore
  std::string file;
  Span span;
  std::string message;
  std::string snippet;

  friend bool operator==(const Finding&, const Finding&) = default;
};

struct FileFailure {
  std::string file;
  std::string message;
  std::optional<Span> span;
};

struct RunReport {
  std::vector<Finding> findings;
  std::vector<FileFailure> parse_failures;
  std::size_t files_analyzed = 0;
  std::size_t files_skipped_by_filter = 0;

  std::size_t error_count() const;
  std::size_t warning_count() const;
};

// Outcome of processing one discovered file.
struct FileResult {
  enum class Status { Analyzed, Skipped, Failed };

  std::string file;
  Status status = Status::Analyzed;
  std::vector<RawFinding> findings;
  std::optional<ParseFailure> failure;
};

// Attaches severities, drops findings of ignored rules and sorts the rest by
// (file, line, column, rule code).
RunReport assemble(std::vector<FileResult> results, const AnalysisConfig& config);

// Errors first, then warnings; each finding followed by its snippet indented
// four spaces; summary line last.
std::string render_text(const RunReport& report);

// Compact single-line JSON document with deterministic key order.
std::string render_json(const RunReport& report);

// Findings recovered from render_json output. Byte offsets are not part of
// the document and come back as zero.
std::vector<Finding> findings_from_json(std::string_view json_text);

int exit_code(const RunReport& report, FailOn fail_on);

}  // namespace exnlint
