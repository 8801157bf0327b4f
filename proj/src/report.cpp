// exnlint/report.cpp - Severity-tagged findings and report rendering
#include "exnlint/report.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace exnlint {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool finding_order(const Finding& a, const Finding& b) {
  if (a.file != b.file) return a.file < b.file;
  if (a.span.start_line != b.span.start_line) return a.span.start_line < b.span.start_line;
  if (a.span.start_col != b.span.start_col) return a.span.start_col < b.span.start_col;
  return to_string(a.rule) < to_string(b.rule);
}

void render_finding(std::ostringstream& os, const Finding& f) {
  os << f.file << ':' << f.span.start_line << ':' << f.span.start_col << " [" << to_string(f.rule)
     << "][" << upper(to_string(f.severity)) << "] " << f.message << '\n';
  std::istringstream lines(f.snippet);
  std::string line;
  while (std::getline(lines, line)) os << "    " << line << '\n';
}

}  // namespace

std::size_t RunReport::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [](const Finding& f) { return f.severity == Severity::Error; }));
}

std::size_t RunReport::warning_count() const {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(),
                    [](const Finding& f) { return f.severity == Severity::Warning; }));
}

RunReport assemble(std::vector<FileResult> results, const AnalysisConfig& config) {
  RunReport report;
  for (auto& r : results) {
    switch (r.status) {
      case FileResult::Status::Skipped:
        ++report.files_skipped_by_filter;
        continue;
      case FileResult::Status::Failed:
        report.parse_failures.push_back(FileFailure{
            r.file, r.failure ? r.failure->message : "parse failure",
            r.failure ? r.failure->span : std::nullopt});
        continue;
      case FileResult::Status::Analyzed:
        ++report.files_analyzed;
        break;
    }
    for (auto& raw : r.findings) {
      const Severity severity = config.severity(raw.rule);
      if (severity == Severity::Ignore) continue;
      report.findings.push_back(Finding{raw.rule, severity, r.file, raw.span,
                                        std::move(raw.message), std::move(raw.snippet)});
    }
  }
  std::stable_sort(report.findings.begin(), report.findings.end(), finding_order);
  std::stable_sort(report.parse_failures.begin(), report.parse_failures.end(),
                   [](const FileFailure& a, const FileFailure& b) { return a.file < b.file; });
  return report;
}

std::string render_text(const RunReport& report) {
  std::ostringstream os;
  for (const Severity group : {Severity::Error, Severity::Warning}) {
    for (const auto& f : report.findings) {
      if (f.severity == group) render_finding(os, f);
    }
  }
  for (const auto& failure : report.parse_failures) {
    os << failure.file;
    if (failure.span) os << ':' << failure.span->start_line << ':' << failure.span->start_col;
    os << ": parse failure: " << failure.message << '\n';
  }
  os << report.error_count() << " errors, " << report.warning_count() << " warnings, "
     << report.files_analyzed << " files analyzed, " << report.parse_failures.size()
     << " parse failures\n";
  return os.str();
}

std::string render_json(const RunReport& report) {
  ordered_json doc;
  doc["findings"] = ordered_json::array();
  for (const auto& f : report.findings) {
    ordered_json item;
    item["rule"] = std::string(to_string(f.rule));
    item["severity"] = std::string(to_string(f.severity));
    item["file"] = f.file;
    item["start_line"] = f.span.start_line;
    item["start_col"] = f.span.start_col;
    item["end_line"] = f.span.end_line;
    item["end_col"] = f.span.end_col;
    item["message"] = f.message;
    item["snippet"] = f.snippet;
    doc["findings"].push_back(std::move(item));
  }
  doc["parse_failures"] = ordered_json::array();
  for (const auto& failure : report.parse_failures) {
    ordered_json item;
    item["file"] = failure.file;
    item["message"] = failure.message;
    if (failure.span) {
      item["line"] = failure.span->start_line;
      item["col"] = failure.span->start_col;
    } else {
      item["line"] = nullptr;
      item["col"] = nullptr;
    }
    doc["parse_failures"].push_back(std::move(item));
  }
  ordered_json summary;
  summary["errors"] = report.error_count();
  summary["warnings"] = report.warning_count();
  summary["files_analyzed"] = report.files_analyzed;
  summary["files_skipped"] = report.files_skipped_by_filter;
  doc["summary"] = std::move(summary);
  // Invalid UTF-8 cannot reach a finding (such files fail to parse), but
  // file names are arbitrary bytes.
  return doc.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::vector<Finding> findings_from_json(std::string_view json_text) {
  const auto doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  std::vector<Finding> out;
  for (const auto& item : doc.at("findings")) {
    const auto rule = parse_rule_code(item.at("rule").get<std::string>());
    const auto severity = parse_severity(item.at("severity").get<std::string>());
    if (!rule || !severity) throw std::runtime_error("invalid finding in report");
    Finding f{*rule, *severity, item.at("file").get<std::string>(), Span{},
              item.at("message").get<std::string>(), item.at("snippet").get<std::string>()};
    f.span.start_line = item.at("start_line").get<std::uint32_t>();
    f.span.start_col = item.at("start_col").get<std::uint32_t>();
    f.span.end_line = item.at("end_line").get<std::uint32_t>();
    f.span.end_col = item.at("end_col").get<std::uint32_t>();
    out.push_back(std::move(f));
  }
  return out;
}

int exit_code(const RunReport& report, FailOn fail_on) {
  switch (fail_on) {
    case FailOn::Error: return report.error_count() > 0 ? 1 : 0;
    case FailOn::Warning: return report.findings.empty() ? 0 : 1;
    case FailOn::Never: return 0;
  }
  return 0;
}

}  // namespace exnlint
