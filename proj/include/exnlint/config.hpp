// exnlint/config.hpp - Severity map, scope patterns and report options
#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exnlint/rules.hpp"
#include "exnlint/source.hpp"

namespace exnlint {

enum class Severity { Error, Warning, Ignore };
enum class FailOn { Error, Warning, Never };
enum class ReportFormat { Text, Json };

std::string_view to_string(Severity s);
std::string_view to_string(FailOn f);
std::string_view to_string(ReportFormat f);
// Case-insensitive.
std::optional<Severity> parse_severity(std::string_view text);
std::optional<FailOn> parse_fail_on(std::string_view text);
std::optional<ReportFormat> parse_report_format(std::string_view text);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A compiled regular expression with Perl/java.util.regex-style syntax,
// matched with unanchored search semantics.
class RegexPattern {
 public:
  // Throws ConfigError naming the pattern when it does not compile.
  explicit RegexPattern(std::string source);

  const std::string& source() const { return source_; }
  bool search(std::string_view subject) const;

 private:
  struct Compiled;
  std::string source_;
  std::shared_ptr<const Compiled> compiled_;
};

// Immutable once loaded; safe to share between threads.
struct AnalysisConfig {
  std::map<RuleCode, Severity> severities;
  std::vector<RegexPattern> include_patterns;
  std::vector<RegexPattern> exclude_patterns;
  FailOn fail_on = FailOn::Error;
  ReportFormat report_format = ReportFormat::Text;

  // Every rule at Warning, no patterns, fail on errors, text output.
  static AnalysisConfig defaults();

  Severity severity(RuleCode code) const;
};

inline constexpr std::string_view kDefaultConfigName = "exnlint.json";

// Parses a JSON configuration document over the defaults. `origin` names
// the document in error messages.
AnalysisConfig parse_config(std::string_view json_text, std::string_view origin = "config");

// Applies one "CODE=LEVEL" override.
void apply_override(AnalysisConfig& config, std::string_view override_spec);

// Reads `path` when given, then applies `overrides` left to right.
AnalysisConfig load_config(const std::optional<std::filesystem::path>& path,
                           std::span<const std::string> overrides);

// "<package>.<type>", or the type name alone without a package.
std::string scope_subject(const SourceFile& file);

// False when any exclude pattern matches the subject; otherwise true when
// there are no include patterns or one of them matches.
bool scope_filter(const AnalysisConfig& config, const SourceFile& file);

RuleSet enabled_rules(const AnalysisConfig& config);

}  // namespace exnlint
