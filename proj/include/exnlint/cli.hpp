// exnlint/cli.hpp - Command-line driver
#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exnlint/config.hpp"
#include "exnlint/report.hpp"

namespace exnlint {

inline constexpr int kExitClean = 0;
inline constexpr int kExitPolicy = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kConfigEnvVar = "EXNLINT_CONFIG";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CliOptions {
  std::vector<std::filesystem::path> paths;
  std::optional<std::filesystem::path> config_path;
  std::vector<std::string> severity_overrides;
  std::vector<std::string> include;
  std::vector<std::string> exclude;
  std::optional<ReportFormat> format;
  std::optional<std::filesystem::path> output;
  std::optional<FailOn> fail_on;
  // 0 selects the hardware concurrency.
  unsigned jobs = 0;
  bool list_rules = false;
};

// Regular `.java` files under `paths`, deduplicated and sorted by their
// forward-slash path. Directory symlinks are not followed. Throws
// UsageError for a path that does not exist.
std::vector<std::filesystem::path> discover(const std::vector<std::filesystem::path>& paths);

// Resolves the configuration the way `run` does: --config, then
// $EXNLINT_CONFIG, then exnlint.json in the analysis root; followed by the
// command-line overrides. Throws ConfigError.
AnalysisConfig resolve_config(const CliOptions& options);

// Parses, filters and checks every file, `jobs` files at a time. The report
// does not depend on the number of jobs.
RunReport analyze(const std::vector<std::filesystem::path>& files, const AnalysisConfig& config,
                  unsigned jobs);

// One line per rule in catalog order: code, severity, description.
std::string list_rules(const AnalysisConfig& config);

// Whole run; writes the report to `out` (or --output) and diagnostics to
// `err`. Returns the process exit code.
int run(const CliOptions& options, std::ostream& out, std::ostream& err);

// Parses argv and calls run. Usage errors exit with kExitUsage.
int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace exnlint
