// exnlint/cli.cpp - Command-line driver
#include "exnlint/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "exnlint/parser.hpp"

namespace exnlint {

namespace fs = std::filesystem;

namespace {

std::string display_path(const fs::path& p) { return p.lexically_normal().generic_string(); }

bool is_java_file(const fs::directory_entry& entry) {
  std::error_code ec;
  return entry.is_regular_file(ec) && entry.path().extension() == ".java";
}

FileResult analyze_one(const fs::path& path, const AnalysisConfig& config, const RuleSet& enabled) {
  FileResult result;
  result.file = display_path(path);
  try {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      result.status = FileResult::Status::Failed;
      result.failure = ParseFailure{"cannot open file", std::nullopt};
      return result;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    SourceFile source(path, std::move(buf).str());
    prescan_declarations(source);
    if (!scope_filter(config, source)) {
      result.status = FileResult::Status::Skipped;
      return result;
    }
    const ParseOutcome outcome = parse_source(std::move(source));
    if (!outcome.ok()) {
      result.status = FileResult::Status::Failed;
      result.failure = outcome.failure();
      return result;
    }
    result.findings = run_all_rules(outcome, enabled);
  } catch (const std::exception& e) {
    result.status = FileResult::Status::Failed;
    result.findings.clear();
    result.failure = ParseFailure{std::string("internal error: ") + e.what(), std::nullopt};
  }
  return result;
}

std::optional<fs::path> default_config_path(const CliOptions& options) {
  if (options.config_path) return options.config_path;
  if (const char* env = std::getenv(kConfigEnvVar); env != nullptr && *env != '\0') {
    return fs::path(env);
  }
  fs::path root = ".";
  std::error_code ec;
  if (!options.paths.empty() && fs::is_directory(options.paths.front(), ec)) {
    root = options.paths.front();
  }
  fs::path candidate = root / kDefaultConfigName;
  if (fs::is_regular_file(candidate, ec)) return candidate;
  return std::nullopt;
}

}  // namespace

std::vector<fs::path> discover(const std::vector<fs::path>& paths) {
  std::vector<fs::path> found;
  for (const auto& root : paths) {
    std::error_code ec;
    const auto status = fs::status(root, ec);
    if (ec || !fs::exists(status)) {
      throw UsageError("path does not exist: " + root.generic_string());
    }
    if (fs::is_directory(status)) {
      fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
      if (ec) throw UsageError("cannot read directory: " + root.generic_string());
      for (const fs::recursive_directory_iterator end; it != end; it.increment(ec)) {
        if (ec) break;
        if (is_java_file(*it)) found.push_back(it->path());
      }
    } else {
      found.push_back(root);
    }
  }
  // Deduplicate by resolved location, keep the lexicographically first
  // spelling.
  std::sort(found.begin(), found.end(), [](const fs::path& a, const fs::path& b) {
    return display_path(a) < display_path(b);
  });
  std::vector<fs::path> out;
  std::set<fs::path> seen;
  for (const auto& p : found) {
    std::error_code ec;
    fs::path key = fs::weakly_canonical(p, ec);
    if (ec) key = p.lexically_normal();
    if (seen.insert(key).second) out.push_back(p);
  }
  return out;
}

AnalysisConfig resolve_config(const CliOptions& options) {
  AnalysisConfig config = load_config(default_config_path(options), options.severity_overrides);
  for (const auto& p : options.include) config.include_patterns.emplace_back(p);
  for (const auto& p : options.exclude) config.exclude_patterns.emplace_back(p);
  if (options.format) config.report_format = *options.format;
  if (options.fail_on) config.fail_on = *options.fail_on;
  return config;
}

RunReport analyze(const std::vector<fs::path>& files, const AnalysisConfig& config, unsigned jobs) {
  const RuleSet enabled = enabled_rules(config);
  std::vector<FileResult> results(files.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(files.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      results[i] = analyze_one(files[i], config, enabled);
    }
  };
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return assemble(std::move(results), config);
}

std::string list_rules(const AnalysisConfig& config) {
  std::ostringstream os;
  for (const auto& info : rule_catalog()) {
    const auto sev = to_string(config.severity(info.code));
    os << info.id << "  " << sev << std::string(8 - sev.size(), ' ') << info.description << '\n';
  }
  return os.str();
}

int run(const CliOptions& options, std::ostream& out, std::ostream& err) {
  AnalysisConfig config;
  try {
    config = resolve_config(options);
  } catch (const ConfigError& e) {
    err << "exnlint: error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (options.list_rules) {
    out << list_rules(config);
    return kExitClean;
  }
  if (options.paths.empty()) {
    err << "exnlint: error: no input paths given\n";
    return kExitUsage;
  }
  std::vector<fs::path> files;
  try {
    files = discover(options.paths);
  } catch (const UsageError& e) {
    err << "exnlint: error: " << e.what() << '\n';
    return kExitUsage;
  }

  const RunReport report = analyze(files, config, options.jobs);
  const std::string rendered =
      config.report_format == ReportFormat::Json ? render_json(report) : render_text(report);
  if (options.output) {
    std::ofstream file(*options.output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << rendered)) {
      err << "exnlint: error: cannot write " << options.output->generic_string() << '\n';
      return kExitUsage;
    }
  } else {
    out << rendered;
  }
  return exit_code(report, config.fail_on);
}

int main_with_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Detects exception-handling anti-patterns in Java source code", "exnlint"};
  CliOptions options;
  std::vector<std::string> paths;
  std::string config_path;
  std::string format;
  std::string output;
  std::string fail_on;
  std::string jobs = "auto";

  app.add_option("paths", paths, "Java files or directories to analyze");
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--severity", options.severity_overrides, "Per-rule severity override CODE=LEVEL")
      ->take_all()
      ->allow_extra_args(false);
  app.add_option("--include", options.include, "Only analyze types whose name matches REGEX")
      ->allow_extra_args(false);
  app.add_option("--exclude", options.exclude, "Skip types whose name matches REGEX")
      ->allow_extra_args(false);
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--output", output, "Write the report to FILE instead of stdout");
  app.add_option("--fail-on", fail_on, "Exit 1 when findings of this severity exist")
      ->check(CLI::IsMember({"error", "warning", "never"}));
  app.add_option("--jobs", jobs, "Number of files analyzed in parallel, or 'auto'");
  app.add_flag("--list-rules", options.list_rules, "Print the rule catalog and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "exnlint: error: " << e.what() << '\n';
    return kExitUsage;
  }

  for (const auto& p : paths) options.paths.emplace_back(p);
  if (!config_path.empty()) options.config_path = config_path;
  if (!format.empty()) options.format = parse_report_format(format);
  if (!output.empty()) options.output = output;
  if (!fail_on.empty()) options.fail_on = parse_fail_on(fail_on);
  if (jobs != "auto") {
    try {
      std::size_t used = 0;
      const long n = std::stol(jobs, &used);
      if (used != jobs.size() || n < 1) throw std::invalid_argument(jobs);
      options.jobs = static_cast<unsigned>(n);
    } catch (const std::exception&) {
      err << "exnlint: error: --jobs expects a positive integer or 'auto'\n";
      return kExitUsage;
    }
  }
  return run(options, out, err);
}

}  // namespace exnlint
