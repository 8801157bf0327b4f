// exnlint/config.cpp - Severity map, scope patterns and report options
#include "exnlint/config.hpp"

#include <algorithm>
#include <boost/regex.hpp>
#include <cctype>
#include <fstream>
#include "json.hpp"
#include <sstream>

namespace exnlint {

namespace {

std::string lowercase(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<RegexPattern> pattern_list(const nlohmann::json& value, std::string_view key,
                                       std::string_view origin) {
  if (!value.is_array()) {
    throw ConfigError(std::string(origin) + ": \"" + std::string(key) +
                      "\" must be an array of strings");
  }
  std::vector<RegexPattern> out;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw ConfigError(std::string(origin) + ": \"" + std::string(key) +
                        "\" must be an array of strings");
    }
    out.emplace_back(item.get<std::string>());
  }
  return out;
}

std::string string_value(const nlohmann::json& value, std::string_view key,
                         std::string_view origin) {
  if (!value.is_string()) {
    throw ConfigError(std::string(origin) + ": \"" + std::string(key) + "\" must be a string");
  }
  return value.get<std::string>();
}

}  // namespace

std::string_view to_string(Severity s) {
  switch (s) {
    case Severity::Error: return "error";
    case Severity::Warning: return "warning";
    case Severity::Ignore: return "ignore";
  }
  return "?";
}

std::string_view to_string(FailOn f) {
  switch (f) {
    case FailOn::Error: return "error";
    case FailOn::Warning: return "warning";
    case FailOn::Never: return "never";
  }
  return "?";
}

std::string_view to_string(ReportFormat f) {
  return f == ReportFormat::Json ? "json" : "text";
}

std::optional<Severity> parse_severity(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "error") return Severity::Error;
  if (s == "warning") return Severity::Warning;
  if (s == "ignore") return Severity::Ignore;
  return std::nullopt;
}

std::optional<FailOn> parse_fail_on(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "error") return FailOn::Error;
  if (s == "warning") return FailOn::Warning;
  if (s == "never") return FailOn::Never;
  return std::nullopt;
}

std::optional<ReportFormat> parse_report_format(std::string_view text) {
  const std::string s = lowercase(text);
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  return std::nullopt;
}

struct RegexPattern::Compiled {
  boost::regex re;
};

RegexPattern::RegexPattern(std::string source) : source_(std::move(source)) {
  try {
    compiled_ = std::make_shared<const Compiled>(Compiled{boost::regex(source_, boost::regex::perl)});
  } catch (const boost::regex_error& e) {
    throw ConfigError("invalid regular expression '" + source_ + "': " + e.what());
  }
}

bool RegexPattern::search(std::string_view subject) const {
  return boost::regex_search(subject.begin(), subject.end(), compiled_->re);
}

AnalysisConfig AnalysisConfig::defaults() {
  AnalysisConfig config;
  for (const auto& info : rule_catalog()) config.severities[info.code] = Severity::Warning;
  return config;
}

Severity AnalysisConfig::severity(RuleCode code) const {
  const auto it = severities.find(code);
  return it == severities.end() ? Severity::Warning : it->second;
}

AnalysisConfig parse_config(std::string_view json_text, std::string_view origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string(origin) + ": malformed JSON at byte " + std::to_string(e.byte) +
                      ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError(std::string(origin) + ": expected a JSON object");

  AnalysisConfig config = AnalysisConfig::defaults();
  for (const auto& [key, value] : doc.items()) {
    if (key == "severities") {
      if (!value.is_object()) {
        throw ConfigError(std::string(origin) + ": \"severities\" must be an object");
      }
      for (const auto& [code_text, level] : value.items()) {
        const auto code = parse_rule_code(code_text);
        if (!code) throw ConfigError(std::string(origin) + ": unknown rule code '" + code_text + "'");
        const auto sev = level.is_string() ? parse_severity(level.get<std::string>()) : std::nullopt;
        if (!sev) {
          const std::string shown = level.is_string() ? level.get<std::string>() : level.dump();
          throw ConfigError(std::string(origin) + ": invalid severity '" + shown + "' for " + code_text +
                            " (expected error, warning or ignore)");
        }
        config.severities[*code] = *sev;
      }
    } else if (key == "include") {
      config.include_patterns = pattern_list(value, key, origin);
    } else if (key == "exclude") {
      config.exclude_patterns = pattern_list(value, key, origin);
    } else if (key == "fail_on") {
      const auto text = string_value(value, key, origin);
      const auto f = parse_fail_on(text);
      if (!f) throw ConfigError(std::string(origin) + ": invalid fail_on '" + text + "'");
      config.fail_on = *f;
    } else if (key == "format") {
      const auto text = string_value(value, key, origin);
      const auto f = parse_report_format(text);
      if (!f) throw ConfigError(std::string(origin) + ": invalid format '" + text + "'");
      config.report_format = *f;
    } else {
      throw ConfigError(std::string(origin) + ": unknown key '" + key + "'");
    }
  }
  return config;
}

void apply_override(AnalysisConfig& config, std::string_view override_spec) {
  const auto eq = override_spec.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("malformed severity override '" + std::string(override_spec) +
                      "' (expected CODE=LEVEL)");
  }
  const auto code_text = override_spec.substr(0, eq);
  const auto level_text = override_spec.substr(eq + 1);
  const auto code = parse_rule_code(code_text);
  if (!code) throw ConfigError("unknown rule code '" + std::string(code_text) + "'");
  const auto sev = parse_severity(level_text);
  if (!sev) {
    throw ConfigError("invalid severity '" + std::string(level_text) + "' for " +
                      std::string(code_text) + " (expected error, warning or ignore)");
  }
  config.severities[*code] = *sev;
}

AnalysisConfig load_config(const std::optional<std::filesystem::path>& path,
                           std::span<const std::string> overrides) {
  AnalysisConfig config = AnalysisConfig::defaults();
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path->generic_string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    config = parse_config(buf.str(), path->generic_string());
  }
  for (const auto& o : overrides) apply_override(config, o);
  return config;
}

std::string scope_subject(const SourceFile& file) {
  const std::string type = file.primary_type_name.value_or(file.path.stem().string());
  if (file.package_name && !file.package_name->empty()) return *file.package_name + "." + type;
  return type;
}

bool scope_filter(const AnalysisConfig& config, const SourceFile& file) {
  const std::string subject = scope_subject(file);
  for (const auto& p : config.exclude_patterns) {
    if (p.search(subject)) return false;
  }
  if (config.include_patterns.empty()) return true;
  return std::any_of(config.include_patterns.begin(), config.include_patterns.end(),
                     [&](const RegexPattern& p) { return p.search(subject); });
}

RuleSet enabled_rules(const AnalysisConfig& config) {
  RuleSet out;
  for (const auto& info : rule_catalog()) {
    if (config.severity(info.code) != Severity::Ignore) out.insert(info.code);
  }
  return out;
}

}  // namespace exnlint
