// exnlint/rules.hpp - Exception-handling anti-pattern detectors
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exnlint/ast.hpp"
#include "exnlint/extract.hpp"
#include "exnlint/parser.hpp"
#include "exnlint/source.hpp"

namespace exnlint {

// Declaration order is catalog order.
enum class RuleCode {
  PSTE,
  LGTE,
  WEPG,
  RRGC,
  RNHR,
  MLLM,
  CTGE,
  LGRN,
  PSRN,
  THGE,
  INEE,
  LGFT,
  CNPE,
  TNPE,
};

inline constexpr std::size_t kRuleCount = 14;

struct RuleInfo {
  RuleCode code;
  std::string_view id;
  std::string_view description;
};

// All rules in catalog order.
const std::array<RuleInfo, kRuleCount>& rule_catalog();
const RuleInfo& rule_info(RuleCode code);
std::string_view to_string(RuleCode code);
// Case-insensitive lookup of a four-letter code.
std::optional<RuleCode> parse_rule_code(std::string_view text);

using RuleSet = std::set<RuleCode>;
RuleSet all_rules();

struct RawFinding {
  RuleCode rule;
  Span span;
  std::filesystem::path file;
  std::string message;
  std::string snippet;
};

using StatementList = std::span<const AstNode* const>;

// ---- shared predicates ------------------------------------------------------
//
// "Within a body" means lexically inside it without entering lambda bodies,
// anonymous class bodies or local class declarations: that code runs in a
// different execution context and does not handle the caught exception.

enum class LogLevel { Trace, Debug, Info, Warn, Error, Fatal };

struct LoggingCall {
  std::optional<LogLevel> level;
};

// Receiver/method-name heuristic over `log.error(...)`-style calls.
std::optional<LoggingCall> logging_invocation(const AstNode& node);
bool is_logging_invocation(const AstNode& node);

// `param.printStackTrace(...)`, any overload.
bool is_print_stack_trace(const AstNode& node, std::string_view param_name);

bool contains_throw(StatementList body);
bool contains_return_null(StatementList body);

// Every `param.method(...)` call anywhere in the body, in source order.
std::vector<const AstNode*> calls_on_param(StatementList body, std::string_view param_name,
                                           std::string_view method);

// True when `name` is `simple` or its java.lang-qualified form.
bool is_lang_type(std::string_view name, std::string_view simple);

// ---- detectors --------------------------------------------------------------

std::vector<RawFinding> detect_pste(const CatchContext& ctx);
std::vector<RawFinding> detect_lgte(const CatchContext& ctx);
std::vector<RawFinding> detect_wepg(const CatchContext& ctx);
std::vector<RawFinding> detect_rrgc(const CatchContext& ctx);
std::vector<RawFinding> detect_rnhr(const CatchContext& ctx);
std::vector<RawFinding> detect_mllm(const CatchContext& ctx);
std::vector<RawFinding> detect_ctge(const CatchContext& ctx);
std::vector<RawFinding> detect_lgrn(const CatchContext& ctx);
std::vector<RawFinding> detect_psrn(const CatchContext& ctx);
std::vector<RawFinding> detect_thge(const AstNode& decl, const SourceFile& file);
std::vector<RawFinding> detect_inee(const CatchContext& ctx);
std::vector<RawFinding> detect_lgft(const CatchContext& ctx);
std::vector<RawFinding> detect_cnpe(const CatchContext& ctx);
std::vector<RawFinding> detect_tnpe(const AstNode& site, const SourceFile& file);

// Applies every enabled detector to every catch clause, declaration and
// throw site of a successfully parsed file. Ordered by (span start, code).
std::vector<RawFinding> run_all_rules(const ParseOutcome& outcome, const RuleSet& enabled);

}  // namespace exnlint
