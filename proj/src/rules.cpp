// exnlint/rules.cpp - Exception-handling anti-pattern detectors
#include "exnlint/rules.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace exnlint {

namespace {

constexpr std::array<RuleInfo, kRuleCount> kCatalog = {{
    {RuleCode::PSTE, "PSTE",
     "Printing stack-trace and throwing Exception, choose one otherwise it results in multiple "
     "log messages (multiple-entries, duplication)"},
    {RuleCode::LGTE, "LGTE",
     "Logging and throwing Exception, choose one otherwise it results in multiple log messages "
     "(multiple-entries, duplication)"},
    {RuleCode::WEPG, "WEPG",
     "Wrapping the exception and passing getMessage() destroys the stack trace of original "
     "exception"},
    {RuleCode::RRGC, "RRGC",
     "Relying on the result of getCause makes the code fragile, use "
     "org.apache.commons.lang.exception.ExceptionUtils.getRootCause(Throwable throwable)"},
    {RuleCode::RNHR, "RNHR",
     "Just returns null instead of handling or re-throwing the exception, swallows the "
     "exception, losing the information forever"},
    {RuleCode::MLLM, "MLLM",
     "Using multi-line log messages causes problems when multiple threads are running in "
     "parallel, two log messages may end up spaced-out multiple lines apart in the log file, "
     "group together all log messages, regardless of the level"},
    {RuleCode::CTGE, "CTGE",
     "Catching generic Exception, catch the specific exception that can be thrown. If "
     "swallowing it then a problem but if re-throw then it is OK"},
    {RuleCode::LGRN, "LGRN",
     "Log and return null is wrong, instead of returning null, throw the exception, and let the "
     "caller deal with it"},
    {RuleCode::PSRN, "PSRN",
     "Print stack-trace and return null is wrong, instead of returning null, throw the "
     "exception, and let the caller deal with it"},
    {RuleCode::THGE, "THGE",
     "Throws generic Exception, defeats the purpose of using a checked exception, declare the "
     "specific checked exceptions that your method can throw"},
    {RuleCode::INEE, "INEE",
     "Ignoring or suppressing InterruptedException with an empty catch-clause is an "
     "anti-pattern, empty catch block prevents in determining that an interrupted exception "
     "occurred or knowing that the thread was interrupted"},
    {RuleCode::LGFT, "LGFT",
     "If this is really a fatal condition then the method should abort and notify the caller of "
     "the fatal condition with an appropriate exception rather than only using log.fatal in the "
     "catch block"},
    {RuleCode::CNPE, "CNPE",
     "NullPointerException is a logical or programming error in the code (result of a bug) and "
     "should be eliminated rather than catching. If you anticipate that a null will be returned "
     "then explicitly test for it"},
    {RuleCode::TNPE, "TNPE",
     "NullPointerException should not be thrown by the program as it is expected that it is "
     "thrown by the virtual machine"},
}};

bool opaque(const AstNode& n) {
  return n.kind == NodeKind::Lambda || n.kind == NodeKind::AnonymousClassBody ||
         n.kind == NodeKind::TypeDecl;
}

// Visits every node lexically within `body`, stopping at opaque nodes.
// The callback returns true to stop the traversal early.
bool any_in_scope(StatementList body, const std::function<bool(const AstNode&)>& pred) {
  bool found = false;
  for (const AstNode* stmt : body) {
    walk(*stmt, [&](const AstNode& n) {
      if (found || opaque(n)) return false;
      if (pred(n)) {
        found = true;
        return false;
      }
      return true;
    });
    if (found) return true;
  }
  return false;
}

void for_each_in_scope(StatementList body, const std::function<void(const AstNode&)>& fn) {
  for (const AstNode* stmt : body) {
    walk(*stmt, [&](const AstNode& n) {
      if (opaque(n)) return false;
      fn(n);
      return true;
    });
  }
}

bool is_param_ref(const AstNode* node, std::string_view param) {
  return node != nullptr && node->kind == NodeKind::NameRef && node->attrs.name == param;
}

bool is_param_call(const AstNode& n, std::string_view param, std::string_view method) {
  return n.kind == NodeKind::MethodInvocation && n.attrs.name == method &&
         is_param_ref(n.receiver_node(), param);
}

bool is_logger_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "log" || lower == "logger" || lower == "logging") return true;
  // ^(LOG|LOGGER)[0-9_]*$
  std::string_view rest;
  if (name.starts_with("LOGGER")) {
    rest = name.substr(6);
  } else if (name.starts_with("LOG")) {
    rest = name.substr(3);
  } else {
    return false;
  }
  return std::all_of(rest.begin(), rest.end(),
                     [](char c) { return (c >= '0' && c <= '9') || c == '_'; });
}

std::optional<std::optional<LogLevel>> logging_method_level(std::string_view method) {
  if (method == "trace") return LogLevel::Trace;
  if (method == "debug") return LogLevel::Debug;
  if (method == "info") return LogLevel::Info;
  if (method == "warn" || method == "warning") return LogLevel::Warn;
  if (method == "error" || method == "severe") return LogLevel::Error;
  if (method == "fatal") return LogLevel::Fatal;
  if (method == "log") return std::optional<LogLevel>{};
  return std::nullopt;
}

RawFinding make_finding(RuleCode rule, const Span& span, const SourceFile& file) {
  return RawFinding{rule, span, file.path, std::string(rule_info(rule).description),
                    file.snippet(span)};
}

std::vector<RawFinding> at_body(RuleCode rule, const CatchContext& ctx) {
  return {make_finding(rule, ctx.body_span, *ctx.file)};
}

bool has_logging(StatementList body) {
  return any_in_scope(body, [](const AstNode& n) { return is_logging_invocation(n); });
}

bool has_print_stack_trace(StatementList body, std::string_view param) {
  return any_in_scope(body, [&](const AstNode& n) { return is_print_stack_trace(n, param); });
}

bool catches(const CatchContext& ctx, std::string_view simple) {
  return std::any_of(ctx.caught_types.begin(), ctx.caught_types.end(),
                     [&](const std::string& t) { return is_lang_type(t, simple); });
}

}  // namespace

const std::array<RuleInfo, kRuleCount>& rule_catalog() { return kCatalog; }

const RuleInfo& rule_info(RuleCode code) { return kCatalog[static_cast<std::size_t>(code)]; }

std::string_view to_string(RuleCode code) { return rule_info(code).id; }

std::optional<RuleCode> parse_rule_code(std::string_view text) {
  if (text.size() != 4) return std::nullopt;
  std::string upper(text);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (const auto& info : kCatalog) {
    if (info.id == upper) return info.code;
  }
  return std::nullopt;
}

RuleSet all_rules() {
  RuleSet out;
  for (const auto& info : kCatalog) out.insert(info.code);
  return out;
}

bool is_lang_type(std::string_view name, std::string_view simple) {
  constexpr std::string_view kLang = "java.lang.";
  if (name == simple) return true;
  return name.size() == kLang.size() + simple.size() && name.starts_with(kLang) &&
         name.substr(kLang.size()) == simple;
}

std::optional<LoggingCall> logging_invocation(const AstNode& node) {
  if (node.kind != NodeKind::MethodInvocation) return std::nullopt;
  const AstNode* receiver = node.receiver_node();
  if (receiver == nullptr || !is_logger_name(terminal_name(*receiver))) return std::nullopt;
  const auto level = logging_method_level(node.attrs.name);
  if (!level) return std::nullopt;
  return LoggingCall{*level};
}

bool is_logging_invocation(const AstNode& node) { return logging_invocation(node).has_value(); }

bool is_print_stack_trace(const AstNode& node, std::string_view param_name) {
  return is_param_call(node, param_name, "printStackTrace");
}

bool contains_throw(StatementList body) {
  return any_in_scope(body, [](const AstNode& n) { return n.kind == NodeKind::ThrowStmt; });
}

bool contains_return_null(StatementList body) {
  return any_in_scope(body, [](const AstNode& n) {
    return n.kind == NodeKind::ReturnStmt && n.children.size() == 1 &&
           n.children.front()->kind == NodeKind::Literal && n.children.front()->attrs.is_null;
  });
}

std::vector<const AstNode*> calls_on_param(StatementList body, std::string_view param_name,
                                           std::string_view method) {
  std::vector<const AstNode*> out;
  for (const AstNode* stmt : body) {
    walk(*stmt, [&](const AstNode& n) {
      if (is_param_call(n, param_name, method)) out.push_back(&n);
      return true;
    });
  }
  return out;
}

std::vector<RawFinding> detect_pste(const CatchContext& ctx) {
  if (has_print_stack_trace(ctx.body, ctx.param_name) && contains_throw(ctx.body)) {
    return at_body(RuleCode::PSTE, ctx);
  }
  return {};
}

std::vector<RawFinding> detect_lgte(const CatchContext& ctx) {
  if (has_logging(ctx.body) && contains_throw(ctx.body)) return at_body(RuleCode::LGTE, ctx);
  return {};
}

std::vector<RawFinding> detect_wepg(const CatchContext& ctx) {
  std::vector<RawFinding> out;
  for_each_in_scope(ctx.body, [&](const AstNode& n) {
    if (n.kind != NodeKind::ThrowStmt || n.children.empty()) return;
    const AstNode& thrown = *n.children.front();
    if (thrown.kind != NodeKind::ClassInstanceCreation) return;
    const auto args = thrown.arguments();
    bool passes_message = false;
    bool passes_cause = false;
    for (const AstNode* arg : args) {
      if (is_param_ref(arg, ctx.param_name)) passes_cause = true;
      walk(*arg, [&](const AstNode& sub) {
        if (is_param_call(sub, ctx.param_name, "getMessage")) passes_message = true;
        return !passes_message;
      });
    }
    if (passes_message && !passes_cause) {
      out.push_back(make_finding(RuleCode::WEPG, n.span, *ctx.file));
    }
  });
  return out;
}

std::vector<RawFinding> detect_rrgc(const CatchContext& ctx) {
  const auto calls = calls_on_param(ctx.body, ctx.param_name, "getCause");
  if (calls.empty()) return {};
  return {make_finding(RuleCode::RRGC, calls.front()->span, *ctx.file)};
}

std::vector<RawFinding> detect_rnhr(const CatchContext& ctx) {
  if (contains_return_null(ctx.body) && !has_logging(ctx.body) &&
      !has_print_stack_trace(ctx.body, ctx.param_name) && !contains_throw(ctx.body)) {
    return at_body(RuleCode::RNHR, ctx);
  }
  return {};
}

std::vector<RawFinding> detect_mllm(const CatchContext& ctx) {
  int count = 0;
  for_each_in_scope(ctx.body, [&](const AstNode& n) {
    if (n.kind == NodeKind::ExprStmt && !n.children.empty() &&
        is_logging_invocation(*n.children.front())) {
      ++count;
    }
  });
  if (count >= 2) return at_body(RuleCode::MLLM, ctx);
  return {};
}

std::vector<RawFinding> detect_ctge(const CatchContext& ctx) {
  if (catches(ctx, "Exception") && !contains_throw(ctx.body)) return at_body(RuleCode::CTGE, ctx);
  return {};
}

std::vector<RawFinding> detect_lgrn(const CatchContext& ctx) {
  if (has_logging(ctx.body) && contains_return_null(ctx.body) && !contains_throw(ctx.body)) {
    return at_body(RuleCode::LGRN, ctx);
  }
  return {};
}

std::vector<RawFinding> detect_psrn(const CatchContext& ctx) {
  if (has_print_stack_trace(ctx.body, ctx.param_name) && contains_return_null(ctx.body) &&
      !contains_throw(ctx.body)) {
    return at_body(RuleCode::PSRN, ctx);
  }
  return {};
}

std::vector<RawFinding> detect_thge(const AstNode& decl, const SourceFile& file) {
  const auto& throws = decl.attrs.throws;
  const bool generic = std::any_of(throws.begin(), throws.end(), [](const std::string& t) {
    return is_lang_type(t, "Exception");
  });
  if (!generic) return {};
  return {make_finding(RuleCode::THGE, decl.attrs.header.value_or(decl.span), file)};
}

std::vector<RawFinding> detect_inee(const CatchContext& ctx) {
  if (catches(ctx, "InterruptedException") && ctx.body.empty()) {
    return at_body(RuleCode::INEE, ctx);
  }
  return {};
}

std::vector<RawFinding> detect_lgft(const CatchContext& ctx) {
  const bool fatal = any_in_scope(ctx.body, [](const AstNode& n) {
    const auto call = logging_invocation(n);
    return call && call->level == LogLevel::Fatal;
  });
  if (fatal && !contains_throw(ctx.body)) return at_body(RuleCode::LGFT, ctx);
  return {};
}

std::vector<RawFinding> detect_cnpe(const CatchContext& ctx) {
  if (catches(ctx, "NullPointerException")) return at_body(RuleCode::CNPE, ctx);
  return {};
}

std::vector<RawFinding> detect_tnpe(const AstNode& site, const SourceFile& file) {
  if (site.kind != NodeKind::ThrowStmt || site.children.empty()) return {};
  const AstNode& thrown = *site.children.front();
  if (thrown.kind == NodeKind::ClassInstanceCreation &&
      is_lang_type(thrown.attrs.name, "NullPointerException")) {
    return {make_finding(RuleCode::TNPE, site.span, file)};
  }
  return {};
}

std::vector<RawFinding> run_all_rules(const ParseOutcome& outcome, const RuleSet& enabled) {
  std::vector<RawFinding> out;
  if (!outcome.ok() || enabled.empty()) return out;
  const SourceFile& file = *outcome.file;
  const AstNode& root = outcome.root();

  using CatchDetector = std::vector<RawFinding> (*)(const CatchContext&);
  static constexpr std::array<std::pair<RuleCode, CatchDetector>, 12> kCatchDetectors = {{
      {RuleCode::PSTE, &detect_pste},
      {RuleCode::LGTE, &detect_lgte},
      {RuleCode::WEPG, &detect_wepg},
      {RuleCode::RRGC, &detect_rrgc},
      {RuleCode::RNHR, &detect_rnhr},
      {RuleCode::MLLM, &detect_mllm},
      {RuleCode::CTGE, &detect_ctge},
      {RuleCode::LGRN, &detect_lgrn},
      {RuleCode::PSRN, &detect_psrn},
      {RuleCode::INEE, &detect_inee},
      {RuleCode::LGFT, &detect_lgft},
      {RuleCode::CNPE, &detect_cnpe},
  }};

  auto append = [&out](std::vector<RawFinding>&& found) {
    std::move(found.begin(), found.end(), std::back_inserter(out));
  };

  for (const CatchContext& ctx : extract_catch_contexts(root, file)) {
    for (const auto& [code, detect] : kCatchDetectors) {
      if (enabled.contains(code)) append(detect(ctx));
    }
  }
  if (enabled.contains(RuleCode::THGE)) {
    for (const AstNode* decl : extract_method_decls(root)) append(detect_thge(*decl, file));
  }
  if (enabled.contains(RuleCode::TNPE)) {
    for (const AstNode* site : extract_throw_sites(root)) append(detect_tnpe(*site, file));
  }

  std::stable_sort(out.begin(), out.end(), [](const RawFinding& a, const RawFinding& b) {
    if (a.span.byte_start != b.span.byte_start) return a.span.byte_start < b.span.byte_start;
    return to_string(a.rule) < to_string(b.rule);
  });
  return out;
}

}  // namespace exnlint
