#include "support.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>
#include <optional>
#include <stdexcept>
#include <utility>

#include "exnlint/parser.hpp"

namespace exnlint::testing {

fs::path data_dir() { return fs::path(EXNLINT_TEST_DATA); }

fs::path fixture(std::string_view relative) { return data_dir() / "fixtures" / relative; }

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_text(const fs::path& path, std::string_view text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::vector<fs::path> java_files_under(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".java") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RawFinding> lint(std::string source, const RuleSet& enabled) {
  const auto outcome = parse_string(std::move(source));
  if (!outcome.ok()) throw std::runtime_error("fixture does not parse: " + outcome.failure().message);
  return run_all_rules(outcome, enabled);
}

std::vector<std::string> rule_ids(const std::vector<RawFinding>& findings) {
  std::vector<std::string> out;
  for (const auto& f : findings) out.emplace_back(to_string(f.rule));
  return out;
}

bool has_rule(const std::vector<RawFinding>& findings, RuleCode code) {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const RawFinding& f) { return f.rule == code; });
}

// ---- scanner -------------------------------------------------------------------

namespace {

bool ident_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '_' || c == '$' || u >= 0x80;
}

}  // namespace

std::vector<ScanToken> scan_tokens(std::string_view text) {
  std::vector<ScanToken> out;
  std::uint32_t line = 1;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto newline_at = [&](std::size_t k) {
    return text[k] == '\n' || (text[k] == '\r' && (k + 1 >= n || text[k + 1] != '\n'));
  };
  while (i < n) {
    const char c = text[i];
    if (newline_at(i)) {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      while (i < n && text[i] != '\n' && text[i] != '\r') ++i;
    } else if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      i += 2;
      while (i < n && !(text[i] == '*' && i + 1 < n && text[i + 1] == '/')) {
        if (newline_at(i)) ++line;
        ++i;
      }
      i += 2;
    } else if (c == '"' || c == '\'') {
      const std::size_t start = i++;
      while (i < n && text[i] != c && text[i] != '\n') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      ++i;
      out.push_back({std::string(text.substr(start, std::min(i, n) - start)), line});
    } else if (ident_char(c)) {
      const std::size_t start = i;
      while (i < n && ident_char(text[i])) ++i;
      out.push_back({std::string(text.substr(start, i - start)), line});
    } else {
      out.push_back({std::string(1, c), line});
      ++i;
    }
  }
  return out;
}

std::size_t count_catch_keywords(std::string_view text) {
  std::size_t count = 0;
  for (const auto& t : scan_tokens(text)) count += t.text == "catch";
  return count;
}

// ---- external linter emulation ---------------------------------------------------

namespace {

struct TokenCursor {
  const std::vector<ScanToken>& toks;
  std::size_t i;

  bool at(std::string_view s, std::size_t ahead = 0) const {
    return i + ahead < toks.size() && toks[i + ahead].text == s;
  }
  bool done() const { return i >= toks.size(); }

  std::string qualified_name() {
    std::string name;
    while (!done() && ident_char(toks[i].text[0])) {
      name += toks[i].text;
      ++i;
      if (at(".") && i + 1 < toks.size() && ident_char(toks[i + 1].text[0])) {
        name += '.';
        ++i;
      } else {
        break;
      }
    }
    return name;
  }

  void skip_balanced(std::string_view open, std::string_view close) {
    int depth = 0;
    do {
      if (at(open)) ++depth;
      if (at(close)) --depth;
      ++i;
    } while (!done() && depth > 0);
  }
};

bool names(const std::string& name, std::string_view simple) {
  return name == simple || name == "java.lang." + std::string(simple);
}

struct CatchFrame {
  std::string param;
  int depth;
};

}  // namespace

std::vector<ExternalHit> external_lint(std::string_view text) {
  const auto toks = scan_tokens(text);
  std::vector<ExternalHit> hits;
  std::vector<CatchFrame> frames;
  std::optional<std::string> pending_param;
  int depth = 0;

  TokenCursor cur{toks, 0};
  while (!cur.done()) {
    const ScanToken& tok = toks[cur.i];
    if (tok.text == "{") {
      ++depth;
      if (pending_param) frames.push_back({*std::exchange(pending_param, std::nullopt), depth});
      ++cur.i;
    } else if (tok.text == "}") {
      if (!frames.empty() && frames.back().depth == depth) frames.pop_back();
      --depth;
      ++cur.i;
    } else if (tok.text == "catch" && cur.at("(", 1)) {
      cur.i += 2;
      std::vector<std::string> types;
      std::string last;
      while (!cur.done() && !cur.at(")")) {
        if (cur.at("@")) {
          ++cur.i;
          cur.qualified_name();
          if (cur.at("(")) cur.skip_balanced("(", ")");
        } else if (cur.at("final") || cur.at("|")) {
          ++cur.i;
        } else {
          if (!last.empty()) types.push_back(last);
          last = cur.qualified_name();
          if (last.empty()) ++cur.i;
        }
      }
      pending_param = last;
      for (const auto& type : types) {
        // AvoidCatchingGenericException also covers RuntimeException, which
        // has no counterpart here.
        if (names(type, "Exception")) {
          hits.push_back({"AvoidCatchingGenericException", RuleCode::CTGE, tok.line});
        }
        if (names(type, "NullPointerException")) {
          hits.push_back({"AvoidCatchingNPE", RuleCode::CNPE, tok.line});
        }
      }
    } else if (tok.text == "throws") {
      ++cur.i;
      bool generic = false;
      while (!cur.done() && !cur.at("{") && !cur.at(";")) {
        const std::string name = cur.qualified_name();
        if (name.empty()) {
          ++cur.i;
        } else if (names(name, "Exception")) {
          generic = true;
        }
      }
      if (generic) hits.push_back({"SignatureDeclareThrowsException", RuleCode::THGE, tok.line});
    } else if (tok.text == "throw" && cur.at("new", 1)) {
      cur.i += 2;
      const std::string type = cur.qualified_name();
      if (cur.at("<")) cur.skip_balanced("<", ">");
      if (names(type, "NullPointerException")) {
        hits.push_back({"AvoidThrowingNullPointerException", RuleCode::TNPE, tok.line});
      }
      if (!frames.empty() && cur.at("(")) {
        const std::string& param = frames.back().param;
        const std::size_t begin = cur.i;
        cur.skip_balanced("(", ")");
        bool passes_cause = false;
        for (std::size_t k = begin; k < cur.i; ++k) {
          if (toks[k].text == param && !(k + 1 < toks.size() && toks[k + 1].text == ".")) {
            passes_cause = true;
          }
        }
        if (!passes_cause) hits.push_back({"PreserveStackTrace", RuleCode::WEPG, tok.line});
      }
    } else {
      ++cur.i;
    }
  }
  return hits;
}

// ---- generator -----------------------------------------------------------------

namespace {

constexpr std::array kParams = {"e", "ex", "t", "fatal"};
constexpr std::array kCaught = {"Exception",
                                "java.lang.Exception",
                                "IOException",
                                "InterruptedException",
                                "NullPointerException",
                                "IOException | NullPointerException",
                                "IllegalArgumentException"};
constexpr std::array kReceivers = {"log",    "LOG",     "logger", "LOGGER", "Logger",
                                   "LOG_2",  "logging", "audit",  "list",   "this.log"};
constexpr std::array kMethods = {"trace", "debug", "info", "warn", "warning", "error",
                                 "fatal", "severe", "log", "add",  "println"};
constexpr std::array kMembers = {
    "",
    "",
    "    void close() throws Exception {\n    }\n",
    "    void require(Object o) {\n        if (o == null) throw new NullPointerException();\n    }\n",
    "    void load() throws IOException, java.lang.Exception {\n    }\n",
};

std::string indent(const std::string& text, std::string_view pad) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    out += pad;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

std::size_t CatchGenerator::pick(std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
}

std::string CatchGenerator::throw_statement(std::string_view param) {
  const std::string p(param);
  switch (pick(5)) {
    case 0: return "throw " + p + ";";
    case 1: return "throw new IllegalStateException(" + p + ");";
    case 2: return "throw new RuntimeException(\"failed: \" + " + p + ".getMessage());";
    case 3: return "if (resource.isCritical()) {\n    throw new IllegalStateException(" + p + ");\n}";
    default: return "throw new NullPointerException();";
  }
}

std::string CatchGenerator::block(const std::string& param, int depth) {
  std::string body;
  const std::size_t n = pick(4);
  for (std::size_t i = 0; i < n; ++i) body += statement(param, depth + 1) + "\n";
  return "{\n" + indent(body, "    ") + "}";
}

std::string CatchGenerator::statement(const std::string& p, int depth) {
  const unsigned k = ++counter_;
  const std::size_t kind = depth >= 3 ? pick(8) : pick(16);
  switch (kind) {
    case 0:
    case 1: {
      const std::string recv = kReceivers[pick(kReceivers.size())];
      const std::string meth = kMethods[pick(kMethods.size())];
      return recv + "." + meth + "(\"failed: \" + " + p + ");";
    }
    case 2: return p + ".printStackTrace();";
    case 3: return pick(2) ? "resource.lastError().printStackTrace();" : p + ".printStackTrace(System.err);";
    case 4: return "System.out.println(" + p + ");";
    case 5: return pick(2) ? "return null;" : "return resource.fallback();";
    case 6: return throw_statement(p);
    case 7: {
      switch (pick(7)) {
        case 0: return "cleanup();";
        case 1: return "count++;";
        case 2: return ";";
        case 3: return "String note = \"catch (x) { throw e; }\";";
        case 4: return "// catch later\ncleanup();";
        case 5: return "/* catch */ Object cause = " + p + ".getCause();";
        default: return "char c = '}';";
      }
    }
    case 8:
    case 9: {
      std::string s = "if (resource.isCritical()) " + block(p, depth);
      if (pick(2)) s += " else " + block(p, depth);
      return s;
    }
    case 10: return "java.util.concurrent.Callable<Object> c" + std::to_string(k) + " = () -> " + block(p, depth) + ";";
    case 11:
      return "resource.onClose(new Runnable() {\n    public void run() " + block(p, depth) + "\n});";
    case 12: {
      const std::string inner = "inner" + std::to_string(k);
      return "try {\n    resource.retry();\n} catch (IOException " + inner + ") " + block(inner, depth);
    }
    case 13: return "for (int i = 0; i < 3; i++) " + block(p, depth);
    case 14: return "synchronized (lock) " + block(p, depth);
    default: return "class Local" + std::to_string(k) + " {\n    void go() " + block(p, depth) + "\n}";
  }
}

GeneratedCatch CatchGenerator::next() {
  GeneratedCatch g;
  g.class_name = "Generated" + std::to_string(++counter_);
  g.param = kParams[pick(kParams.size())];
  g.caught = kCaught[pick(kCaught.size())];
  const std::size_t n = pick(6);
  for (std::size_t i = 0; i < n; ++i) g.statements.push_back(statement(g.param, 0));
  g.extra_member = kMembers[pick(kMembers.size())];
  return g;
}

std::string GeneratedCatch::source() const { return source_with(statements.size() + 1, ""); }

std::string GeneratedCatch::source_with(std::size_t index, std::string_view stmt) const {
  std::string body;
  for (std::size_t i = 0; i <= statements.size(); ++i) {
    if (i == index) body += std::string(stmt) + "\n";
    if (i < statements.size()) body += statements[i] + "\n";
  }
  std::string out = "import java.io.IOException;\n\nclass " + class_name + " {\n";
  out += "    private final Object lock = new Object();\n\n";
  out += "    Object handle(Resource resource) {\n";
  out += "        try {\n            return resource.read();\n";
  out += "        } catch (" + caught + " " + param + ") {\n";
  out += indent(body, "            ");
  out += "        }\n        return resource;\n    }\n";
  if (!extra_member.empty()) out += "\n" + extra_member;
  out += "}\n";
  return out;
}

void write_synthetic_corpus(const fs::path& dir, std::size_t count, std::uint64_t seed) {
  CatchGenerator gen(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const GeneratedCatch g = gen.next();
    const std::string pkg = "p" + std::to_string(i % 7);
    write_text(dir / "synth" / pkg / (g.class_name + ".java"),
               "package synth." + pkg + ";\n\n" + g.source());
  }
}

// ---- process helpers -------------------------------------------------------------

TempDir::TempDir() {
  std::random_device rd;
  std::ostringstream name;
  name << "exnlint-test-" << std::hex << rd() << rd();
  path_ = fs::temp_directory_path() / name.str();
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"exnlint"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace exnlint::testing
