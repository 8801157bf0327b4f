// exnlint/source.hpp - Source files, spans and offset-to-position mapping
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exnlint {

// Half-open byte range [byte_start, byte_end) with 1-based line/column of
// both ends. Columns count Unicode code points, not bytes.
struct Span {
  std::uint32_t start_line = 1;
  std::uint32_t start_col = 1;
  std::uint32_t end_line = 1;
  std::uint32_t end_col = 1;
  std::size_t byte_start = 0;
  std::size_t byte_end = 0;

  friend bool operator==(const Span&, const Span&) = default;
};

// Maps byte offsets in a text to line/column positions.
class LineIndex {
 public:
  LineIndex() = default;
  explicit LineIndex(std::string_view text);

  struct Position {
    std::uint32_t line;
    std::uint32_t col;
  };

  Position position(std::size_t offset) const;
  Span span(std::size_t byte_start, std::size_t byte_end) const;

  std::size_t line_count() const { return line_starts_.size(); }
  // Byte offset of the first character of `line` (1-based).
  std::size_t line_start(std::uint32_t line) const;
  // Byte offset one past the last character of `line`, excluding the line
  // terminator.
  std::size_t line_end(std::uint32_t line) const;

 private:
  std::string_view text_;
  std::vector<std::size_t> line_starts_;
};

struct SourceFile {
  std::filesystem::path path;
  std::string text;
  std::optional<std::string> package_name;
  std::optional<std::string> primary_type_name;

  SourceFile() = default;
  SourceFile(std::filesystem::path p, std::string t);
  SourceFile(const SourceFile& other);
  SourceFile& operator=(const SourceFile& other);
  SourceFile(SourceFile&&) noexcept;
  SourceFile& operator=(SourceFile&&) noexcept;

  const LineIndex& lines() const { return lines_; }

  // Full text of lines start_line..end_line of `span`, joined by '\n',
  // without the trailing terminator.
  std::string snippet(const Span& span) const;

  // Forward-slash path string used in reports.
  std::string display_path() const;

 private:
  LineIndex lines_;
};

// Returns the byte offset of the first invalid sequence, or nullopt when the
// whole buffer is well-formed UTF-8.
std::optional<std::size_t> find_invalid_utf8(std::string_view bytes);

}  // namespace exnlint
