// exnlint/source.cpp - Source files, spans and offset-to-position mapping
#include "exnlint/source.hpp"

#include <algorithm>

namespace exnlint {

LineIndex::LineIndex(std::string_view text) : text_(text) {
  line_starts_.push_back(0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '\n') {
      line_starts_.push_back(i + 1);
    } else if (text[i] == '\r') {
      if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
      line_starts_.push_back(i + 1);
    }
  }
}

LineIndex::Position LineIndex::position(std::size_t offset) const {
  offset = std::min(offset, text_.size());
  auto it = std::upper_bound(line_starts_.begin(), line_starts_.end(), offset);
  const auto line = static_cast<std::uint32_t>(it - line_starts_.begin());
  const std::size_t start = line_starts_[line - 1];
  std::uint32_t col = 1;
  for (std::size_t i = start; i < offset; ++i) {
    // Continuation bytes do not start a new code point.
    if ((static_cast<unsigned char>(text_[i]) & 0xC0) != 0x80) ++col;
  }
  return {line, col};
}

Span LineIndex::span(std::size_t byte_start, std::size_t byte_end) const {
  const auto s = position(byte_start);
  const auto e = position(byte_end);
  return Span{s.line, s.col, e.line, e.col, byte_start, byte_end};
}

std::size_t LineIndex::line_start(std::uint32_t line) const {
  if (line == 0) return 0;
  if (line > line_starts_.size()) return text_.size();
  return line_starts_[line - 1];
}

std::size_t LineIndex::line_end(std::uint32_t line) const {
  std::size_t end = line < line_starts_.size() ? line_starts_[line] : text_.size();
  if (line >= 1 && line < line_starts_.size()) {
    // Strip the terminator that produced the next line start.
    if (end > 0 && text_[end - 1] == '\n') --end;
    if (end > 0 && text_[end - 1] == '\r') --end;
  }
  return std::max(end, line_start(line));
}

SourceFile::SourceFile(std::filesystem::path p, std::string t)
    : path(std::move(p)), text(std::move(t)), lines_(text) {}

SourceFile::SourceFile(const SourceFile& other)
    : path(other.path),
      text(other.text),
      package_name(other.package_name),
      primary_type_name(other.primary_type_name),
      lines_(text) {}

SourceFile& SourceFile::operator=(const SourceFile& other) {
  if (this != &other) {
    path = other.path;
    text = other.text;
    package_name = other.package_name;
    primary_type_name = other.primary_type_name;
    lines_ = LineIndex(text);
  }
  return *this;
}

// The line index views `text`; a moved std::string may relocate its buffer
// (small-string storage), so the index is always rebuilt.
SourceFile::SourceFile(SourceFile&& other) noexcept
    : path(std::move(other.path)),
      text(std::move(other.text)),
      package_name(std::move(other.package_name)),
      primary_type_name(std::move(other.primary_type_name)),
      lines_(text) {
  other.lines_ = LineIndex(other.text);
}

SourceFile& SourceFile::operator=(SourceFile&& other) noexcept {
  if (this != &other) {
    path = std::move(other.path);
    text = std::move(other.text);
    package_name = std::move(other.package_name);
    primary_type_name = std::move(other.primary_type_name);
    lines_ = LineIndex(text);
    other.lines_ = LineIndex(other.text);
  }
  return *this;
}

std::string SourceFile::snippet(const Span& span) const {
  const std::size_t begin = lines_.line_start(span.start_line);
  const std::size_t end = lines_.line_end(span.end_line);
  if (end <= begin) return {};
  std::string out = text.substr(begin, end - begin);
  // Normalize CR and CRLF terminators inside the range.
  std::string normalized;
  normalized.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] == '\r') {
      normalized.push_back('\n');
      if (i + 1 < out.size() && out[i + 1] == '\n') ++i;
    } else {
      normalized.push_back(out[i]);
    }
  }
  return normalized;
}

std::string SourceFile::display_path() const { return path.generic_string(); }

std::optional<std::size_t> find_invalid_utf8(std::string_view bytes) {
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(bytes[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return i;
    }
    if (i + len > n) return i;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return i;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return i;
    }
    i += len;
  }
  return std::nullopt;
}

}  // namespace exnlint
