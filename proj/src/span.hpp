// span.hpp - Byte spans and line/column mapping.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace retype {

// Half-open byte interval [begin, end).
struct Span {
  uint32_t begin = 0;
  uint32_t end = 0;

  [[nodiscard]] uint32_t size() const { return end - begin; }
  [[nodiscard]] bool empty() const { return begin == end; }
  [[nodiscard]] bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  [[nodiscard]] bool contains_offset(uint32_t off) const {
    return begin <= off && off < end;
  }

  friend bool operator==(const Span& a, const Span& b) {
    return a.begin == b.begin && a.end == b.end;
  }
};

// 1-based line/column position derived from a byte offset.
struct LineCol {
  int line = 1;
  int col = 1;
};

// Maps byte offsets to 1-based line/column pairs.
class LineIndex {
 public:
  LineIndex() = default;
  explicit LineIndex(std::string_view text) {
    line_starts_.push_back(0);
    for (uint32_t i = 0; i < text.size(); ++i) {
      if (text[i] == '\n') line_starts_.push_back(i + 1);
    }
  }

  [[nodiscard]] LineCol lookup(uint32_t offset) const {
    if (line_starts_.empty()) return {};
    size_t lo = 0;
    size_t hi = line_starts_.size();
    while (lo + 1 < hi) {
      const size_t mid = (lo + hi) / 2;
      if (line_starts_[mid] <= offset)
        lo = mid;
      else
        hi = mid;
    }
    return {static_cast<int>(lo) + 1,
            static_cast<int>(offset - line_starts_[lo]) + 1};
  }

  // Byte offset of the start of a 1-based line, or npos if out of range.
  [[nodiscard]] size_t line_start(int line) const {
    if (line < 1 || static_cast<size_t>(line) > line_starts_.size())
      return std::string::npos;
    return line_starts_[static_cast<size_t>(line) - 1];
  }

  [[nodiscard]] size_t offset_of(int line, int col) const {
    const size_t start = line_start(line);
    if (start == std::string::npos) return std::string::npos;
    return start + static_cast<size_t>(col - 1);
  }

 private:
  std::vector<uint32_t> line_starts_;
};

}  // namespace retype
