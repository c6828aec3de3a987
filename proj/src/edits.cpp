// edits.cpp
#include "edits.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace retype {

std::string apply_edits(const std::string& source,
                        const std::vector<Edit>& edits) {
  for (const Edit& e : edits) {
    if (e.span.begin > e.span.end || e.span.end > source.size())
      throw_error(ErrorCode::Bounds,
                  "edit span [" + std::to_string(e.span.begin) + ", " +
                      std::to_string(e.span.end) + ") out of bounds for " +
                      std::to_string(source.size()) + " bytes");
  }

  // Stable order: by start, then empty spans (insertions) first, then by
  // list position.
  std::vector<size_t> order(edits.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (edits[a].span.begin != edits[b].span.begin)
      return edits[a].span.begin < edits[b].span.begin;
    return edits[a].span.end < edits[b].span.end;
  });

  for (size_t i = 1; i < order.size(); ++i) {
    const Edit& prev = edits[order[i - 1]];
    const Edit& cur = edits[order[i]];
    if (cur.span.begin < prev.span.end)
      throw_error(ErrorCode::Overlap,
                  "overlapping edits: [" + std::to_string(prev.span.begin) +
                      ", " + std::to_string(prev.span.end) + ") and [" +
                      std::to_string(cur.span.begin) + ", " +
                      std::to_string(cur.span.end) + ")");
  }

  std::string out;
  out.reserve(source.size());
  size_t cursor = 0;
  for (const size_t idx : order) {
    const Edit& e = edits[idx];
    out.append(source, cursor, e.span.begin - cursor);
    out.append(e.replacement);
    cursor = e.span.end;
  }
  out.append(source, cursor, source.size() - cursor);
  return out;
}

}  // namespace retype
