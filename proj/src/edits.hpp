// edits.hpp - Byte-exact edit application.
#pragma once

#include <string>
#include <vector>

#include "span.hpp"

namespace retype {

struct Edit {
  std::string file;
  Span span;
  std::string replacement;
};

// Applies edits to `source`, replacing each span with its replacement.
// Bytes outside the edit spans pass through unchanged. Zero-length spans
// are insertions; two insertions at the same offset apply in list order.
// Throws Error(Overlap) on overlapping spans, Error(Bounds) on spans past
// the end of the input.
std::string apply_edits(const std::string& source,
                        const std::vector<Edit>& edits);

}  // namespace retype
