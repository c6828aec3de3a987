// util.hpp - File IO, hashing, and small shared helpers.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace retype {

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

// FNV-1a 64-bit content hash rendered as 16 hex digits. Used only for
// staleness detection, not security.
std::string content_hash(std::string_view data);

// UTC timestamp "YYYYMMDDTHHMMSS".
std::string utc_timestamp();

}  // namespace retype
