// util.cpp
#include "util.hpp"

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "error.hpp"

namespace retype {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(ErrorCode::Io, "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_error(ErrorCode::Io, "cannot write file: " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw_error(ErrorCode::Io, "write failed: " + path);
}

std::string content_hash(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (const char c : data) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y%m%dT%H%M%S", &tm_utc);
  return buf;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::None: return "None";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Lex: return "Lex";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::Template: return "Template";
    case ErrorCode::Schema: return "Schema";
    case ErrorCode::MissingBinding: return "MissingBinding";
    case ErrorCode::Overlap: return "Overlap";
    case ErrorCode::Bounds: return "Bounds";
    case ErrorCode::Scope: return "Scope";
    case ErrorCode::Selector: return "Selector";
    case ErrorCode::PatternMismatch: return "PatternMismatch";
    case ErrorCode::StaleFile: return "StaleFile";
    case ErrorCode::ReparseFailure: return "ReparseFailure";
    case ErrorCode::JournalConsumed: return "JournalConsumed";
    case ErrorCode::Journal: return "Journal";
    case ErrorCode::Locked: return "Locked";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace retype
