// error.hpp - Error codes and the exception type shared across the engine.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace retype {

enum class ErrorCode : int32_t {
  None = 0,
  Io,
  Lex,
  Parse,
  Template,
  Schema,
  MissingBinding,
  Overlap,
  Bounds,
  Scope,
  Selector,
  PatternMismatch,
  StaleFile,
  ReparseFailure,
  JournalConsumed,
  Journal,
  Locked,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  [[nodiscard]] ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Lex/parse errors additionally carry the byte offset of the failure.
class SyntaxError : public Error {
 public:
  SyntaxError(ErrorCode code, std::string message, uint32_t offset)
      : Error(code, std::move(message)), offset_(offset) {}

  [[nodiscard]] uint32_t offset() const { return offset_; }

 private:
  uint32_t offset_;
};

[[noreturn]] inline void throw_error(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

}  // namespace retype
