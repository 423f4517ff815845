#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tga {

// All validation failures carry a stable machine-readable code next to the
// human-readable message. The CLI maps these to exit code 2.
struct Error : std::runtime_error {
  std::string code;

  Error(std::string error_code, const std::string& message)
      : std::runtime_error(message), code(std::move(error_code)) {}
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
  throw Error(std::move(code), message);
}

inline void check(bool condition, const char* code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace tga
