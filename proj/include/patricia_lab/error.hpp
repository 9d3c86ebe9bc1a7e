#pragma once

#include <stdexcept>
#include <string>

namespace patricia_lab {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  depth_guard = 3,
  duplicate_string = 4,
  stream_fault = 5,
  io = 6,
  internal = 7,
};

// Single exception type for the core; the code survives the trip through the C API.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorCode::invalid_argument, what);
}

}  // namespace patricia_lab
