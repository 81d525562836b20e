#pragma once

#include <stdexcept>
#include <string>

namespace nmskit {

// Mirrors nmskit_status in the C API; keep the numeric values in sync.
enum class ErrorCode {
  invalid_argument = 1,
  config = 2,
  domain = 3,
  precondition = 4,
  no_solution = 5,
  search_failure = 6,
  capacity = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace nmskit
