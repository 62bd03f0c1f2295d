#pragma once

#include <stdexcept>
#include <string>

namespace fjl {

enum class ErrorCode {
  InvalidArgument = 1,
  OutOfDomain = 2,
  NonConvergence = 3,
  PositivityLoss = 4,
};

// All library failures are reported through this type; the C API maps the
// code onto fjl_status.
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

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace fjl
