#pragma once

#include <stdexcept>
#include <string>

namespace lqp {

/// Failure categories shared by the C++ core and the C API.
enum class ErrorCode : int {
  ok = 0,
  invalid_argument = 1,
  degree_mismatch = 2,
  domain_error = 3,
  singular_jacobian = 4,
  non_convergence = 5,
  empty_mu_interval = 6,
  inadmissible_exponents = 7,
  incompatible_source = 8,
  unsupported = 9,
  io_error = 10,
  config_error = 11,
};

const char* to_string(ErrorCode code) noexcept;

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

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace lqp
