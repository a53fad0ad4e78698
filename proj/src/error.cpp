#include "lqp/error.hpp"

namespace lqp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ok: return "ok";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degree_mismatch: return "degree_mismatch";
    case ErrorCode::domain_error: return "domain_error";
    case ErrorCode::singular_jacobian: return "singular_jacobian";
    case ErrorCode::non_convergence: return "non_convergence";
    case ErrorCode::empty_mu_interval: return "empty_mu_interval";
    case ErrorCode::inadmissible_exponents: return "inadmissible_exponents";
    case ErrorCode::incompatible_source: return "incompatible_source";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::config_error: return "config_error";
  }
  return "unknown";
}

}  // namespace lqp
