#include "tomo/error.hpp"

namespace tomo {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::domain_mismatch: return "domain mismatch";
    case ErrorCode::bad_magic: return "bad magic";
    case ErrorCode::bad_header: return "bad header";
    case ErrorCode::payload_size_mismatch: return "payload size mismatch";
    case ErrorCode::non_finite_sample: return "non-finite sample";
    case ErrorCode::io_failure: return "i/o failure";
    case ErrorCode::budget_exceeded: return "budget exceeded";
    case ErrorCode::rank_deficient: return "rank deficient";
    case ErrorCode::singular_set: return "singular set";
  }
  return "unknown";
}

bool Diagnostics::mentions(const std::string& needle) const {
  for (const auto& w : warnings)
    if (w.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace tomo
