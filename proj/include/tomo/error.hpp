#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tomo {

enum class ErrorCode {
  invalid_argument,
  domain_mismatch,
  bad_magic,
  bad_header,
  payload_size_mismatch,
  non_finite_sample,
  io_failure,
  budget_exceeded,
  rank_deficient,
  singular_set,
};

const char* to_string(ErrorCode code);

/// Error raised by every library operation. The code lets callers (the CLI in
/// particular) map failures to exit statuses without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, const std::string& message,
                    ErrorCode code = ErrorCode::invalid_argument) {
  if (!condition) fail(code, message);
}

/// Non-fatal numerical diagnostics (truncation defects, undersampled grids,
/// distributional regimes). Operations append to it when one is supplied.
struct Diagnostics {
  std::vector<std::string> warnings;

  void warn(std::string message) { warnings.push_back(std::move(message)); }
  bool empty() const { return warnings.empty(); }
  bool mentions(const std::string& needle) const;
};

}  // namespace tomo
