#pragma once

#include <stdexcept>
#include <string>

namespace dyncorr {

enum class ErrorCode {
  invalid_argument,
  io,
  parse,
  validation,
  out_of_range,
  mismatch,
  infeasible,
};

const char* to_string(ErrorCode code) noexcept;

// All failures raised by the library carry a category so the C boundary can
// map them onto status codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dyncorr
