#include "dyncorr/error.hpp"

namespace dyncorr {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::io: return "I/O error";
    case ErrorCode::parse: return "parse error";
    case ErrorCode::validation: return "validation error";
    case ErrorCode::out_of_range: return "out of range";
    case ErrorCode::mismatch: return "mismatch";
    case ErrorCode::infeasible: return "infeasible";
  }
  return "unknown error";
}

}  // namespace dyncorr
