#include "nicefn/errors.hpp"

namespace nicefn {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension_mismatch";
    case ErrorCode::SpdError: return "spd_error";
    case ErrorCode::SingularMap: return "singular_map";
    case ErrorCode::SolveFailure: return "solve_failure";
    case ErrorCode::SpecRejected: return "spec_rejected";
    case ErrorCode::ParseError: return "parse_error";
    case ErrorCode::InvalidInput: return "invalid_input";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column,
                       std::vector<std::string> expected)
    : Error(ErrorCode::ParseError, message), line_(line), column_(column), expected_(std::move(expected)) {}

}  // namespace nicefn
