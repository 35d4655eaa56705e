#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nicefn {

// Machine-readable error categories. The names returned by error_code_name()
// are part of the CLI diagnostic format.
enum class ErrorCode {
  DimensionMismatch,
  SpdError,
  SingularMap,
  SolveFailure,
  SpecRejected,
  ParseError,
  InvalidInput,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class DimensionMismatch : public Error {
 public:
  explicit DimensionMismatch(const std::string& message)
      : Error(ErrorCode::DimensionMismatch, message) {}
};

class SpdError : public Error {
 public:
  explicit SpdError(const std::string& message)
      : Error(ErrorCode::SpdError, message) {}
};

class SingularMap : public Error {
 public:
  explicit SingularMap(const std::string& message)
      : Error(ErrorCode::SingularMap, message) {}
};

class SolveFailure : public Error {
 public:
  explicit SolveFailure(const std::string& message)
      : Error(ErrorCode::SolveFailure, message) {}
};

class SpecRejected : public Error {
 public:
  explicit SpecRejected(const std::string& message)
      : Error(ErrorCode::SpecRejected, message) {}
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& message)
      : Error(ErrorCode::InvalidInput, message) {}
};

// Syntax error in the expression language, located by 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column,
             std::vector<std::string> expected = {});

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace nicefn
