#ifndef GINIFIELD_ERRORS_HPP
#define GINIFIELD_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ginifield {

enum class ErrorCode {
  EmptySample,
  NonPositiveValue,
  OutOfRange,
  LengthMismatch,
  SampleTooSmall,
  ZeroMean,
  ZeroNormalizer,
  ConfigError,
  MissingResidualFunctions,
  NearZeroDenominator,
  NegativeVariance,
  FileNotFound,
  MissingColumn,
  EmptyAfterFilter,
  BadParameters,
  NonIntegrable,
};

// Exit-code categories used by the CLI: usage -> 2, data -> 3, numeric -> 4.
enum class ErrorCategory { Usage, Data, Numeric };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);

[[noreturn]] inline void throw_error(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(error_code_name(code)) + ": " + message);
}

}  // namespace ginifield

#endif  // GINIFIELD_ERRORS_HPP
