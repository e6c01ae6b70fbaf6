#include "ginifield/errors.hpp"

namespace ginifield {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonPositiveValue: return "NonPositiveValue";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::ZeroNormalizer: return "ZeroNormalizer";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::MissingResidualFunctions: return "MissingResidualFunctions";
    case ErrorCode::NearZeroDenominator: return "NearZeroDenominator";
    case ErrorCode::NegativeVariance: return "NegativeVariance";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::NonIntegrable: return "NonIntegrable";
  }
  return "UnknownError";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange:
    case ErrorCode::LengthMismatch:
    case ErrorCode::ConfigError:
    case ErrorCode::MissingResidualFunctions:
    case ErrorCode::BadParameters:
      return ErrorCategory::Usage;
    case ErrorCode::EmptySample:
    case ErrorCode::NonPositiveValue:
    case ErrorCode::SampleTooSmall:
    case ErrorCode::FileNotFound:
    case ErrorCode::MissingColumn:
    case ErrorCode::EmptyAfterFilter:
      return ErrorCategory::Data;
    case ErrorCode::ZeroMean:
    case ErrorCode::ZeroNormalizer:
    case ErrorCode::NearZeroDenominator:
    case ErrorCode::NegativeVariance:
    case ErrorCode::NonIntegrable:
      return ErrorCategory::Numeric;
  }
  return ErrorCategory::Usage;
}

}  // namespace ginifield
