#include "semrank/error.hpp"

namespace semrank {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyDocument: return "EmptyDocument";
    case ErrorCode::kFormat: return "FormatError";
    case ErrorCode::kDimension: return "DimensionError";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kOutOfVocabulary: return "OutOfVocabulary";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kNonFiniteWeight: return "NonFiniteWeight";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kInsufficientCalibration: return "InsufficientCalibration";
    case ErrorCode::kDegenerateReference: return "DegenerateReference";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

static std::string with_line(std::size_t line, const std::string& message) {
  if (line == 0) return message;
  return "line " + std::to_string(line) + ": " + message;
}

FormatError::FormatError(std::size_t line, const std::string& message)
    : Error(ErrorCode::kFormat, with_line(line, message)), line_(line) {}

}  // namespace semrank
