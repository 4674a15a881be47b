#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semrank {

enum class ErrorCode {
  kEmptyDocument,
  kFormat,
  kDimension,
  kZeroVector,
  kOutOfVocabulary,
  kEmptyCorpus,
  kEmptyGraph,
  kNonFiniteWeight,
  kInvalidArgument,
  kInsufficientCalibration,
  kDegenerateReference,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Parse failure in a text input; line numbers are 1-based, 0 when unknown.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace semrank
