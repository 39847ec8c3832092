#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semfx {

enum class ErrorCode {
  TagMismatch,
  DegreeTooSmall,
  OutOfRange,
  UnknownIndex,
  UnknownGenerator,
  UnsupportedTensor,
  NotRowStochastic,
  UnknownOutcome,
  MissingContinuation,
  SyntaxError,
  ScopeError,
  NormalizationError,
  UnsupportedCombination,
  DataDependence,
  SignatureMismatch,
  InvalidValue,
  InvalidPresentation,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::TagMismatch: return "TagMismatch";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnknownIndex: return "UnknownIndex";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::UnsupportedTensor: return "UnsupportedTensor";
    case ErrorCode::NotRowStochastic: return "NotRowStochastic";
    case ErrorCode::UnknownOutcome: return "UnknownOutcome";
    case ErrorCode::MissingContinuation: return "MissingContinuation";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ScopeError: return "ScopeError";
    case ErrorCode::NormalizationError: return "NormalizationError";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::DataDependence: return "DataDependence";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
/// Source-level errors also carry a 1-based line/column (0 when unknown).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(format(code, message, line, column)),
        code_(code),
        line_(line),
        column_(column) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(ErrorCode code, const std::string& message, std::size_t line,
                            std::size_t column) {
    std::string out(error_name(code));
    if (line != 0) {
      out += " at line " + std::to_string(line);
      if (column != 0) out += ", column " + std::to_string(column);
    }
    out += ": " + message;
    return out;
  }

  ErrorCode code_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace semfx
