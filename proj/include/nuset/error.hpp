#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nuset {

enum class ErrorKind {
  ArityMismatch,
  NotComposable,
  IndexOutOfRange,
  NoLetter,
  AllLetters,
  DimensionOutOfRange,
  SyntaxError,
  ArityError,
  MissingFace,
  RangeError,
  UnknownFrame,
  SideConditionViolated,
  CoherenceMismatch,
  LawViolation,
  ValidationFailure,
  UnsupportedConstruct,
  NotATelescope,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NoLetter: return "NoLetter";
    case ErrorKind::AllLetters: return "AllLetters";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::ArityError: return "ArityError";
    case ErrorKind::MissingFace: return "MissingFace";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::UnknownFrame: return "UnknownFrame";
    case ErrorKind::SideConditionViolated: return "SideConditionViolated";
    case ErrorKind::CoherenceMismatch: return "CoherenceMismatch";
    case ErrorKind::LawViolation: return "LawViolation";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
    case ErrorKind::UnsupportedConstruct: return "UnsupportedConstruct";
    case ErrorKind::NotATelescope: return "NotATelescope";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nuset
