#pragma once

#include <stdexcept>
#include <string>

namespace acsv {

// Every failure the library can report. The kind drives CLI exit codes.
enum class ErrorKind {
  DegenerateInput,
  DivisionByZero,
  Inconclusive,
  PrecisionExhausted,
  NotZeroDimensional,
  Assumption,
  CapExceeded,
  Parse,
  Internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::DivisionByZero: return "possible-division-by-zero";
    case ErrorKind::Inconclusive: return "inconclusive";
    case ErrorKind::PrecisionExhausted: return "precision-exhausted";
    case ErrorKind::NotZeroDimensional: return "not-zero-dimensional";
    case ErrorKind::Assumption: return "assumption";
    case ErrorKind::CapExceeded: return "cap-exceeded";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace acsv
