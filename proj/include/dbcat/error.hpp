#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dbcat {

enum class ErrorCode {
  ArityMismatch,
  ArityOutOfRange,
  UnknownConstant,
  UniverseTooLarge,
  EnumerationTooLarge,
  SyntaxError,
  UnknownRelation,
  ArityError,
  ResultNotInTarget,
  DomainMismatch,
  NotClosed,
  NotClosedDomain,
  NotParallel,
  FluxOutOfRange,
  NotMonic,
  NotAPullback,
  UnknownSuite,
  FormatError,
  IoError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library is an Error carrying a machine-readable
// code; the C API maps codes one-to-one onto dbcat_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorCode::SyntaxError,
              message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace dbcat
