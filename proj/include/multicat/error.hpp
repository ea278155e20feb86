#pragma once

#include <stdexcept>
#include <string>

namespace multicat {

enum class ErrorCode {
  NotStrictlyIncreasing,
  NonPositiveEntry,
  EntryAbsent,
  EntryPresent,
  KOutOfRange,
  UnknownCell,
  NotComposable,
  UndefinedComposite,
  InvalidBase,
  BoundMismatch,
  BoundsTooSmall,
  TermNotMaterialized,
  BudgetExceeded,
  ParseError,
};

const char* to_string(ErrorCode code);

/// Every failing operation throws this; `code()` says which contract broke.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace multicat
