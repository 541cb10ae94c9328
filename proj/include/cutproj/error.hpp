#pragma once

#include <stdexcept>
#include <string>

namespace cutproj {

enum class ErrorKind {
  InvalidArgument,
  SingularShift,
  DegenerateInternalSpace,
  TooManyComponents,
  SingularPoint,
  BadComponent,
  UnboundedShape,
  EmptyRegion,
  ResonantFrequency,
  Overflow,
  BudgetExceeded,
  NoRecurrence,
  UnboundedRegion,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace cutproj
