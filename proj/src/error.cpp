#include "cutproj/error.hpp"

namespace cutproj {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::SingularShift: return "SingularShift";
    case ErrorKind::DegenerateInternalSpace: return "DegenerateInternalSpace";
    case ErrorKind::TooManyComponents: return "TooManyComponents";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::BadComponent: return "BadComponent";
    case ErrorKind::UnboundedShape: return "UnboundedShape";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::ResonantFrequency: return "ResonantFrequency";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NoRecurrence: return "NoRecurrence";
    case ErrorKind::UnboundedRegion: return "UnboundedRegion";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace cutproj
