#pragma once

#include <stdexcept>
#include <string>

namespace glospan {

enum class ErrorKind {
  TableNotAGroup,
  OrderBoundExceeded,
  NotASubgroup,
  FeetMismatch,
  ClassViolation,
  InfiniteHomSet,
  GroupMismatch,
  SkeletonIncomplete,
  InvalidTransferSystem,
  InvalidIndexingSystem,
  ParseError,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TableNotAGroup: return "TableNotAGroup";
    case ErrorKind::OrderBoundExceeded: return "OrderBoundExceeded";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::FeetMismatch: return "FeetMismatch";
    case ErrorKind::ClassViolation: return "ClassViolation";
    case ErrorKind::InfiniteHomSet: return "InfiniteHomSet";
    case ErrorKind::GroupMismatch: return "GroupMismatch";
    case ErrorKind::SkeletonIncomplete: return "SkeletonIncomplete";
    case ErrorKind::InvalidTransferSystem: return "InvalidTransferSystem";
    case ErrorKind::InvalidIndexingSystem: return "InvalidIndexingSystem";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace glospan
