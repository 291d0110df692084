#pragma once

#include <stdexcept>
#include <string>

namespace qdgate {

// Every library failure derives from Error so callers (the CLI in
// particular) can map the kind onto an exit code without string matching.
enum class ErrorKind {
  InvalidArgument,
  Capacity,
  ContractViolation,
  Accuracy,
  NotCyclic,
  DegenerateDrive,
  CancellationFailed,
  DecompositionMismatch,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define QDGATE_DEFINE_ERROR(Name, Kind)                                     \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

QDGATE_DEFINE_ERROR(InvalidArgument, InvalidArgument)
QDGATE_DEFINE_ERROR(CapacityError, Capacity)
QDGATE_DEFINE_ERROR(ContractViolation, ContractViolation)
QDGATE_DEFINE_ERROR(AccuracyError, Accuracy)
QDGATE_DEFINE_ERROR(NotCyclicError, NotCyclic)
QDGATE_DEFINE_ERROR(DegenerateDriveError, DegenerateDrive)

#undef QDGATE_DEFINE_ERROR

}  // namespace qdgate
