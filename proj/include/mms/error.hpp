#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mms {

enum class ErrorCode {
  BadParam,
  DisconnectedGraph,
  DuplicateEdge,
  NonpositiveLength,
  NegativeMeasure,
  UnknownVertex,
  EmptySample,
  DegenerateRadii,
  SamePoles,
  PoleNotInterior,
  NotSeparating,
  LevelTooClose,
  TooLarge,
  EmptySet,
  DeltaTooSmall,
  EmptySchedule,
  NoValidSeparator,
  NotConnectedInRegion,
  ConstantFunction,
  EmptyBall,
  SchemaMismatch,
  IO,
};

/// Coarse classification used for process exit codes.
enum class ErrorCategory { Validation, Computation, IO };

std::string_view error_name(ErrorCode code);
ErrorCategory error_category(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mms
