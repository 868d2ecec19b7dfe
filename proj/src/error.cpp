#include "mms/error.hpp"

namespace mms {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadParam: return "BadParam";
    case ErrorCode::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NonpositiveLength: return "NonpositiveLength";
    case ErrorCode::NegativeMeasure: return "NegativeMeasure";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::DegenerateRadii: return "DegenerateRadii";
    case ErrorCode::SamePoles: return "SamePoles";
    case ErrorCode::PoleNotInterior: return "PoleNotInterior";
    case ErrorCode::NotSeparating: return "NotSeparating";
    case ErrorCode::LevelTooClose: return "LevelTooClose";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::DeltaTooSmall: return "DeltaTooSmall";
    case ErrorCode::EmptySchedule: return "EmptySchedule";
    case ErrorCode::NoValidSeparator: return "NoValidSeparator";
    case ErrorCode::NotConnectedInRegion: return "NotConnectedInRegion";
    case ErrorCode::ConstantFunction: return "ConstantFunction";
    case ErrorCode::EmptyBall: return "EmptyBall";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::IO: return "IO";
  }
  return "Unknown";
}

ErrorCategory error_category(ErrorCode code) {
  switch (code) {
    case ErrorCode::IO:
      return ErrorCategory::IO;
    case ErrorCode::NoValidSeparator:
    case ErrorCode::NotConnectedInRegion:
      return ErrorCategory::Computation;
    default:
      return ErrorCategory::Validation;
  }
}

}  // namespace mms
