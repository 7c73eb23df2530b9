// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/error.hpp"

namespace hammerforge {

std::string_view errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownConst: return "UnknownConst";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NonPropQuantBody: return "NonPropQuantBody";
    case ErrorCode::UnknownHyp: return "UnknownHyp";
    case ErrorCode::UnknownTheorem: return "UnknownTheorem";
    case ErrorCode::PropMismatch: return "PropMismatch";
    case ErrorCode::IllTypedInstantiation: return "IllTypedInstantiation";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::NoXm: return "NoXm";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnbalancedBlock: return "UnbalancedBlock";
    case ErrorCode::NotAForall: return "NotAForall";
    case ErrorCode::NotAnImp: return "NotAnImp";
    case ErrorCode::ApplyNoMatch: return "ApplyNoMatch";
    case ErrorCode::OccurrenceOutOfRange: return "OccurrenceOutOfRange";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::NotAnEquation: return "NotAnEquation";
    case ErrorCode::OpenGoalsAtQed: return "OpenGoalsAtQed";
    case ErrorCode::NoGoal: return "NoGoal";
    case ErrorCode::UnmangleError: return "UnmangleError";
    case ErrorCode::SpawnError: return "SpawnError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::OverlapWithoutNesting: return "OverlapWithoutNesting";
    case ErrorCode::SpanDrift: return "SpanDrift";
    case ErrorCode::BeforeFrontier: return "BeforeFrontier";
    case ErrorCode::NoFalsumStep: return "NoFalsumStep";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::StaleRevision: return "StaleRevision";
    case ErrorCode::UnknownJob: return "UnknownJob";
  }
  return "Unknown";
}

}  // namespace hammerforge
