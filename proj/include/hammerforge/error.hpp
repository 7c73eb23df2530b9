// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hammerforge {

enum class ErrorCode {
  // kernel
  UnknownConst,
  TypeMismatch,
  NonPropQuantBody,
  UnknownHyp,
  UnknownTheorem,
  PropMismatch,
  IllTypedInstantiation,
  DuplicateName,
  // basis
  NoXm,
  // script
  SyntaxError,
  UnbalancedBlock,
  NotAForall,
  NotAnImp,
  ApplyNoMatch,
  OccurrenceOutOfRange,
  UnknownName,
  NotAnEquation,
  OpenGoalsAtQed,
  NoGoal,
  // tptp
  UnmangleError,
  // driver
  SpawnError,
  IoError,
  // hammer
  OverlapWithoutNesting,
  SpanDrift,
  BeforeFrontier,
  // reconstruct
  NoFalsumStep,
  // session
  UnknownSession,
  StaleRevision,
  UnknownJob,
};

std::string_view errorCodeName(ErrorCode code);

/// Half-open byte range into a UTF-8 source text.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(const Span& other) const {
    return begin <= other.begin && other.end <= end;
  }
  bool disjoint(const Span& other) const {
    return end <= other.begin || other.end <= begin;
  }
  friend bool operator==(const Span&, const Span&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<Span> span = std::nullopt)
      : std::runtime_error(message), code_(code), span_(span) {}

  ErrorCode code() const { return code_; }
  const std::optional<Span>& span() const { return span_; }

 private:
  ErrorCode code_;
  std::optional<Span> span_;
};

}  // namespace hammerforge
