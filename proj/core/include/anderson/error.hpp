// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace anderson {

enum class ErrorKind {
  InvalidArgument,
  NonPowerOfTwo,
  UnsupportedDimension,
  LatticeMismatch,
  UnresolvedMollifier,
  NonLatticeShift,
  KernelDoesNotFit,
  EpsilonMismatch,
  NoContraction,
  BudgetExhausted,
  TooFewScales,
  DtPolicyViolation,
  StabilityViolation,
  DenseTooLarge,
  ConvergenceFailure,
  BallTooLarge,
  SchemaViolation,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; `kind()` discriminates.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);
  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace anderson
