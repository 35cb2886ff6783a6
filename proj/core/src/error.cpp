// Copyright 2026 The anderson-lab Authors.
// SPDX-License-Identifier: Apache-2.0
#include "anderson/error.hpp"

namespace anderson {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPowerOfTwo: return "NonPowerOfTwo";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::LatticeMismatch: return "LatticeMismatch";
    case ErrorKind::UnresolvedMollifier: return "UnresolvedMollifier";
    case ErrorKind::NonLatticeShift: return "NonLatticeShift";
    case ErrorKind::KernelDoesNotFit: return "KernelDoesNotFit";
    case ErrorKind::EpsilonMismatch: return "EpsilonMismatch";
    case ErrorKind::NoContraction: return "NoContraction";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::TooFewScales: return "TooFewScales";
    case ErrorKind::DtPolicyViolation: return "DtPolicyViolation";
    case ErrorKind::StabilityViolation: return "StabilityViolation";
    case ErrorKind::DenseTooLarge: return "DenseTooLarge";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::SchemaViolation: return "SchemaViolation";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace anderson
