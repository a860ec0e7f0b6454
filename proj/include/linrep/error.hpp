// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace linrep {

enum class ErrorCode {
  Parse,
  InvalidArgument,
  NotPrimitive,
  NotPartitionRegular,
  MixedSignRequired,
  SearchSpaceTooLarge,
  ArityMismatch,
  BudgetExceeded,
  RetryExhausted,
  InsufficientPairs,
  SequenceExhausted,
  SupplyExhausted,
  WindowInsufficient,
  BoundedTarget,
  PreconditionViolation,
  VerificationFailed,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above; the C
/// API maps them onto its integer status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace linrep
