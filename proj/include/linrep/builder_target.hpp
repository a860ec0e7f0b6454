// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linrep/construction.hpp"
#include "linrep/forms.hpp"
#include "linrep/repcount.hpp"
#include "linrep/target.hpp"

namespace linrep {

struct TargetBuildOptions {
  std::size_t steps = 0;
  BigInt d0 = 1;
  std::optional<BigInt> growth0;
  std::uint64_t budget = kDefaultTupleBudget;
  std::size_t retry_cap = 64;
};

/// Builds a set whose representation function grows towards `target` for a
/// primitive, partition regular form. Each step serves the first unsatisfied
/// slot of the multiset ordering with a block laid out as for unique bases,
/// accepted only if
///   - no count exceeds f and no zero of f gets represented, and
///   - no integer other than the served one that precedes it in the
///     ordering gains a representation.
/// M_k doubles on rejection. Throws NotPrimitive, NotPartitionRegular,
/// PreconditionViolation (single-variable form, or d0 already violates f),
/// BudgetExceeded, RetryExhausted.
ConstructionState build_for_target(const LinearForm& form, const TargetFunction& target,
                                   const TargetBuildOptions& options);

struct TargetReport {
  /// (n, count) with count > f(n), zeros of f excluded.
  std::vector<std::pair<BigInt, std::uint64_t>> overshoots;
  /// Zeros of f that are represented.
  std::vector<std::pair<BigInt, std::uint64_t>> zero_hits;

  bool ok() const { return overshoots.empty() && zero_hits.empty(); }
};

TargetReport check_counts_against_target(const LinearForm& form, const GroundSet& set,
                                         const TargetFunction& target,
                                         std::uint64_t budget = kDefaultTupleBudget);

/// Step-by-step replay of a target construction against a fresh enumeration
/// of every prefix.
struct TargetAudit {
  bool never_overshoot = true;
  bool avoids_zeros = true;
  bool target_progress = true;
  bool growth_certificate = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

TargetAudit audit_target_construction(const ConstructionState& state,
                                      const TargetFunction& target,
                                      std::uint64_t budget = kDefaultTupleBudget);

}  // namespace linrep
