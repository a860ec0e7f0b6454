// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linrep/construction.hpp"
#include "linrep/forms.hpp"
#include "linrep/repcount.hpp"

namespace linrep {

/// How a block is laid out over the form's variables. The last variable in
/// `order` receives e_k, the others the growing deltas. Half-line runs put two
/// coefficients of opposite sign last so that e_k comes out large and
/// positive.
struct BlockLayout {
  std::vector<std::size_t> order;
  std::vector<BigInt> coefficients;  // form coefficients permuted by `order`
  std::vector<BigInt> bezout;        // sum coefficients[i] * bezout[i] == 1
};

/// Throws NotPrimitive, or MixedSignRequired for a half-line layout of a
/// form whose coefficients share one sign. Requires arity >= 2.
BlockLayout make_block_layout(const LinearForm& form, bool half_line);

struct BlockProposal {
  std::vector<BigInt> elements;  // d_{k,1..h}, e_k
  std::vector<BigInt> deltas;
  BigInt epsilon;
  BigInt remainder;  // u_k, in [0, |a_last|)
};

/// Default starting growth constant 4 * sum|a_i| * (h + 2), h = arity - 1.
BigInt default_growth(const LinearForm& form);

/// Spiral-least integer not represented by the current set.
BigInt next_target(const ConstructionState& state);

/// delta_1 = M * max(1, max|B|) + 1, delta_{i+1} = M * delta_i + 1; e_k from
/// the floored quotient so that u_k lies in [0, |a_last|); then everything is
/// shifted by (t - u_k) times the Bezout vector so the block represents t.
/// With a half-line bound the deltas are pushed up until every element is
/// >= the bound.
BlockProposal propose_block(const ConstructionState& state, const BlockLayout& layout,
                            const BigInt& target, const BigInt& growth);

struct BlockVerdict {
  bool ok = false;
  std::string reason;
  /// Integer whose count broke the rule, when there is one.
  std::optional<BigInt> offending;
  /// Classes the candidate adds on top of the current profile, as returned
  /// by added_classes(); empty when rejected before enumeration.
  std::map<BigInt, std::uint64_t> added;
};

/// Rejects duplicate or already present elements, then enumerates every class
/// of the enlarged set that involves the candidate: ok iff every integer is
/// represented at most once and the target exactly once.
BlockVerdict verify_block(const ConstructionState& state, std::span<const BigInt> candidate,
                          const BigInt& target, std::uint64_t budget = kDefaultTupleBudget);

struct UniqueBuildOptions {
  std::size_t steps = 0;
  BigInt d0 = 1;
  std::optional<BigInt> growth0;
  std::optional<BigInt> half_line;
  std::uint64_t budget = kDefaultTupleBudget;
  std::size_t retry_cap = 64;
};

/// Grows a unique representation basis step by step, doubling M_k on every
/// rejected block. Throws NotPrimitive, MixedSignRequired, BudgetExceeded or
/// RetryExhausted.
ConstructionState build_unique_basis(const LinearForm& form, const UniqueBuildOptions& options);

/// Post-hoc audit of a unique-basis construction, one flag per property.
struct UniqueAudit {
  bool blocks_disjoint = true;
  bool at_most_once = true;
  bool targets_exactly_once = true;
  bool prefix_stable = true;
  bool monotone_coverage = true;
  bool growth_certificate = true;
  bool half_line = true;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

UniqueAudit audit_unique_basis(const ConstructionState& state,
                               std::uint64_t budget = kDefaultTupleBudget);

}  // namespace linrep
