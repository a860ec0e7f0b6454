// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "linrep/construction.hpp"
#include "linrep/repcount.hpp"
#include "linrep/target.hpp"

namespace linrep {

/// The difference form x_1 - x_2.
LinearForm difference_form();

/// A finite sequence s_1..s_N of positive integers (1-based accessors).
class PlentifulSequence {
 public:
  PlentifulSequence() = default;
  /// Throws InvalidArgument on a non-positive term.
  explicit PlentifulSequence(std::vector<BigInt> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<BigInt>& terms() const noexcept { return terms_; }
  /// s_l + ... + s_m for 1 <= l <= m <= size().
  BigInt partial_sum(std::size_t l, std::size_t m) const;

  friend bool operator==(const PlentifulSequence&, const PlentifulSequence&) = default;

 private:
  std::vector<BigInt> terms_;
  std::vector<BigInt> prefix_;  // prefix_[i] = s_1 + ... + s_i
};

/// f(s_l + ... + s_m) > 1 for every 1 <= l <= m <= N. O(N^2).
bool is_plentiful(const PlentifulSequence& seq, const TargetFunction& target);
/// Same test against the representation counts of a concrete set.
bool is_plentiful(const PlentifulSequence& seq, const RepProfile& profile);

/// A possibly unbounded source of sequence terms for the infinite-case
/// construction. Indices are 1-based and arbitrary precision.
class SequenceSource {
 public:
  virtual ~SequenceSource() = default;
  /// nullopt for an endless source.
  virtual std::optional<BigInt> length() const = 0;
  /// s_from + ... + s_to, from <= to.
  virtual BigInt run_sum(const BigInt& from, const BigInt& to) const = 0;
  /// Smallest `to` >= from with run_sum(from, to) > bound, nullopt if the
  /// source runs out first.
  virtual std::optional<BigInt> first_run_exceeding(const BigInt& from,
                                                    const BigInt& bound) const = 0;
  /// Some (from, to) with run_sum(from, to) == value, if one exists.
  virtual std::optional<std::pair<BigInt, BigInt>> find_run(const BigInt& value) const = 0;
  /// Whether the whole source is plentiful for the target.
  virtual bool plentiful_for(const TargetFunction& target) const = 0;
  virtual std::string describe() const = 0;
};

/// Wraps an explicit finite sequence.
std::unique_ptr<SequenceSource> finite_source(PlentifulSequence seq);
/// The pattern repeated forever, e.g. {1} for 1, 1, 1, ...
std::unique_ptr<SequenceSource> periodic_source(PlentifulSequence pattern);

struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// f(n) == f(-n) and f(0) == 1.
CheckReport check_even_normalized(const TargetFunction& target);

/// Any n with f(n) >= 3 needs another m outside {n, -n, 0} with f(m) >= 2.
CheckReport check_three_rep_obstruction(const TargetFunction& target);

/// Picks the pairs (x, y) in the set with x - y = n, takes the first
/// length + 1 of them by increasing x and returns the gaps between
/// consecutive x. The result is checked to be plentiful for the set's own
/// representation function before it is returned. Throws InsufficientPairs
/// or InvalidArgument (n == 0).
PlentifulSequence extract_plentiful(const GroundSet& set, const BigInt& n, std::size_t length,
                                    std::uint64_t budget = kDefaultTupleBudget);

/// One representation a - b = n kept in the ledger, with the sequence index
/// tying it to the next anchor of the same n when known.
struct LedgerRep {
  BigInt anchor;
  BigInt partner;
  std::optional<BigInt> witness;
};

struct DiffConstructionState {
  ConstructionState base;
  /// For n > 0 with f(n) > 1: its representations sorted by anchor.
  std::map<BigInt, std::vector<LedgerRep>> ledger;
};

struct DiffBuildOptions {
  std::size_t steps = 0;
  BigInt d0 = 1;
  std::uint64_t budget = kDefaultTupleBudget;
};

/// Targets with some infinite value. Case f(t) = 1 (or no representation
/// yet): x > 2|t| + 3 M_k, y = x - t. Case f(t) > 1 with p representations:
/// x = a_p + s_{m_p} + ... + s_{m_{p+1} - 1} with m_{p+1} minimal for the
/// same size bound, y = x - t. Each step is checked against a fresh
/// enumeration. Throws PreconditionViolation, SequenceExhausted,
/// VerificationFailed.
DiffConstructionState build_infinite_case(const TargetFunction& target,
                                          const SequenceSource& sequence,
                                          const DiffBuildOptions& options);

/// Returns a sequence a_1 < ... < a_len with a_1 > ratio * floor and
/// a_{i+1} > ratio * a_i, plentiful for the target, or nullopt.
using PlentifulSupply = std::function<std::optional<PlentifulSequence>(
    std::size_t length, const BigInt& floor, const BigInt& ratio)>;

/// a_1 = ratio * floor + 1, a_{i+1} = ratio * a_i + 1, nudging a_1 upward
/// until the sums are plentiful (bounded number of attempts).
PlentifulSupply geometric_supply(const TargetFunction& target);

/// 8 * (h + 2) with h = 1.
inline constexpr unsigned kDefaultQuotientRatio = 24;

struct UnboundedBuildOptions {
  std::size_t steps = 0;
  BigInt d0 = 1;
  BigInt ratio = kDefaultQuotientRatio;
  std::uint64_t budget = kDefaultTupleBudget;
};

/// Finite targets. Each step adds 2 * gamma_k elements
/// x_1 > 2|t| + 3 M_k, x_i = x_{i-1} + a_{i-1}, y_i = x_i - t so the served
/// integer reaches f(t) exactly. Throws PreconditionViolation, BoundedTarget,
/// SupplyExhausted, VerificationFailed.
DiffConstructionState build_unbounded_case(const TargetFunction& target,
                                           const PlentifulSupply& supply,
                                           const UnboundedBuildOptions& options);

struct DiffAudit {
  bool never_overshoot = true;
  bool zero_once = true;
  bool symmetric = true;
  bool size_guard = true;
  bool targets_served = true;
  bool ledger_coherent = true;
  /// Ledger gaps without a witness pair (not a failure by itself).
  std::size_t unwitnessed_gaps = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Replays a construction prefix by prefix. `sequence` enables the ledger
/// gap check; pass nullptr for unbounded-case states.
DiffAudit audit_diff_construction(const DiffConstructionState& state,
                                  const TargetFunction& target, const SequenceSource* sequence,
                                  bool exact_at_targets,
                                  std::uint64_t budget = kDefaultTupleBudget);

}  // namespace linrep
