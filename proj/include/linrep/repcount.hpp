// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "linrep/bigint.hpp"
#include "linrep/forms.hpp"

namespace linrep {

/// A finite set of integers, kept sorted ascending with no duplicates.
class GroundSet {
 public:
  GroundSet() = default;
  /// Throws InvalidArgument if the input contains a repeated value.
  explicit GroundSet(std::vector<BigInt> elements);

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  std::span<const BigInt> elements() const noexcept { return elements_; }
  const BigInt& min() const { return elements_.front(); }
  const BigInt& max() const { return elements_.back(); }
  bool contains(const BigInt& v) const;
  /// max |x| over the set, 0 when empty.
  BigInt max_abs() const;

  /// Union with values that must not already be present.
  GroundSet with(std::span<const BigInt> extra) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<BigInt> elements_;
};

/// Canonical representative of an equivalence class of representations:
/// element value -> sum of the coefficients placed on it, zero sums dropped,
/// sorted by element value.
struct RepClass {
  std::vector<std::pair<BigInt, BigInt>> weights;

  BigInt represented() const;
  friend bool operator==(const RepClass&, const RepClass&) = default;
  friend auto operator<=>(const RepClass& l, const RepClass& r) {
    return l.weights <=> r.weights;
  }
};

/// Throws ArityMismatch when tuple.size() != form.arity().
RepClass canonicalize(const LinearForm& form, std::span<const BigInt> tuple);

inline constexpr std::uint64_t kDefaultTupleBudget = 100'000'000;

struct Interval {
  BigInt lo;
  BigInt hi;
  bool contains(const BigInt& n) const { return lo <= n && n <= hi; }
};

/// Unordered representation counts of a finite set. Counts are exhaustive
/// over the whole support, so every n outside `counts` has count 0.
struct RepProfile {
  std::map<BigInt, std::uint64_t> counts;
  Interval window;
  std::uint64_t distinct_classes = 0;

  std::uint64_t count(const BigInt& n) const;
  bool empty() const noexcept { return counts.empty(); }
  const BigInt& support_min() const { return counts.begin()->first; }
  const BigInt& support_max() const { return counts.rbegin()->first; }
  std::uint64_t max_count() const;
  /// Adds counts produced by added_classes().
  void merge(const std::map<BigInt, std::uint64_t>& added);
};

/// |set|^h, the number of ordered tuples an exhaustive pass would visit.
BigInt ordered_tuple_count(const LinearForm& form, const GroundSet& set);

/// Enumerates every class of representations over `set`. The window only
/// records which interval the caller is interested in; when absent it
/// becomes the full support (or [0,0] for an empty set). Throws
/// BudgetExceeded when |set|^h exceeds `budget`.
RepProfile rep_function(const LinearForm& form, const GroundSet& set,
                        std::optional<Interval> window = std::nullopt,
                        std::uint64_t budget = kDefaultTupleBudget);

std::uint64_t count_at(const LinearForm& form, const GroundSet& set, const BigInt& n,
                       std::uint64_t budget = kDefaultTupleBudget);

/// Classes over set u added that put non-zero weight on at least one added
/// element, bucketed by represented integer. These are exactly the classes
/// rep_function(set u added) has on top of rep_function(set). The added
/// values must be distinct and absent from `set`; the budget applies to the
/// enlarged set.
std::map<BigInt, std::uint64_t> added_classes(const LinearForm& form, const GroundSet& set,
                                              std::span<const BigInt> added,
                                              std::uint64_t budget = kDefaultTupleBudget);

}  // namespace linrep
