// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "linrep/bigint.hpp"
#include "linrep/repcount.hpp"

namespace linrep {

/// A prescribed number of representations: a finite count or infinity.
/// Infinity compares above every finite count.
class Count {
 public:
  constexpr Count() = default;
  static constexpr Count finite(std::uint64_t v) { return Count(v, false); }
  static constexpr Count infinity() { return Count(0, true); }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  constexpr std::uint64_t value() const noexcept { return value_; }
  /// True when c representations do not exceed this count.
  constexpr bool admits(std::uint64_t c) const noexcept { return infinite_ || c <= value_; }
  constexpr bool exceeds(std::uint64_t c) const noexcept { return infinite_ || value_ > c; }

  friend constexpr bool operator==(const Count&, const Count&) = default;

 private:
  constexpr Count(std::uint64_t v, bool inf) : value_(v), infinite_(inf) {}
  std::uint64_t value_ = 0;
  bool infinite_ = false;
};

/// A target f: Z -> N_0 u {inf} given by an explicit window and a default
/// for everything outside it. Inside the window, integers missing from
/// `values` also take the default. Zeros are only allowed at the listed
/// zero positions, all of which must lie inside the window.
class TargetFunction {
 public:
  TargetFunction(Interval window, std::map<BigInt, Count> values, Count outside_default,
                 std::vector<BigInt> zeros);

  /// f identically equal to c (no zeros) over the given window.
  static TargetFunction constant(Count c, Interval window = Interval{0, 0});

  Count at(const BigInt& n) const;
  const Interval& window() const noexcept { return window_; }
  const std::map<BigInt, Count>& values() const noexcept { return values_; }
  Count outside_default() const noexcept { return default_; }
  const std::vector<BigInt>& zeros() const noexcept { return zeros_; }
  bool is_zero(const BigInt& n) const;

  /// True if some value in the window or the default is infinite.
  bool has_infinity() const;
  /// Largest finite value over the window and default; nullopt if any is infinite.
  std::optional<std::uint64_t> finite_max() const;

 private:
  Interval window_;
  std::map<BigInt, Count> values_;
  Count default_;
  std::vector<BigInt> zeros_;
};

/// One slot of the multiset holding f(n) copies of every n.
struct MultisetEntry {
  BigInt n;
  std::uint64_t copy = 0;
  std::uint64_t level = 0;
  std::uint64_t position = 0;
};

/// Diagonal enumeration of the multiset: level L first emits copy L of
/// every earlier integer (in spiral order) that still has copies left, then
/// copies 0..L of spiral(L). Copy c of n therefore sits at level
/// max(spiral_index(n), c), so every slot is reached after finitely many
/// steps even when some counts are infinite.
class MultisetOrdering {
 public:
  explicit MultisetOrdering(const TargetFunction& target);

  /// The enumeration never ends because the default count is never 0.
  MultisetEntry next();

  /// Level of copy `copy` of n.
  static std::uint64_t level_of(const BigInt& n, std::uint64_t copy);

 private:
  void fill_level();

  const TargetFunction* target_;
  std::uint64_t level_ = 0;
  std::uint64_t position_ = 0;
  // spiral indices of integers that still have copies at upcoming levels
  std::vector<std::uint64_t> active_;
  std::deque<MultisetEntry> pending_;
};

/// {(a/b) n + c : |a| <= l, 1 <= |b| <= m, |c| <= p}, integers only, sorted.
std::vector<BigInt> compute_X(const BigInt& n, std::uint64_t l, std::uint64_t m, std::uint64_t p);

}  // namespace linrep
