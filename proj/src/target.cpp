// SPDX-License-Identifier: Apache-2.0
#include "linrep/target.hpp"

#include <algorithm>
#include <set>

#include "linrep/error.hpp"
#include "linrep/forms.hpp"

namespace linrep {

TargetFunction::TargetFunction(Interval window, std::map<BigInt, Count> values,
                               Count outside_default, std::vector<BigInt> zeros)
    : window_(std::move(window)),
      values_(std::move(values)),
      default_(outside_default),
      zeros_(std::move(zeros)) {
  if (window_.lo > window_.hi) {
    throw Error(ErrorCode::InvalidArgument, "target window has lo > hi");
  }
  if (!default_.is_infinite() && default_.value() == 0) {
    throw Error(ErrorCode::InvalidArgument, "target default must not be 0");
  }
  for (const auto& [n, c] : values_) {
    if (!window_.contains(n)) {
      throw Error(ErrorCode::InvalidArgument,
                  "target value for " + to_string(n) + " lies outside the window");
    }
    if (!c.is_infinite() && c.value() == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "target value 0 at " + to_string(n) + " must be listed under zeros");
    }
  }
  std::sort(zeros_.begin(), zeros_.end());
  zeros_.erase(std::unique(zeros_.begin(), zeros_.end()), zeros_.end());
  for (const auto& z : zeros_) {
    if (!window_.contains(z)) {
      throw Error(ErrorCode::InvalidArgument, "zero at " + to_string(z) + " lies outside the window");
    }
    if (values_.count(z)) {
      throw Error(ErrorCode::InvalidArgument, to_string(z) + " is listed both as a zero and a value");
    }
  }
}

TargetFunction TargetFunction::constant(Count c, Interval window) {
  return TargetFunction(std::move(window), {}, c, {});
}

bool TargetFunction::is_zero(const BigInt& n) const {
  return std::binary_search(zeros_.begin(), zeros_.end(), n);
}

Count TargetFunction::at(const BigInt& n) const {
  if (is_zero(n)) return Count::finite(0);
  const auto it = values_.find(n);
  if (it != values_.end()) return it->second;
  return default_;
}

bool TargetFunction::has_infinity() const {
  if (default_.is_infinite()) return true;
  return std::any_of(values_.begin(), values_.end(),
                     [](const auto& kv) { return kv.second.is_infinite(); });
}

std::optional<std::uint64_t> TargetFunction::finite_max() const {
  if (has_infinity()) return std::nullopt;
  std::uint64_t best = default_.value();
  for (const auto& [n, c] : values_) best = std::max(best, c.value());
  return best;
}

MultisetOrdering::MultisetOrdering(const TargetFunction& target) : target_(&target) {}

std::uint64_t MultisetOrdering::level_of(const BigInt& n, std::uint64_t copy) {
  const BigInt idx = spiral_index(n);
  if (!idx.fits_ulong_p()) {
    throw Error(ErrorCode::InvalidArgument, "integer too large for the multiset ordering");
  }
  return std::max<std::uint64_t>(idx.get_ui(), copy);
}

void MultisetOrdering::fill_level() {
  const std::uint64_t level = level_;
  std::vector<std::uint64_t> still_active;
  still_active.reserve(active_.size() + 1);
  for (const std::uint64_t idx : active_) {
    const BigInt n = spiral(BigInt(static_cast<unsigned long>(idx)));
    const Count f = target_->at(n);
    if (f.exceeds(level)) {
      pending_.push_back(MultisetEntry{n, level, level, 0});
      if (f.exceeds(level + 1)) still_active.push_back(idx);
    }
  }
  const BigInt n = spiral(BigInt(static_cast<unsigned long>(level)));
  const Count f = target_->at(n);
  for (std::uint64_t c = 0; c <= level && f.exceeds(c); ++c) {
    pending_.push_back(MultisetEntry{n, c, level, 0});
  }
  if (f.exceeds(level + 1)) still_active.push_back(level);
  active_ = std::move(still_active);
  ++level_;
}

MultisetEntry MultisetOrdering::next() {
  while (pending_.empty()) fill_level();
  MultisetEntry e = std::move(pending_.front());
  pending_.pop_front();
  e.position = position_++;
  return e;
}

std::vector<BigInt> compute_X(const BigInt& n, std::uint64_t l, std::uint64_t m, std::uint64_t p) {
  std::set<BigInt> out;
  const long ll = static_cast<long>(l);
  const long mm = static_cast<long>(m);
  const long pp = static_cast<long>(p);
  for (long a = -ll; a <= ll; ++a) {
    const BigInt numerator = a * n;
    for (long b = -mm; b <= mm; ++b) {
      if (b == 0) continue;
      if (!mpz_divisible_ui_p(numerator.get_mpz_t(), static_cast<unsigned long>(b < 0 ? -b : b))) {
        continue;
      }
      const BigInt q = numerator / b;
      for (long c = -pp; c <= pp; ++c) out.insert(q + c);
    }
  }
  return {out.begin(), out.end()};
}

}  // namespace linrep
