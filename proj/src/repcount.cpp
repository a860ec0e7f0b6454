// SPDX-License-Identifier: Apache-2.0
#include "linrep/repcount.hpp"

#include <algorithm>
#include <unordered_set>

#include "linrep/error.hpp"

namespace linrep {

GroundSet::GroundSet(std::vector<BigInt> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  const auto dup = std::adjacent_find(elements_.begin(), elements_.end());
  if (dup != elements_.end()) {
    throw Error(ErrorCode::InvalidArgument, "ground set contains " + to_string(*dup) + " twice");
  }
}

bool GroundSet::contains(const BigInt& v) const {
  return std::binary_search(elements_.begin(), elements_.end(), v);
}

BigInt GroundSet::max_abs() const {
  if (elements_.empty()) return 0;
  return std::max(BigInt(abs(elements_.front())), BigInt(abs(elements_.back())));
}

GroundSet GroundSet::with(std::span<const BigInt> extra) const {
  std::vector<BigInt> all(elements_);
  all.insert(all.end(), extra.begin(), extra.end());
  return GroundSet(std::move(all));
}

BigInt RepClass::represented() const {
  BigInt n = 0;
  for (const auto& [value, weight] : weights) n += value * weight;
  return n;
}

RepClass canonicalize(const LinearForm& form, std::span<const BigInt> tuple) {
  if (tuple.size() != form.arity()) {
    throw Error(ErrorCode::ArityMismatch, "tuple has " + std::to_string(tuple.size()) +
                                              " entries, form has " +
                                              std::to_string(form.arity()));
  }
  std::map<BigInt, BigInt> grouped;
  for (std::size_t i = 0; i < tuple.size(); ++i) grouped[tuple[i]] += form[i];
  RepClass out;
  for (auto& [value, weight] : grouped) {
    if (weight != 0) out.weights.emplace_back(value, weight);
  }
  return out;
}

std::uint64_t RepProfile::count(const BigInt& n) const {
  const auto it = counts.find(n);
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t RepProfile::max_count() const {
  std::uint64_t best = 0;
  for (const auto& [n, c] : counts) best = std::max(best, c);
  return best;
}

BigInt ordered_tuple_count(const LinearForm& form, const GroundSet& set) {
  BigInt total;
  mpz_ui_pow_ui(total.get_mpz_t(), set.size(), form.arity());
  return total;
}

namespace {

template <typename W>
struct KeyHash {
  std::size_t operator()(const std::vector<W>& key) const noexcept {
    std::size_t h = key.size();
    for (const auto& w : key) {
      std::size_t v;
      if constexpr (std::is_same_v<W, BigInt>) {
        v = BigIntHash{}(w);
      } else {
        v = std::hash<W>{}(w);
      }
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Visits every class of representations exactly once, reporting the
// represented integer. Tuples are enumerated with element indices
// non-decreasing across positions that carry equal coefficients, which picks
// one ordering per permutation orbit. A tuple of pairwise distinct elements is
// then its own class; only tuples with a repeated element can collide and
// go through the dedup set.
template <typename W>
class ClassEnumerator {
 public:
  // Elements at indices >= first_new are "new": when first_new < size, only
  // classes giving non-zero weight to at least one new element are visited.
  ClassEnumerator(const LinearForm& form, std::span<const BigInt> elements, std::size_t first_new)
      : h_(form.arity()), n_(elements.size()), first_new_(first_new) {
    for (const auto& a : form.coefficients()) {
      if constexpr (std::is_same_v<W, BigInt>) {
        coeffs_.push_back(a);
      } else {
        coeffs_.push_back(a.get_si());
      }
    }
    previous_equal_.assign(h_, -1);
    for (std::size_t i = 0; i < h_; ++i) {
      for (std::size_t j = i; j-- > 0;) {
        if (form[j] == form[i]) {
          previous_equal_[i] = static_cast<long>(j);
          break;
        }
      }
    }
    products_.resize(h_);
    for (std::size_t i = 0; i < h_; ++i) {
      products_[i].reserve(n_);
      for (const auto& v : elements) products_[i].push_back(form[i] * v);
    }
  }

  template <typename Visit>
  void run(Visit&& visit) {
    if (n_ == 0) return;
    idx_.assign(h_, 0);
    partial_.assign(h_ + 1, BigInt(0));
    seen_.clear();
    descend(0, visit);
  }

 private:
  template <typename Visit>
  void descend(std::size_t pos, Visit& visit) {
    if (pos == h_) {
      const BigInt& n = partial_[h_];
      if (all_distinct(idx_)) {
        visit(n);
      } else {
        make_key(idx_, scratch_, key_);
        if (!key_has_new(key_)) return;
        if (seen_.insert(key_).second) visit(n);
      }
      return;
    }
    std::size_t first =
        previous_equal_[pos] < 0 ? 0 : idx_[static_cast<std::size_t>(previous_equal_[pos])];
    if (pos + 1 == h_ && first_new_ < n_) {
      bool any_new = false;
      for (std::size_t i = 0; i < pos; ++i) any_new = any_new || idx_[i] >= first_new_;
      if (!any_new) first = std::max(first, first_new_);
    }
    for (std::size_t e = first; e < n_; ++e) {
      idx_[pos] = e;
      partial_[pos + 1] = partial_[pos] + products_[pos][e];
      descend(pos + 1, visit);
    }
  }

  bool key_has_new(const std::vector<W>& key) const {
    if (first_new_ >= n_) return true;
    for (std::size_t i = 0; i < key.size(); i += 2) {
      if (key[i] >= W(static_cast<long>(first_new_))) return true;
    }
    return false;
  }

  static bool all_distinct(const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (idx[i] == idx[j]) return false;
      }
    }
    return true;
  }

  void make_key(const std::vector<std::size_t>& idx, std::vector<std::pair<std::size_t, W>>& scratch,
                std::vector<W>& key) const {
    scratch.clear();
    for (std::size_t i = 0; i < h_; ++i) scratch.emplace_back(idx[i], coeffs_[i]);
    std::sort(scratch.begin(), scratch.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    key.clear();
    for (std::size_t i = 0; i < scratch.size();) {
      W weight = scratch[i].second;
      std::size_t j = i + 1;
      while (j < scratch.size() && scratch[j].first == scratch[i].first) {
        weight += scratch[j].second;
        ++j;
      }
      if (weight != 0) {
        key.push_back(W(static_cast<long>(scratch[i].first)));
        key.push_back(weight);
      }
      i = j;
    }
  }

  std::size_t h_;
  std::size_t n_;
  std::size_t first_new_;
  std::vector<W> coeffs_;
  std::vector<long> previous_equal_;
  std::vector<std::vector<BigInt>> products_;
  std::vector<std::size_t> idx_;
  std::vector<BigInt> partial_;
  std::unordered_set<std::vector<W>, KeyHash<W>> seen_;
  std::vector<std::pair<std::size_t, W>> scratch_;
  std::vector<W> key_;
};

template <typename Visit>
void for_each_class(const LinearForm& form, std::span<const BigInt> elements,
                    std::size_t first_new, std::uint64_t budget, Visit&& visit) {
  BigInt needed;
  mpz_ui_pow_ui(needed.get_mpz_t(), elements.size(), form.arity());
  if (needed > BigInt(std::to_string(budget), 10)) {
    throw Error(ErrorCode::BudgetExceeded, "enumeration needs " + to_string(needed) +
                                               " tuples, budget is " + std::to_string(budget));
  }
  static const BigInt small_limit = BigInt(1) << 40;
  const bool small = std::all_of(form.coefficients().begin(), form.coefficients().end(),
                                 [](const BigInt& a) { return abs(a) < small_limit; });
  if (small) {
    ClassEnumerator<long> e(form, elements, first_new);
    e.run(visit);
  } else {
    ClassEnumerator<BigInt> e(form, elements, first_new);
    e.run(visit);
  }
}

}  // namespace

namespace {

// Sorts the represented integers and run-length counts them.
std::map<BigInt, std::uint64_t> tally(std::vector<BigInt>& values) {
  std::sort(values.begin(), values.end());
  std::map<BigInt, std::uint64_t> counts;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    counts.emplace_hint(counts.end(), std::move(values[i]), j - i);
    i = j;
  }
  return counts;
}

}  // namespace

RepProfile rep_function(const LinearForm& form, const GroundSet& set,
                        std::optional<Interval> window, std::uint64_t budget) {
  std::vector<BigInt> represented;
  for_each_class(form, set.elements(), set.size(), budget,
                 [&](const BigInt& n) { represented.push_back(n); });
  RepProfile profile;
  profile.distinct_classes = represented.size();
  profile.counts = tally(represented);
  if (window) {
    profile.window = *window;
  } else if (!profile.counts.empty()) {
    profile.window = Interval{profile.support_min(), profile.support_max()};
  } else {
    profile.window = Interval{0, 0};
  }
  return profile;
}

std::uint64_t count_at(const LinearForm& form, const GroundSet& set, const BigInt& n,
                       std::uint64_t budget) {
  std::uint64_t count = 0;
  for_each_class(form, set.elements(), set.size(), budget, [&](const BigInt& m) {
    if (m == n) ++count;
  });
  return count;
}

std::map<BigInt, std::uint64_t> added_classes(const LinearForm& form, const GroundSet& set,
                                              std::span<const BigInt> added,
                                              std::uint64_t budget) {
  std::vector<BigInt> elements(set.elements().begin(), set.elements().end());
  elements.insert(elements.end(), added.begin(), added.end());
  std::vector<BigInt> represented;
  if (!added.empty()) {
    for_each_class(form, elements, set.size(), budget,
                   [&](const BigInt& n) { represented.push_back(n); });
  }
  return tally(represented);
}

void RepProfile::merge(const std::map<BigInt, std::uint64_t>& added) {
  for (const auto& [n, c] : added) {
    counts[n] += c;
    distinct_classes += c;
  }
}

}  // namespace linrep
