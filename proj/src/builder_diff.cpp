// SPDX-License-Identifier: Apache-2.0
#include "linrep/builder_diff.hpp"

#include <algorithm>
#include <set>

#include "linrep/error.hpp"

namespace linrep {

LinearForm difference_form() { return LinearForm({BigInt(1), BigInt(-1)}); }

PlentifulSequence::PlentifulSequence(std::vector<BigInt> terms) : terms_(std::move(terms)) {
  prefix_.reserve(terms_.size() + 1);
  prefix_.emplace_back(0);
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i] <= 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "sequence term " + std::to_string(i + 1) + " is not positive");
    }
    prefix_.push_back(prefix_.back() + terms_[i]);
  }
}

BigInt PlentifulSequence::partial_sum(std::size_t l, std::size_t m) const {
  if (l < 1 || l > m || m > terms_.size()) {
    throw Error(ErrorCode::InvalidArgument, "partial sum indices out of range");
  }
  return prefix_[m] - prefix_[l - 1];
}

namespace {

template <typename Pred>
bool all_partial_sums(const PlentifulSequence& seq, Pred doubled) {
  const auto& s = seq.terms();
  for (std::size_t l = 0; l < s.size(); ++l) {
    BigInt sum = 0;
    for (std::size_t m = l; m < s.size(); ++m) {
      sum += s[m];
      if (!doubled(sum)) return false;
    }
  }
  return true;
}

std::size_t to_index(const BigInt& v) {
  if (v < 0 || !v.fits_ulong_p()) throw Error(ErrorCode::InvalidArgument, "index out of range");
  return static_cast<std::size_t>(v.get_ui());
}

class FiniteSource final : public SequenceSource {
 public:
  explicit FiniteSource(PlentifulSequence seq) : seq_(std::move(seq)) {
    prefix_.emplace_back(0);
    for (const auto& s : seq_.terms()) prefix_.push_back(prefix_.back() + s);
  }

  std::optional<BigInt> length() const override {
    return BigInt(static_cast<unsigned long>(seq_.size()));
  }

  BigInt run_sum(const BigInt& from, const BigInt& to) const override {
    return seq_.partial_sum(to_index(from), to_index(to));
  }

  std::optional<BigInt> first_run_exceeding(const BigInt& from,
                                            const BigInt& bound) const override {
    const std::size_t f = to_index(from);
    if (f < 1 || f > seq_.size()) return std::nullopt;
    const BigInt goal = prefix_[f - 1] + bound;
    const auto it = std::upper_bound(prefix_.begin() + static_cast<std::ptrdiff_t>(f),
                                     prefix_.end(), goal);
    if (it == prefix_.end()) return std::nullopt;
    return BigInt(static_cast<unsigned long>(it - prefix_.begin()));
  }

  std::optional<std::pair<BigInt, BigInt>> find_run(const BigInt& value) const override {
    for (std::size_t w = 1; w <= seq_.size(); ++w) {
      const BigInt goal = prefix_[w - 1] + value;
      const auto it = std::lower_bound(prefix_.begin() + static_cast<std::ptrdiff_t>(w),
                                       prefix_.end(), goal);
      if (it != prefix_.end() && *it == goal) {
        return std::pair{BigInt(static_cast<unsigned long>(w)),
                         BigInt(static_cast<unsigned long>(it - prefix_.begin()))};
      }
    }
    return std::nullopt;
  }

  bool plentiful_for(const TargetFunction& target) const override {
    return is_plentiful(seq_, target);
  }

  std::string describe() const override {
    return "finite sequence of length " + std::to_string(seq_.size());
  }

 private:
  PlentifulSequence seq_;
  std::vector<BigInt> prefix_;
};

class PeriodicSource final : public SequenceSource {
 public:
  explicit PeriodicSource(PlentifulSequence pattern) : pattern_(std::move(pattern)) {
    if (pattern_.empty()) throw Error(ErrorCode::InvalidArgument, "empty periodic pattern");
    pre_.emplace_back(0);
    for (const auto& s : pattern_.terms()) pre_.push_back(pre_.back() + s);
    period_ = static_cast<unsigned long>(pattern_.size());
  }

  std::optional<BigInt> length() const override { return std::nullopt; }

  BigInt run_sum(const BigInt& from, const BigInt& to) const override {
    if (from < 1 || from > to) throw Error(ErrorCode::InvalidArgument, "bad run indices");
    return prefix(to) - prefix(from - 1);
  }

  std::optional<BigInt> first_run_exceeding(const BigInt& from,
                                            const BigInt& bound) const override {
    if (from < 1) return std::nullopt;
    const BigInt goal = prefix(from - 1) + bound;
    if (goal < 0) return from;
    const BigInt q = floor_div(goal, pre_.back());
    std::size_t r = 1;
    while (q * pre_.back() + pre_[r] <= goal) ++r;
    BigInt to = q * period_ + static_cast<unsigned long>(r);
    return to < from ? from : to;
  }

  std::optional<std::pair<BigInt, BigInt>> find_run(const BigInt& value) const override {
    if (value <= 0) return std::nullopt;
    for (unsigned long w = 1; w <= period_; ++w) {
      const BigInt start(w);
      const auto end = first_run_exceeding(start, value - 1);
      if (end && run_sum(start, *end) == value) return std::pair{start, *end};
    }
    return std::nullopt;
  }

  bool plentiful_for(const TargetFunction& target) const override {
    // Sums grow without bound, so the default decides everything past the window.
    if (!target.outside_default().exceeds(1)) return false;
    const BigInt& top = target.window().hi;
    for (unsigned long w = 1; w <= period_; ++w) {
      BigInt sum = 0;
      for (unsigned long i = w; sum <= top; ++i) {
        sum += pattern_.terms()[(i - 1) % period_];
        if (sum <= top && !target.at(sum).exceeds(1)) return false;
      }
    }
    return true;
  }

  std::string describe() const override {
    std::string out = "periodic (";
    for (std::size_t i = 0; i < pattern_.size(); ++i) {
      if (i) out += ",";
      out += to_string(pattern_.terms()[i]);
    }
    return out + ", ...)";
  }

 private:
  BigInt prefix(const BigInt& i) const {
    const BigInt q = floor_div(i, BigInt(period_));
    const BigInt r = i - q * period_;
    return q * pre_.back() + pre_[r.get_ui()];
  }

  PlentifulSequence pattern_;
  std::vector<BigInt> pre_;
  unsigned long period_ = 0;
};

}  // namespace

bool is_plentiful(const PlentifulSequence& seq, const TargetFunction& target) {
  return all_partial_sums(seq, [&](const BigInt& s) { return target.at(s).exceeds(1); });
}

bool is_plentiful(const PlentifulSequence& seq, const RepProfile& profile) {
  return all_partial_sums(seq, [&](const BigInt& s) { return profile.count(s) > 1; });
}

std::unique_ptr<SequenceSource> finite_source(PlentifulSequence seq) {
  return std::make_unique<FiniteSource>(std::move(seq));
}

std::unique_ptr<SequenceSource> periodic_source(PlentifulSequence pattern) {
  return std::make_unique<PeriodicSource>(std::move(pattern));
}

CheckReport check_even_normalized(const TargetFunction& target) {
  CheckReport report;
  if (target.at(0) != Count::finite(1)) report.violations.push_back("f(0) must be 1");
  std::set<BigInt> listed;
  for (const auto& [n, c] : target.values()) listed.insert(n);
  listed.insert(target.zeros().begin(), target.zeros().end());
  for (const auto& n : listed) {
    if (n > 0 && target.at(n) != target.at(-n)) {
      report.violations.push_back("f(" + to_string(n) + ") != f(" + to_string(-n) + ")");
    } else if (n < 0 && !listed.contains(-n) && target.at(n) != target.at(-n)) {
      report.violations.push_back("f(" + to_string(-n) + ") != f(" + to_string(n) + ")");
    }
  }
  return report;
}

CheckReport check_three_rep_obstruction(const TargetFunction& target) {
  CheckReport report;
  // Integers outside the window take the default, and there are always
  // some outside {n, -n, 0}.
  std::vector<BigInt> doubled;
  for (BigInt n = target.window().lo; n <= target.window().hi; ++n) {
    if (target.at(n).exceeds(1)) doubled.push_back(n);
  }
  const bool default_doubled = target.outside_default().exceeds(1);
  auto has_other = [&](const BigInt& n) {
    if (default_doubled) return true;
    return std::any_of(doubled.begin(), doubled.end(),
                       [&](const BigInt& m) { return m != 0 && m != n && m != -n; });
  };
  for (const auto& n : doubled) {
    if (target.at(n).exceeds(2) && !has_other(n)) {
      report.violations.push_back("f(" + to_string(n) + ") >= 3 but no other m has f(m) >= 2");
    }
  }
  if (target.outside_default().exceeds(2) && !default_doubled) {
    report.violations.push_back("default >= 3 without doubled values");
  }
  return report;
}

PlentifulSequence extract_plentiful(const GroundSet& set, const BigInt& n, std::size_t length,
                                    std::uint64_t budget) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "n must be non-zero");
  std::vector<BigInt> xs;
  for (const auto& x : set.elements()) {
    if (set.contains(x - n)) xs.push_back(x);
  }
  if (xs.size() < length + 1) {
    throw Error(ErrorCode::InsufficientPairs,
                "only " + std::to_string(xs.size()) + " pairs with difference " + to_string(n) +
                    ", need " + std::to_string(length + 1));
  }
  std::vector<BigInt> gaps;
  for (std::size_t i = 0; i < length; ++i) gaps.push_back(xs[i + 1] - xs[i]);
  PlentifulSequence seq(std::move(gaps));
  const RepProfile profile = rep_function(difference_form(), set, std::nullopt, budget);
  if (!is_plentiful(seq, profile)) {
    throw Error(ErrorCode::VerificationFailed, "extracted sequence is not plentiful");
  }
  return seq;
}

namespace {

void require_even(const TargetFunction& target) {
  const CheckReport even = check_even_normalized(target);
  if (!even.ok()) {
    throw Error(ErrorCode::PreconditionViolation,
                "target is not even with f(0) = 1: " + even.violations.front());
  }
}

DiffConstructionState initial_state(const BigInt& d0, std::uint64_t budget) {
  DiffConstructionState st{
      ConstructionState{difference_form(), false, d0, std::nullopt, {}, GroundSet({d0}), {}},
      {}};
  st.base.profile = rep_function(st.base.form, st.base.union_set, std::nullopt, budget);
  return st;
}

// Lower bound every new x must exceed: the size guard plus room to keep new
// differences clear of the zero set.
BigInt x_floor(const TargetFunction& target, const BigInt& t, const BigInt& m) {
  BigInt floor = 2 * t + 3 * m;
  BigInt zmax = 0;
  for (const auto& z : target.zeros()) zmax = std::max(zmax, BigInt(abs(z)));
  if (!target.zeros().empty()) floor = std::max(floor, BigInt(zmax + m + t));
  return floor;
}

std::string describe_entry(const MultisetEntry& e) {
  return to_string(e.n) + " copy " + std::to_string(e.copy);
}

// Adds the block, merges counts, and records new ledger representations of
// positive doubled values. `witness_of` assigns the witness of a fresh rep.
void commit_block(DiffConstructionState& st, const TargetFunction& target, BlockRecord record,
                  const std::map<BigInt, std::uint64_t>& added,
                  const std::vector<std::pair<BigInt, BigInt>>& new_pairs) {
  st.base.union_set = st.base.union_set.with(record.elements);
  st.base.profile.merge(added);
  record.support_size = st.base.profile.counts.size();
  st.base.blocks.push_back(std::move(record));
  for (const auto& [a, b] : new_pairs) {
    const BigInt v = a - b;
    if (v > 0 && target.at(v).exceeds(1)) st.ledger[v].push_back(LedgerRep{a, b, std::nullopt});
  }
  for (auto& [v, reps] : st.ledger) {
    std::sort(reps.begin(), reps.end(),
              [](const LedgerRep& l, const LedgerRep& r) { return l.anchor < r.anchor; });
  }
}

// Every ordered pair (u, w), u != w, with at least one member new.
std::vector<std::pair<BigInt, BigInt>> new_pairs_of(const GroundSet& old,
                                                    const std::vector<BigInt>& fresh) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    for (const auto& c : old.elements()) {
      out.emplace_back(fresh[i], c);
      out.emplace_back(c, fresh[i]);
    }
    for (std::size_t j = 0; j < fresh.size(); ++j) {
      if (i != j) out.emplace_back(fresh[i], fresh[j]);
    }
  }
  return out;
}

// Counts after the step stay within f, and every integer that gains
// representations either gains one or gains two on a doubled value with no
// earlier representation. The served integer is exempt from the second rule.
std::optional<std::string> step_violation(const RepProfile& before, const TargetFunction& target,
                                          const std::map<BigInt, std::uint64_t>& added,
                                          const BigInt& t, bool exact) {
  for (const auto& [n, c] : added) {
    const std::uint64_t old = before.count(n);
    const std::uint64_t total = old + c;
    const Count f = target.at(n);
    if (!f.admits(total)) {
      return to_string(n) + " reaches " + std::to_string(total) + " representations";
    }
    if (n == t || n == -t) {
      if (exact && Count::finite(total) != f) {
        return "served " + to_string(n) + " has " + std::to_string(total) + " representations";
      }
      continue;
    }
    if (old != 0) return "earlier represented " + to_string(n) + " gained representations";
    if (c > 2 || (c == 2 && !f.exceeds(1))) {
      return to_string(n) + " gained " + std::to_string(c) + " representations";
    }
  }
  return std::nullopt;
}

}  // namespace

DiffConstructionState build_infinite_case(const TargetFunction& target,
                                          const SequenceSource& sequence,
                                          const DiffBuildOptions& options) {
  require_even(target);
  if (!target.has_infinity()) {
    throw Error(ErrorCode::PreconditionViolation, "target takes no infinite value");
  }
  if (!sequence.plentiful_for(target)) {
    throw Error(ErrorCode::PreconditionViolation,
                "sequence " + sequence.describe() + " is not plentiful for the target");
  }
  if (target.is_zero(options.d0 - options.d0)) {
    throw Error(ErrorCode::PreconditionViolation, "f(0) must be 1");
  }

  DiffConstructionState st = initial_state(options.d0, options.budget);
  const LinearForm form = st.base.form;
  MultisetOrdering ordering(target);
  MultisetEntry entry = ordering.next();
  for (std::size_t k = 1; k <= options.steps; ++k) {
    while (st.base.profile.count(entry.n) > entry.copy) entry = ordering.next();
    const BigInt t = abs(entry.n);
    const BigInt m = st.base.union_set.max_abs();
    const BigInt floor = x_floor(target, t, m);
    const bool doubled = target.at(t).exceeds(1);
    const auto chain_it = st.ledger.find(t);

    BigInt x;
    std::optional<BigInt> witness;
    if (!doubled || chain_it == st.ledger.end() || chain_it->second.empty()) {
      x = floor + 1;
      if (doubled) witness = BigInt(1);
    } else {
      const LedgerRep& last = chain_it->second.back();
      const BigInt start = last.witness.value_or(BigInt(1));
      const auto end = sequence.first_run_exceeding(start, floor - last.anchor);
      if (!end) {
        throw Error(ErrorCode::SequenceExhausted,
                    "step " + std::to_string(k) + " (target " + describe_entry(entry) +
                        ") ran past the end of " + sequence.describe());
      }
      x = last.anchor + sequence.run_sum(start, *end);
      witness = *end + 1;
    }
    const BigInt y = x - t;
    const std::vector<BigInt> fresh{x, y};
    const auto added = added_classes(form, st.base.union_set, fresh, options.budget);
    if (auto why = step_violation(st.base.profile, target, added, t, false)) {
      throw Error(ErrorCode::VerificationFailed, "step " + std::to_string(k) + ": " + *why);
    }
    if (st.base.profile.count(entry.n) + (added.contains(entry.n) ? added.at(entry.n) : 0) <=
        entry.copy) {
      throw Error(ErrorCode::VerificationFailed,
                  "step " + std::to_string(k) + " did not serve " + describe_entry(entry));
    }

    BlockRecord record;
    record.step = k;
    record.target = entry.n;
    record.target_copy = entry.copy;
    record.target_position = entry.position;
    record.growth = m;
    record.elements = fresh;
    record.previous_max_abs = m;
    const GroundSet old = st.base.union_set;
    commit_block(st, target, std::move(record), added, new_pairs_of(old, fresh));

    // Witnesses: the served chain gets the index just found; a value picking
    // up the pair (y - b, x - a) from an older representation (a, b) of t
    // needs a run summing to t, which the source may or may not contain.
    const auto run_t = sequence.find_run(t);
    for (auto& [v, reps] : st.ledger) {
      for (std::size_t i = 0; i < reps.size(); ++i) {
        LedgerRep& rep = reps[i];
        if (rep.witness || (rep.anchor != x && rep.anchor != y)) continue;
        if (v == t && rep.anchor == x) {
          rep.witness = witness;
        } else if (reps.size() == 1) {
          rep.witness = BigInt(1);
        } else if (reps.size() == 2 && run_t) {
          reps[0].witness = run_t->first;
          reps[1].witness = run_t->second + 1;
        }
      }
    }
  }
  return st;
}

PlentifulSupply geometric_supply(const TargetFunction& target) {
  return [target](std::size_t length, const BigInt& floor,
                  const BigInt& ratio) -> std::optional<PlentifulSequence> {
    constexpr int kAttempts = 1000;
    for (int bump = 0; bump < kAttempts; ++bump) {
      std::vector<BigInt> a;
      BigInt next = ratio * floor + 1 + bump;
      for (std::size_t i = 0; i < length; ++i) {
        a.push_back(next);
        next = ratio * next + 1;
      }
      PlentifulSequence seq(std::move(a));
      if (is_plentiful(seq, target)) return seq;
    }
    return std::nullopt;
  };
}

DiffConstructionState build_unbounded_case(const TargetFunction& target,
                                           const PlentifulSupply& supply,
                                           const UnboundedBuildOptions& options) {
  require_even(target);
  const auto top = target.finite_max();
  if (!top) throw Error(ErrorCode::PreconditionViolation, "target takes an infinite value");
  if (*top <= 1) {
    throw Error(ErrorCode::BoundedTarget,
                "target never exceeds 1; bounded targets are not handled");
  }
  if (options.ratio < 1) throw Error(ErrorCode::InvalidArgument, "ratio must be positive");

  DiffConstructionState st = initial_state(options.d0, options.budget);
  const LinearForm form = st.base.form;
  MultisetOrdering ordering(target);
  MultisetEntry entry = ordering.next();
  for (std::size_t k = 1; k <= options.steps; ++k) {
    while (st.base.profile.count(entry.n) > entry.copy) entry = ordering.next();
    const BigInt t = abs(entry.n);
    const std::uint64_t goal = target.at(t).value();
    const std::uint64_t gamma = goal - st.base.profile.count(t);
    const BigInt m = st.base.union_set.max_abs();

    std::vector<BigInt> xs{x_floor(target, t, m) + 1};
    if (gamma >= 2) {
      const auto a = supply(gamma - 1, xs.front(), options.ratio);
      if (!a || a->size() != gamma - 1) {
        throw Error(ErrorCode::SupplyExhausted,
                    "step " + std::to_string(k) + ": no plentiful sequence of length " +
                        std::to_string(gamma - 1));
      }
      for (const auto& ai : a->terms()) xs.push_back(xs.back() + ai);
    }
    std::vector<BigInt> fresh;
    for (const auto& xi : xs) {
      fresh.push_back(xi);
      fresh.push_back(xi - t);
    }
    if (std::set<BigInt>(fresh.begin(), fresh.end()).size() != fresh.size()) {
      throw Error(ErrorCode::VerificationFailed,
                  "step " + std::to_string(k) + ": block elements collide");
    }
    const auto added = added_classes(form, st.base.union_set, fresh, options.budget);
    if (auto why = step_violation(st.base.profile, target, added, t, true)) {
      throw Error(ErrorCode::VerificationFailed, "step " + std::to_string(k) + ": " + *why);
    }

    BlockRecord record;
    record.step = k;
    record.target = entry.n;
    record.target_copy = entry.copy;
    record.target_position = entry.position;
    record.growth = m;
    record.elements = fresh;
    record.previous_max_abs = m;
    const GroundSet old = st.base.union_set;
    commit_block(st, target, std::move(record), added, new_pairs_of(old, fresh));
  }
  return st;
}

DiffAudit audit_diff_construction(const DiffConstructionState& state,
                                  const TargetFunction& target, const SequenceSource* sequence,
                                  bool exact_at_targets, std::uint64_t budget) {
  DiffAudit audit;
  auto fail = [&audit](bool& flag, std::string message) {
    flag = false;
    audit.failures.push_back(std::move(message));
  };
  const ConstructionState& base = state.base;
  RepProfile last;
  for (std::size_t k = 0; k <= base.step(); ++k) {
    const RepProfile p = rep_function(base.form, base.prefix(k), std::nullopt, budget);
    const std::string at = "prefix " + std::to_string(k) + ": ";
    for (const auto& [n, c] : p.counts) {
      if (!target.at(n).admits(c)) {
        fail(audit.never_overshoot, at + to_string(n) + " has " + std::to_string(c));
      }
      if (p.count(-n) != c) fail(audit.symmetric, at + "asymmetric at " + to_string(n));
    }
    if (p.count(0) != 1) fail(audit.zero_once, at + "0 is not represented exactly once");
    if (k > 0) {
      const BlockRecord& b = base.blocks[k - 1];
      const BigInt t = abs(b.target);
      for (std::size_t i = 0; i < b.elements.size(); i += 2) {
        if (b.elements[i] <= 2 * t + 3 * b.previous_max_abs) {
          fail(audit.size_guard, at + "x = " + to_string(b.elements[i]) + " below the guard");
        }
      }
      const std::uint64_t c = p.count(b.target);
      if (c <= b.target_copy) fail(audit.targets_served, at + "target not served");
      if (exact_at_targets && Count::finite(c) != target.at(b.target)) {
        fail(audit.targets_served, at + "target " + to_string(b.target) + " not exact");
      }
    }
    last = p;
  }

  for (const auto& [n, reps] : state.ledger) {
    const std::string at = "ledger " + to_string(n) + ": ";
    if (reps.size() != last.count(n)) {
      fail(audit.ledger_coherent, at + "holds " + std::to_string(reps.size()) + " of " +
                                      std::to_string(last.count(n)) + " representations");
    }
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (reps[i].anchor - reps[i].partner != n || !base.union_set.contains(reps[i].anchor) ||
          !base.union_set.contains(reps[i].partner)) {
        fail(audit.ledger_coherent, at + "bad representation");
      }
      if (i == 0 || sequence == nullptr) continue;
      const LedgerRep& prev = reps[i - 1];
      if (!prev.witness || !reps[i].witness) {
        ++audit.unwitnessed_gaps;
        continue;
      }
      if (*prev.witness >= *reps[i].witness ||
          sequence->run_sum(*prev.witness, *reps[i].witness - 1) !=
              reps[i].anchor - prev.anchor) {
        fail(audit.ledger_coherent, at + "gap " + std::to_string(i) + " is not a run sum");
      }
    }
  }
  return audit;
}

}  // namespace linrep
