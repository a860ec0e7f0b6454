// SPDX-License-Identifier: Apache-2.0
#include "linrep/builder_target.hpp"

#include <set>

#include "linrep/builder_unique.hpp"
#include "linrep/error.hpp"

namespace linrep {

namespace {

bool satisfied(const RepProfile& profile, const MultisetEntry& entry) {
  return profile.count(entry.n) > entry.copy;
}

// Explains why a candidate block cannot be accepted, or returns nullopt.
std::optional<std::string> reject_reason(const ConstructionState& state,
                                         const TargetFunction& target,
                                         const std::map<BigInt, std::uint64_t>& added,
                                         const MultisetEntry& entry) {
  for (const auto& [n, c] : added) {
    const std::uint64_t total = state.profile.count(n) + c;
    const Count f = target.at(n);
    if (!f.admits(total)) {
      if (target.is_zero(n)) return "zero " + to_string(n) + " would be represented";
      return to_string(n) + " would be represented " + std::to_string(total) + " times";
    }
    if (n != entry.n && spiral_index(n) < BigInt(static_cast<unsigned long>(entry.level))) {
      return "new representation of earlier integer " + to_string(n);
    }
  }
  const auto hit = added.find(entry.n);
  const std::uint64_t after = state.profile.count(entry.n) + (hit == added.end() ? 0 : hit->second);
  if (after <= entry.copy) return "target " + to_string(entry.n) + " not served";
  return std::nullopt;
}

}  // namespace

ConstructionState build_for_target(const LinearForm& form, const TargetFunction& target,
                                   const TargetBuildOptions& options) {
  if (!is_primitive(form)) {
    throw Error(ErrorCode::NotPrimitive, "form " + form.to_string() + " is not primitive");
  }
  if (!is_partition_regular(form)) {
    throw Error(ErrorCode::NotPartitionRegular,
                "form " + form.to_string() + " has a zero-sum subset of coefficients");
  }
  if (form.arity() < 2) {
    throw Error(ErrorCode::PreconditionViolation,
                "single-variable forms only realize 0/1 targets and need no construction");
  }
  if (options.d0 == 0) throw Error(ErrorCode::InvalidArgument, "d0 must be non-zero");

  ConstructionState state{form, false, options.d0, std::nullopt, {}, GroundSet({options.d0}), {}};
  state.profile = rep_function(form, state.union_set, std::nullopt, options.budget);
  if (!check_counts_against_target(form, state.union_set, target, options.budget).ok()) {
    throw Error(ErrorCode::PreconditionViolation,
                "the seed {" + to_string(options.d0) + "} already violates the target");
  }

  const BlockLayout layout = make_block_layout(form, false);
  const BigInt growth0 = options.growth0.value_or(default_growth(form));
  if (growth0 <= 0) throw Error(ErrorCode::InvalidArgument, "M0 must be positive");

  MultisetOrdering ordering(target);
  MultisetEntry entry = ordering.next();
  for (std::size_t k = 1; k <= options.steps; ++k) {
    while (satisfied(state.profile, entry)) entry = ordering.next();

    BigInt growth = growth0;
    std::string trace;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt <= options.retry_cap; ++attempt) {
      BlockProposal proposal = propose_block(state, layout, entry.n, growth);
      const std::set<BigInt> distinct(proposal.elements.begin(), proposal.elements.end());
      std::optional<std::string> reason;
      std::map<BigInt, std::uint64_t> added;
      if (distinct.size() != proposal.elements.size()) {
        reason = "block elements are not distinct";
      } else {
        for (const auto& x : proposal.elements) {
          if (state.union_set.contains(x)) reason = "element " + to_string(x) + " already present";
        }
      }
      if (!reason) {
        added = added_classes(form, state.union_set, proposal.elements, options.budget);
        reason = reject_reason(state, target, added, entry);
      }
      if (!reason) {
        BlockRecord record;
        record.step = k;
        record.target = entry.n;
        record.target_copy = entry.copy;
        record.target_position = entry.position;
        record.growth = growth;
        record.retries = attempt;
        record.elements = std::move(proposal.elements);
        record.deltas = std::move(proposal.deltas);
        record.previous_max_abs = state.union_set.max_abs();
        state.union_set = state.union_set.with(record.elements);
        state.profile.merge(added);
        record.support_size = state.profile.counts.size();
        state.blocks.push_back(std::move(record));
        accepted = true;
        break;
      }
      trace += "  M=" + to_string(growth) + ": " + *reason + "\n";
      growth *= 2;
    }
    if (!accepted) {
      throw Error(ErrorCode::RetryExhausted,
                  "step " + std::to_string(k) + " (target " + to_string(entry.n) + " copy " +
                      std::to_string(entry.copy) + ") failed after " +
                      std::to_string(options.retry_cap) + " doublings:\n" + trace);
    }
  }
  return state;
}

TargetReport check_counts_against_target(const LinearForm& form, const GroundSet& set,
                                         const TargetFunction& target, std::uint64_t budget) {
  TargetReport report;
  const RepProfile profile = rep_function(form, set, std::nullopt, budget);
  for (const auto& [n, c] : profile.counts) {
    if (target.is_zero(n)) {
      report.zero_hits.emplace_back(n, c);
    } else if (!target.at(n).admits(c)) {
      report.overshoots.emplace_back(n, c);
    }
  }
  return report;
}

TargetAudit audit_target_construction(const ConstructionState& state,
                                      const TargetFunction& target, std::uint64_t budget) {
  TargetAudit audit;
  auto fail = [&audit](bool& flag, std::string message) {
    flag = false;
    audit.failures.push_back(std::move(message));
  };

  MultisetOrdering ordering(target);
  std::vector<MultisetEntry> seen_entries;
  RepProfile before = rep_function(state.form, state.prefix(0), std::nullopt, budget);
  std::uint64_t last_position = 0;
  for (std::size_t k = 1; k <= state.step(); ++k) {
    const BlockRecord& block = state.blocks[k - 1];
    const RepProfile after = rep_function(state.form, state.prefix(k), std::nullopt, budget);
    for (const auto& [n, c] : after.counts) {
      if (target.is_zero(n)) {
        fail(audit.avoids_zeros, "step " + std::to_string(k) + " represents zero " + to_string(n));
      } else if (!target.at(n).admits(c)) {
        fail(audit.never_overshoot, "step " + std::to_string(k) + ": " + to_string(n) +
                                        " represented " + std::to_string(c) + " times");
      }
    }
    if (k > 1 && block.target_position <= last_position) {
      fail(audit.target_progress, "step " + std::to_string(k) + " went backwards in the ordering");
    }
    last_position = block.target_position;
    if (before.count(block.target) > block.target_copy) {
      fail(audit.target_progress,
           "step " + std::to_string(k) + " served an already satisfied slot");
    }
    while (seen_entries.size() <= block.target_position) seen_entries.push_back(ordering.next());
    const MultisetEntry& served = seen_entries[block.target_position];
    if (served.n != block.target || served.copy != block.target_copy) {
      fail(audit.target_progress, "step " + std::to_string(k) + " position mismatch");
    }
    for (std::uint64_t p = 0; p <= block.target_position; ++p) {
      if (after.count(seen_entries[p].n) <= seen_entries[p].copy) {
        fail(audit.target_progress, "slot " + std::to_string(p) + " (" +
                                        to_string(seen_entries[p].n) + ") unserved after step " +
                                        std::to_string(k));
        break;
      }
    }
    const BigInt floor = block.growth * std::max(BigInt(1), block.previous_max_abs);
    bool certified = !block.deltas.empty() && block.deltas.front() > floor;
    for (std::size_t i = 1; certified && i < block.deltas.size(); ++i) {
      certified = block.deltas[i] > block.growth * block.deltas[i - 1];
    }
    if (!certified) {
      fail(audit.growth_certificate, "block " + std::to_string(k) + " violates the growth ratio");
    }
    before = after;
  }
  return audit;
}

}  // namespace linrep
