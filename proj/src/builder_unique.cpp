// SPDX-License-Identifier: Apache-2.0
#include "linrep/builder_unique.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "linrep/error.hpp"

namespace linrep {

BlockLayout make_block_layout(const LinearForm& form, bool half_line) {
  if (form.arity() < 2) {
    throw Error(ErrorCode::InvalidArgument, "block layouts need at least two variables");
  }
  if (!is_primitive(form)) {
    throw Error(ErrorCode::NotPrimitive, "form " + form.to_string() + " is not primitive");
  }
  const std::size_t h = form.arity();
  std::vector<std::size_t> order(h);
  std::iota(order.begin(), order.end(), 0);
  if (half_line) {
    if (form.same_sign()) {
      throw Error(ErrorCode::MixedSignRequired,
                  "half-line bases need coefficients of both signs; form " + form.to_string() +
                      " has one sign");
    }
    // e_k ~ -a_{h-1} delta_{h-1} / a_h is positive only when the last two
    // coefficients differ in sign.
    if (sgn(form[order[h - 2]]) == sgn(form[order[h - 1]])) {
      for (std::size_t i = h - 2; i-- > 0;) {
        if (sgn(form[order[i]]) != sgn(form[order[h - 1]])) {
          std::swap(order[i], order[h - 2]);
          break;
        }
      }
    }
  }
  BlockLayout layout;
  layout.order = order;
  for (const std::size_t i : order) layout.coefficients.push_back(form[i]);
  layout.bezout = bezout_witness(LinearForm(layout.coefficients));
  return layout;
}

BigInt default_growth(const LinearForm& form) {
  const BigInt h(static_cast<unsigned long>(form.arity() - 1));
  return 4 * form.abs_coefficient_sum() * (h + 2);
}

BigInt next_target(const ConstructionState& state) {
  for (BigInt idx = 0;; ++idx) {
    BigInt n = spiral(idx);
    if (state.profile.count(n) == 0) return n;
  }
}

BlockProposal propose_block(const ConstructionState& state, const BlockLayout& layout,
                            const BigInt& target, const BigInt& growth) {
  if (growth <= 0) throw Error(ErrorCode::InvalidArgument, "growth constant must be positive");
  const std::size_t h = layout.coefficients.size();
  const BigInt& last = layout.coefficients[h - 1];
  BigInt base = growth * std::max(BigInt(1), state.union_set.max_abs()) + 1;
  while (true) {
    BlockProposal p;
    p.deltas.reserve(h - 1);
    BigInt delta = base;
    BigInt weighted = 0;
    for (std::size_t i = 0; i + 1 < h; ++i) {
      if (i > 0) delta = growth * delta + 1;
      weighted += layout.coefficients[i] * delta;
      p.deltas.push_back(delta);
    }
    // u = weighted + last * e must land in [0, |last|).
    p.remainder = euclid_mod(weighted, last);
    p.epsilon = (p.remainder - weighted) / last;
    const BigInt shift = target - p.remainder;
    p.elements.reserve(h);
    for (std::size_t i = 0; i + 1 < h; ++i) {
      p.elements.push_back(p.deltas[i] + shift * layout.bezout[i]);
    }
    p.elements.push_back(p.epsilon + shift * layout.bezout[h - 1]);

    if (!state.half_line_bound) return p;
    const BigInt lowest = *std::min_element(p.elements.begin(), p.elements.end());
    if (lowest >= *state.half_line_bound) return p;
    base += *state.half_line_bound - lowest;
  }
}

BlockVerdict verify_block(const ConstructionState& state, std::span<const BigInt> candidate,
                          const BigInt& target, std::uint64_t budget) {
  BlockVerdict verdict;
  std::set<BigInt> seen;
  for (const auto& x : candidate) {
    if (!seen.insert(x).second) {
      verdict.reason = "duplicate element " + to_string(x) + " inside block";
      verdict.offending = x;
      return verdict;
    }
    if (state.union_set.contains(x)) {
      verdict.reason = "element " + to_string(x) + " already in the set";
      verdict.offending = x;
      return verdict;
    }
  }
  verdict.added = added_classes(state.form, state.union_set, candidate, budget);
  for (const auto& [n, c] : verdict.added) {
    const std::uint64_t total = state.profile.count(n) + c;
    if (total > 1) {
      verdict.reason = to_string(n) + " is represented " + std::to_string(total) + " times";
      verdict.offending = n;
      return verdict;
    }
  }
  const auto hit = verdict.added.find(target);
  if (state.profile.count(target) + (hit == verdict.added.end() ? 0 : hit->second) != 1) {
    verdict.reason = "target " + to_string(target) + " is not represented";
    verdict.offending = target;
    return verdict;
  }
  verdict.ok = true;
  return verdict;
}

ConstructionState build_unique_basis(const LinearForm& form, const UniqueBuildOptions& options) {
  if (!is_primitive(form)) {
    throw Error(ErrorCode::NotPrimitive, "form " + form.to_string() + " is not primitive");
  }
  if (options.d0 == 0) throw Error(ErrorCode::InvalidArgument, "d0 must be non-zero");

  ConstructionState state{form, false, options.d0, options.half_line, {}, {}, {}};
  if (form.arity() == 1) {
    // +-x_1: every integer is represented exactly once by Z itself.
    state.trivial_whole_line = true;
    return state;
  }

  const BlockLayout layout = make_block_layout(form, options.half_line.has_value());
  if (options.half_line && state.d0 < *options.half_line) {
    state.d0 = *options.half_line == 0 ? BigInt(1) : *options.half_line;
  }
  const BigInt growth0 = options.growth0.value_or(default_growth(form));
  if (growth0 <= 0) throw Error(ErrorCode::InvalidArgument, "M0 must be positive");

  state.union_set = GroundSet({state.d0});
  state.profile = rep_function(form, state.union_set, std::nullopt, options.budget);

  for (std::size_t k = 1; k <= options.steps; ++k) {
    const BigInt target = next_target(state);
    BigInt growth = growth0;
    std::string trace;
    bool accepted = false;
    for (std::size_t attempt = 0; attempt <= options.retry_cap; ++attempt) {
      BlockProposal proposal = propose_block(state, layout, target, growth);
      BlockVerdict verdict = verify_block(state, proposal.elements, target, options.budget);
      if (verdict.ok) {
        BlockRecord record;
        record.step = k;
        record.target = target;
        record.target_position = k - 1;
        record.growth = growth;
        record.retries = attempt;
        record.elements = std::move(proposal.elements);
        record.deltas = std::move(proposal.deltas);
        record.previous_max_abs = state.union_set.max_abs();
        state.union_set = state.union_set.with(record.elements);
        state.profile.merge(verdict.added);
        record.support_size = state.profile.counts.size();
        state.blocks.push_back(std::move(record));
        accepted = true;
        break;
      }
      trace += "  M=" + to_string(growth) + ": " + verdict.reason + "\n";
      growth *= 2;
    }
    if (!accepted) {
      throw Error(ErrorCode::RetryExhausted,
                  "step " + std::to_string(k) + " (target " + to_string(target) +
                      ") failed after " + std::to_string(options.retry_cap) + " doublings:\n" +
                      trace);
    }
  }
  return state;
}

UniqueAudit audit_unique_basis(const ConstructionState& state, std::uint64_t budget) {
  UniqueAudit audit;
  if (state.trivial_whole_line) return audit;
  auto fail = [&audit](bool& flag, std::string message) {
    flag = false;
    audit.failures.push_back(std::move(message));
  };

  std::size_t total = 1;
  for (const auto& b : state.blocks) total += b.elements.size();
  const GroundSet full = state.prefix(state.step());
  if (full.size() != total || !(full == state.union_set)) {
    fail(audit.blocks_disjoint, "blocks overlap or do not add up to the stored set");
  }

  const RepProfile final_profile = rep_function(state.form, full, std::nullopt, budget);
  for (const auto& [n, c] : final_profile.counts) {
    if (c > 1) {
      fail(audit.at_most_once, to_string(n) + " represented " + std::to_string(c) + " times");
      break;
    }
  }

  RepProfile previous = rep_function(state.form, state.prefix(0), std::nullopt, budget);
  for (std::size_t j = 0; j < state.step(); ++j) {
    const BlockRecord& block = state.blocks[j];
    if (final_profile.count(block.target) != 1) {
      fail(audit.targets_exactly_once, "target " + to_string(block.target) +
                                           " not represented exactly once");
    }
    const RepProfile before = std::move(previous);
    const RepProfile after = rep_function(state.form, state.prefix(j + 1), std::nullopt, budget);
    previous = after;
    BigInt expected;
    for (BigInt idx = 0;; ++idx) {
      expected = spiral(idx);
      if (before.count(expected) == 0) break;
    }
    if (expected != block.target) {
      fail(audit.monotone_coverage, "step " + std::to_string(j + 1) + " served " +
                                        to_string(block.target) + ", expected " +
                                        to_string(expected));
    }
    // B_{j+1} is a subset of B_k, so with both counts equal to 1 the
    // representations of t_j coincide.
    if (after.count(block.target) != 1 || final_profile.count(block.target) != 1) {
      fail(audit.prefix_stable, "representations of " + to_string(block.target) +
                                    " changed after step " + std::to_string(j + 1));
    }
    const BigInt floor = block.growth * std::max(BigInt(1), block.previous_max_abs);
    bool certified = !block.deltas.empty() && block.deltas.front() > floor;
    for (std::size_t i = 1; certified && i < block.deltas.size(); ++i) {
      certified = block.deltas[i] > block.growth * block.deltas[i - 1];
    }
    if (!certified) {
      fail(audit.growth_certificate,
           "block " + std::to_string(j + 1) + " violates the growth ratio");
    }
  }

  if (state.half_line_bound && !full.empty() && full.min() < *state.half_line_bound) {
    fail(audit.half_line, "element " + to_string(full.min()) + " lies below the half-line bound");
  }
  return audit;
}

}  // namespace linrep
