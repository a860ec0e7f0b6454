// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "linrep/bigint.hpp"
#include "linrep/forms.hpp"
#include "linrep/repcount.hpp"

namespace linrep {

/// One accepted step of a block construction.
struct BlockRecord {
  std::size_t step = 0;
  BigInt target;
  /// Multiset copy index served by this step (0 for unique bases).
  std::uint64_t target_copy = 0;
  /// Position of that copy in the multiset ordering (step - 1 for unique bases).
  std::uint64_t target_position = 0;
  /// Growth constant M_k the block was accepted with.
  BigInt growth;
  std::size_t retries = 0;
  std::vector<BigInt> elements;
  /// delta_{k,1..} chosen before the Bezout shift; empty for builders that
  /// do not use them.
  std::vector<BigInt> deltas;
  /// max |x| over the set before this block was added.
  BigInt previous_max_abs;
  /// Number of distinct integers represented after the step.
  std::size_t support_size = 0;
};

/// Snapshot of a block construction A = A_0 u A_1 u ... after `step()` steps.
struct ConstructionState {
  LinearForm form;
  /// Set when the form is +-x_1: the whole line is the unique basis and no
  /// blocks are built.
  bool trivial_whole_line = false;
  BigInt d0;
  std::optional<BigInt> half_line_bound;
  std::vector<BlockRecord> blocks;
  GroundSet union_set;
  RepProfile profile;

  std::size_t step() const noexcept { return blocks.size(); }
  std::vector<BigInt> covered_targets() const;
  std::vector<BigInt> growth_schedule() const;
  std::vector<std::size_t> retry_log() const;
  /// Union of A_0..A_j.
  GroundSet prefix(std::size_t j) const;
};

}  // namespace linrep
