// SPDX-License-Identifier: Apache-2.0
#include "linrep/construction.hpp"

namespace linrep {

std::vector<BigInt> ConstructionState::covered_targets() const {
  std::vector<BigInt> out;
  for (const auto& b : blocks) out.push_back(b.target);
  return out;
}

std::vector<BigInt> ConstructionState::growth_schedule() const {
  std::vector<BigInt> out;
  for (const auto& b : blocks) out.push_back(b.growth);
  return out;
}

std::vector<std::size_t> ConstructionState::retry_log() const {
  std::vector<std::size_t> out;
  for (const auto& b : blocks) out.push_back(b.retries);
  return out;
}

GroundSet ConstructionState::prefix(std::size_t j) const {
  std::vector<BigInt> all{d0};
  for (std::size_t i = 0; i < j && i < blocks.size(); ++i) {
    all.insert(all.end(), blocks[i].elements.begin(), blocks[i].elements.end());
  }
  return GroundSet(std::move(all));
}

}  // namespace linrep
