// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linrep/bigint.hpp"

namespace linrep {

/// The form a_1 x_1 + ... + a_h x_h. Coefficients are non-zero and h >= 1.
class LinearForm {
 public:
  explicit LinearForm(std::vector<BigInt> coefficients);

  /// Parses "1,2,-3". A zero coefficient is rejected with its 1-based position.
  static LinearForm parse(std::string_view text);

  std::size_t arity() const noexcept { return coeffs_.size(); }
  const BigInt& operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const BigInt> coefficients() const noexcept { return coeffs_; }

  BigInt coefficient_sum() const;
  BigInt abs_coefficient_sum() const;
  bool same_sign() const;

  /// Same comma-separated format accepted by parse().
  std::string to_string() const;

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

 private:
  std::vector<BigInt> coeffs_;
};

bool is_primitive(const LinearForm& form);

/// Coefficients s with sum a_i s_i = 1, from a left fold of two-term extended
/// gcd steps. Once the running gcd is 1 the remaining entries are 0.
std::vector<BigInt> bezout_witness(const LinearForm& form);

/// First non-empty index subset (in increasing bitmask order) whose
/// coefficients sum to zero. Costs O(2^h).
std::optional<std::vector<std::size_t>> zero_sum_subset(const LinearForm& form);

/// True iff no non-empty subset of the coefficient multiset sums to zero.
bool is_partition_regular(const LinearForm& form);

/// Two distinct index subsets with equal coefficient sums, if any.
std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
equal_subset_sums(const LinearForm& form);

bool has_ordered_unique_basis_obstruction(const LinearForm& form);

/// A variable substitution pair. psi[i] / chi[i] is the 0-based index of the
/// variable x_i is sent to, or nullopt for the constant 0.
struct AutomorphismWitness {
  std::vector<std::optional<std::size_t>> psi;
  std::vector<std::optional<std::size_t>> chi;

  bool is_trivial() const;
  /// Human readable, e.g. "psi(x1)=0, psi(x2)=x2; chi(x1)=0, chi(x2)=x1".
  std::string to_string() const;
};

/// Coefficients of sum a_i psi(x_i) - sum a_i chi(x_i), collected per variable.
std::vector<BigInt> expand_substitution(const LinearForm& form,
                                        const AutomorphismWitness& witness);

bool is_automorphism(const LinearForm& form, const AutomorphismWitness& witness);

inline constexpr std::size_t kDefaultAutomorphismArityCap = 5;

/// Exhaustive search over all (h+1)^h x (h+1)^h substitution pairs.
/// Throws SearchSpaceTooLarge when the arity exceeds max_arity.
std::optional<AutomorphismWitness> find_nontrivial_automorphism(
    const LinearForm& form, std::size_t max_arity = kDefaultAutomorphismArityCap);

/// The ordering 0, 1, -1, 2, -2, ... of the integers.
BigInt spiral(const BigInt& index);
BigInt spiral_index(const BigInt& n);

}  // namespace linrep
