// SPDX-License-Identifier: Apache-2.0
#include "linrep/forms.hpp"

#include <algorithm>
#include <cstdint>

#include "linrep/error.hpp"

namespace linrep {

LinearForm::LinearForm(std::vector<BigInt> coefficients) : coeffs_(std::move(coefficients)) {
  if (coeffs_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "a linear form needs at least one coefficient");
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) {
      throw Error(ErrorCode::Parse,
                  "coefficient " + std::to_string(i + 1) + " is zero");
    }
  }
}

LinearForm LinearForm::parse(std::string_view text) {
  std::vector<BigInt> coeffs;
  std::size_t pos = 0;
  std::size_t index = 1;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    const std::string_view piece =
        text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    BigInt value;
    try {
      value = parse_bigint(piece);
    } catch (const Error&) {
      throw Error(ErrorCode::Parse, "coefficient " + std::to_string(index) + " ('" +
                                        std::string(piece) + "') is not a decimal integer");
    }
    if (value == 0) {
      throw Error(ErrorCode::Parse, "coefficient " + std::to_string(index) + " is zero");
    }
    coeffs.push_back(std::move(value));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    ++index;
  }
  return LinearForm(std::move(coeffs));
}

BigInt LinearForm::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& a : coeffs_) s += a;
  return s;
}

BigInt LinearForm::abs_coefficient_sum() const {
  BigInt s = 0;
  for (const auto& a : coeffs_) s += abs(a);
  return s;
}

bool LinearForm::same_sign() const {
  const int first = sgn(coeffs_.front());
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [first](const BigInt& a) { return sgn(a) == first; });
}

std::string LinearForm::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) out += ',';
    out += linrep::to_string(coeffs_[i]);
  }
  return out;
}

bool is_primitive(const LinearForm& form) {
  BigInt g = 0;
  for (const auto& a : form.coefficients()) g = gcd(g, a);
  return g == 1;
}

namespace {

// Returns (g, u, v) with g = gcd(a, b) = a*u + b*v for a > 0, b > 0.
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& u, BigInt& v) {
  BigInt old_r = a, r = b;
  BigInt old_s = 1, s = 0;
  BigInt old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  g = old_r;
  u = old_s;
  v = old_t;
}

}  // namespace

std::vector<BigInt> bezout_witness(const LinearForm& form) {
  if (!is_primitive(form)) {
    throw Error(ErrorCode::NotPrimitive, "form " + form.to_string() + " is not primitive");
  }
  std::vector<BigInt> s;
  s.reserve(form.arity());
  BigInt g = abs(form[0]);
  s.push_back(sgn(form[0]) > 0 ? BigInt(1) : BigInt(-1));
  for (std::size_t i = 1; i < form.arity(); ++i) {
    if (g == 1) {
      s.push_back(0);
      continue;
    }
    BigInt next_g, u, v;
    extended_gcd(g, abs(form[i]), next_g, u, v);
    for (auto& x : s) x *= u;
    s.push_back(sgn(form[i]) > 0 ? v : BigInt(-v));
    g = next_g;
  }
  return s;
}

std::optional<std::vector<std::size_t>> zero_sum_subset(const LinearForm& form) {
  const std::size_t h = form.arity();
  if (h >= 63) {
    throw Error(ErrorCode::SearchSpaceTooLarge, "subset enumeration needs h < 63");
  }
  const std::uint64_t limit = std::uint64_t{1} << h;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    BigInt sum = 0;
    for (std::size_t i = 0; i < h; ++i) {
      if (mask >> i & 1U) sum += form[i];
    }
    if (sum == 0) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < h; ++i) {
        if (mask >> i & 1U) members.push_back(i);
      }
      return members;
    }
  }
  return std::nullopt;
}

bool is_partition_regular(const LinearForm& form) { return !zero_sum_subset(form).has_value(); }

std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
equal_subset_sums(const LinearForm& form) {
  const std::size_t h = form.arity();
  if (h >= 63) {
    throw Error(ErrorCode::SearchSpaceTooLarge, "subset enumeration needs h < 63");
  }
  const std::uint64_t limit = std::uint64_t{1} << h;
  std::vector<std::pair<BigInt, std::uint64_t>> sums;
  sums.reserve(limit);
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    BigInt sum = 0;
    for (std::size_t i = 0; i < h; ++i) {
      if (mask >> i & 1U) sum += form[i];
    }
    sums.emplace_back(std::move(sum), mask);
  }
  std::stable_sort(sums.begin(), sums.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  auto to_indices = [h](std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < h; ++i) {
      if (mask >> i & 1U) out.push_back(i);
    }
    return out;
  };
  for (std::size_t i = 1; i < sums.size(); ++i) {
    if (sums[i].first == sums[i - 1].first) {
      return std::make_pair(to_indices(sums[i - 1].second), to_indices(sums[i].second));
    }
  }
  return std::nullopt;
}

bool has_ordered_unique_basis_obstruction(const LinearForm& form) {
  return equal_subset_sums(form).has_value();
}

bool AutomorphismWitness::is_trivial() const {
  return std::none_of(chi.begin(), chi.end(), [](const auto& c) { return c.has_value(); });
}

std::string AutomorphismWitness::to_string() const {
  auto image = [](const std::optional<std::size_t>& v) {
    return v ? "x" + std::to_string(*v + 1) : std::string("0");
  };
  std::string out;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i) out += ", ";
    out += "psi(x" + std::to_string(i + 1) + ")=" + image(psi[i]);
  }
  out += "; ";
  for (std::size_t i = 0; i < chi.size(); ++i) {
    if (i) out += ", ";
    out += "chi(x" + std::to_string(i + 1) + ")=" + image(chi[i]);
  }
  return out;
}

std::vector<BigInt> expand_substitution(const LinearForm& form,
                                        const AutomorphismWitness& witness) {
  const std::size_t h = form.arity();
  if (witness.psi.size() != h || witness.chi.size() != h) {
    throw Error(ErrorCode::ArityMismatch, "substitution arity does not match the form");
  }
  std::vector<BigInt> collected(h, BigInt(0));
  for (std::size_t i = 0; i < h; ++i) {
    if (witness.psi[i]) collected.at(*witness.psi[i]) += form[i];
    if (witness.chi[i]) collected.at(*witness.chi[i]) -= form[i];
  }
  return collected;
}

bool is_automorphism(const LinearForm& form, const AutomorphismWitness& witness) {
  const auto collected = expand_substitution(form, witness);
  return std::equal(collected.begin(), collected.end(), form.coefficients().begin());
}

namespace {

// Maps an assignment digit (0 = constant zero, j = variable j-1) back to the
// witness representation.
std::vector<std::optional<std::size_t>> digits_to_map(const std::vector<std::size_t>& digits) {
  std::vector<std::optional<std::size_t>> out(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != 0) out[i] = digits[i] - 1;
  }
  return out;
}

// Increments a mixed-radix counter with every digit in [0, base). Returns
// false once it wraps around to all zeros.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
  for (auto& d : digits) {
    if (++d < base) return true;
    d = 0;
  }
  return false;
}

template <typename Int>
std::optional<AutomorphismWitness> search_automorphism(const std::vector<Int>& a) {
  const std::size_t h = a.size();
  const std::size_t base = h + 1;
  std::vector<std::size_t> chi(h, 0);
  std::vector<std::size_t> psi(h, 0);
  std::vector<Int> required(base);
  std::vector<Int> bucket(base);
  while (advance(chi, base)) {
    // Coefficient of x_j must come out as a_j: the psi side has to supply
    // a_j plus whatever chi subtracts from x_j.
    for (std::size_t j = 0; j < h; ++j) required[j + 1] = a[j];
    for (std::size_t i = 0; i < h; ++i) {
      if (chi[i] != 0) required[chi[i]] += a[i];
    }
    std::fill(psi.begin(), psi.end(), 0);
    do {
      std::fill(bucket.begin(), bucket.end(), Int(0));
      for (std::size_t i = 0; i < h; ++i) bucket[psi[i]] += a[i];
      bool match = true;
      for (std::size_t j = 1; j < base && match; ++j) match = bucket[j] == required[j];
      if (match) return AutomorphismWitness{digits_to_map(psi), digits_to_map(chi)};
    } while (advance(psi, base));
  }
  return std::nullopt;
}

}  // namespace

std::optional<AutomorphismWitness> find_nontrivial_automorphism(const LinearForm& form,
                                                                std::size_t max_arity) {
  if (form.arity() > max_arity) {
    throw Error(ErrorCode::SearchSpaceTooLarge,
                "automorphism search is capped at h <= " + std::to_string(max_arity) +
                    ", form has h = " + std::to_string(form.arity()));
  }
  // Bucket sums involve at most 2h coefficients; 2^40 leaves ample headroom.
  static const BigInt small_limit = BigInt(1) << 40;
  const bool small = std::all_of(form.coefficients().begin(), form.coefficients().end(),
                                 [](const BigInt& a) { return abs(a) < small_limit; });
  std::optional<AutomorphismWitness> found;
  if (small) {
    std::vector<std::int64_t> a;
    for (const auto& c : form.coefficients()) a.push_back(c.get_si());
    found = search_automorphism(a);
  } else {
    found = search_automorphism(std::vector<BigInt>(form.coefficients().begin(),
                                                    form.coefficients().end()));
  }
  if (found && !is_automorphism(form, *found)) {
    throw Error(ErrorCode::VerificationFailed, "automorphism search produced an invalid witness");
  }
  return found;
}

BigInt spiral(const BigInt& index) {
  if (index < 0) throw Error(ErrorCode::InvalidArgument, "spiral index must be non-negative");
  if (index == 0) return 0;
  if (index % 2 != 0) return (index + 1) / 2;
  return -(index / 2);
}

BigInt spiral_index(const BigInt& n) {
  if (n > 0) return 2 * n - 1;
  return -2 * n;
}

}  // namespace linrep
