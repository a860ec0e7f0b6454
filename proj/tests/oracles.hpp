// SPDX-License-Identifier: Apache-2.0
// Slow reference implementations used only by the tests. They share no code
// with the library beyond the BigInt type.
#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

using Int = mpz_class;
using Weights = std::map<Int, Int>;

struct Profile {
  std::map<Int, std::uint64_t> classes;  // unordered counts
  std::map<Int, std::uint64_t> ordered;  // ordered solution counts
};

// Every ordered tuple, collapsed by the per-value coefficient sums.
inline Profile enumerate(const std::vector<Int>& coeffs, const std::vector<Int>& elements) {
  Profile out;
  const std::size_t h = coeffs.size();
  const std::size_t n = elements.size();
  if (n == 0) return out;
  std::set<std::pair<Int, Weights>> seen;
  std::vector<std::size_t> idx(h, 0);
  while (true) {
    Weights w;
    Int value = 0;
    for (std::size_t i = 0; i < h; ++i) {
      w[elements[idx[i]]] += coeffs[i];
      value += coeffs[i] * elements[idx[i]];
    }
    for (auto it = w.begin(); it != w.end();) {
      it = it->second == 0 ? w.erase(it) : std::next(it);
    }
    ++out.ordered[value];
    if (seen.emplace(value, std::move(w)).second) ++out.classes[value];
    std::size_t pos = 0;
    while (pos < h && ++idx[pos] == n) idx[pos++] = 0;
    if (pos == h) break;
  }
  return out;
}

// {(a/b) n + c} with exact rationals, integers only.
inline std::set<Int> rational_X(const Int& n, long l, long m, long p) {
  std::set<Int> out;
  for (long a = -l; a <= l; ++a) {
    for (long b = -m; b <= m; ++b) {
      if (b == 0) continue;
      for (long c = -p; c <= p; ++c) {
        mpq_class q(Int(a) * n, Int(b));
        q.canonicalize();
        q += c;
        if (q.get_den() == 1) out.insert(q.get_num());
      }
    }
  }
  return out;
}

// Does some non-empty subset of the coefficients sum to zero?
inline bool has_zero_subset(const std::vector<Int>& coeffs) {
  const std::size_t h = coeffs.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << h); ++mask) {
    Int s = 0;
    for (std::size_t i = 0; i < h; ++i) {
      if (mask >> i & 1) s += coeffs[i];
    }
    if (s == 0) return true;
  }
  return false;
}

inline Int gcd_all(const std::vector<Int>& coeffs) {
  Int g = 0;
  for (const auto& c : coeffs) {
    Int r;
    mpz_gcd(r.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    g = r;
  }
  return g;
}

}  // namespace oracle
