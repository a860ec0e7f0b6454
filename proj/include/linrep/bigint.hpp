// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace linrep {

using BigInt = mpz_class;

/// Parses an optionally signed decimal integer. Throws Error(Parse).
BigInt parse_bigint(std::string_view text);

inline std::string to_string(const BigInt& v) { return v.get_str(10); }

inline BigInt abs_value(const BigInt& v) { return abs(v); }

inline int sign_of(const BigInt& v) { return sgn(v); }

/// Floor division and the matching non-negative-for-positive-divisor remainder.
BigInt floor_div(const BigInt& a, const BigInt& b);

/// Remainder in [0, |b|) for any non-zero b.
BigInt euclid_mod(const BigInt& a, const BigInt& b);

bool fits_int64(const BigInt& v);

struct BigIntHash {
  std::size_t operator()(const BigInt& v) const noexcept {
    const mpz_srcptr p = v.get_mpz_t();
    std::size_t h = static_cast<std::size_t>(mpz_sgn(p) + 1);
    const std::size_t n = mpz_size(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= static_cast<std::size_t>(mpz_getlimbn(p, static_cast<mp_size_t>(i))) +
           0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace linrep
