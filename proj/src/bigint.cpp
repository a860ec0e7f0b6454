// SPDX-License-Identifier: Apache-2.0
#include "linrep/bigint.hpp"

#include <limits>

#include "linrep/error.hpp"

namespace linrep {

BigInt parse_bigint(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && (text[begin] == ' ' || text[begin] == '\t')) ++begin;
  while (end > begin && (text[end - 1] == ' ' || text[end - 1] == '\t')) --end;
  std::string_view body = text.substr(begin, end - begin);
  std::size_t digits = 0;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) digits = 1;
  if (digits == body.size()) {
    throw Error(ErrorCode::Parse, "expected a decimal integer, got '" + std::string(text) + "'");
  }
  for (std::size_t i = digits; i < body.size(); ++i) {
    if (body[i] < '0' || body[i] > '9') {
      throw Error(ErrorCode::Parse, "expected a decimal integer, got '" + std::string(text) + "'");
    }
  }
  std::string s(body[0] == '+' ? body.substr(1) : body);
  return BigInt(s, 10);
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

BigInt euclid_mod(const BigInt& a, const BigInt& b) {
  BigInt r;
  BigInt m = abs(b);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool fits_int64(const BigInt& v) {
  static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()), 10);
  static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()), 10);
  return v >= lo && v <= hi;
}

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::NotPartitionRegular: return "NotPartitionRegular";
    case ErrorCode::MixedSignRequired: return "MixedSignRequired";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::InsufficientPairs: return "InsufficientPairs";
    case ErrorCode::SequenceExhausted: return "SequenceExhausted";
    case ErrorCode::SupplyExhausted: return "SupplyExhausted";
    case ErrorCode::WindowInsufficient: return "WindowInsufficient";
    case ErrorCode::BoundedTarget: return "BoundedTarget";
    case ErrorCode::PreconditionViolation: return "PreconditionViolation";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

}  // namespace linrep
