// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <random>

#include "linrep/error.hpp"
#include "linrep/forms.hpp"
#include "oracles.hpp"

using namespace linrep;

namespace {

LinearForm F(const char* text) { return LinearForm::parse(text); }

std::vector<BigInt> coeffs(const LinearForm& f) {
  return {f.coefficients().begin(), f.coefficients().end()};
}

}  // namespace

TEST_CASE("parse and print") {
  CHECK(F("1,2,-3").to_string() == "1,2,-3");
  CHECK(F(" 4 , -7").to_string() == "4,-7");
  CHECK(F("1").arity() == 1);
  try {
    F("1,0,2");
    FAIL("zero coefficient accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  CHECK_THROWS_AS(F(""), Error);
  CHECK_THROWS_AS(F("1,,2"), Error);
  CHECK_THROWS_AS(F("1,x"), Error);
  CHECK(F("123456789012345678901234567890,1")[0] ==
        BigInt("123456789012345678901234567890"));
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(F("1,1")));
  CHECK_FALSE(is_primitive(F("2,4")));
  CHECK(is_primitive(F("6,10,15")));
  CHECK_FALSE(is_primitive(F("-6,9")));
}

TEST_CASE("bezout witness") {
  CHECK(bezout_witness(F("1,1")) == std::vector<BigInt>{1, 0});
  CHECK(bezout_witness(F("2,3")) == std::vector<BigInt>{-1, 1});
  CHECK(bezout_witness(F("1,-1")) == std::vector<BigInt>{1, 0});
  CHECK_THROWS_AS(bezout_witness(F("2,4")), Error);

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-60, 60);
  std::uniform_int_distribution<int> len(1, 5);
  int checked = 0;
  while (checked < 300) {
    std::vector<BigInt> c;
    for (int i = len(rng); i > 0; --i) {
      int v = 0;
      while (v == 0) v = coef(rng);
      c.emplace_back(v);
    }
    if (oracle::gcd_all(c) != 1) continue;
    const LinearForm f(c);
    const auto s = bezout_witness(f);
    REQUIRE(s.size() == c.size());
    BigInt total = 0;
    for (std::size_t i = 0; i < c.size(); ++i) total += c[i] * s[i];
    CHECK(total == 1);
    ++checked;
  }
}

TEST_CASE("partition regularity") {
  CHECK(is_partition_regular(F("1,1,1")));
  CHECK_FALSE(is_partition_regular(F("1,-1")));
  CHECK_FALSE(is_partition_regular(F("1,2,-3")));
  CHECK(zero_sum_subset(F("1,2,-3")) == std::vector<std::size_t>{0, 1, 2});
  CHECK_FALSE(zero_sum_subset(F("1,2")).has_value());
  // repeated coefficients count as separate members
  CHECK_FALSE(is_partition_regular(F("2,2,-4")));
}

TEST_CASE("partition regularity is permutation invariant and matches the subset oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<BigInt> c;
    for (int i = 0; i < 4; ++i) {
      int v = 0;
      while (v == 0) v = coef(rng);
      c.emplace_back(v);
    }
    const bool regular = is_partition_regular(LinearForm(c));
    CHECK(regular == !oracle::has_zero_subset(c));
    std::shuffle(c.begin(), c.end(), rng);
    CHECK(is_partition_regular(LinearForm(c)) == regular);
  }
}

TEST_CASE("ordered unique basis obstruction") {
  CHECK(has_ordered_unique_basis_obstruction(F("1,1")));
  CHECK_FALSE(has_ordered_unique_basis_obstruction(F("1,2")));
  CHECK(has_ordered_unique_basis_obstruction(F("1,-1")));
  CHECK_FALSE(has_ordered_unique_basis_obstruction(F("1,3,9")));
  CHECK(has_ordered_unique_basis_obstruction(F("1,2,3")));
}

TEST_CASE("automorphism witnesses") {
  SUBCASE("x1 - x2") {
    const AutomorphismWitness known{{std::nullopt, std::size_t{1}},
                                    {std::nullopt, std::size_t{0}}};
    CHECK_FALSE(known.is_trivial());
    CHECK(is_automorphism(F("1,-1"), known));
    const auto found = find_nontrivial_automorphism(F("1,-1"));
    REQUIRE(found.has_value());
    CHECK_FALSE(found->is_trivial());
    CHECK(is_automorphism(F("1,-1"), *found));
  }
  SUBCASE("x1 + x2 has none") { CHECK_FALSE(find_nontrivial_automorphism(F("1,1")).has_value()); }
  SUBCASE("zero-sum forms have one") {
    for (const char* text : {"1,2,-3", "1,1,-2", "2,-1,-1,5", "3,-3"}) {
      const auto w = find_nontrivial_automorphism(F(text));
      REQUIRE_MESSAGE(w.has_value(), text);
      CHECK(is_automorphism(F(text), *w));
      CHECK(expand_substitution(F(text), *w) == coeffs(F(text)));
    }
  }
  SUBCASE("identity is trivial") {
    const AutomorphismWitness id{{std::size_t{0}, std::size_t{1}}, {std::nullopt, std::nullopt}};
    CHECK(id.is_trivial());
    CHECK(is_automorphism(F("1,1"), id));
  }
  SUBCASE("a coefficient pair that sums to a third gives a witness") {
    // 1 x1 - 2 x2: psi = (0, x2), chi = (x1, x1).
    const AutomorphismWitness w{{std::nullopt, std::size_t{1}},
                                {std::size_t{0}, std::size_t{0}}};
    CHECK(is_automorphism(F("1,-2"), w));
    CHECK(is_partition_regular(F("1,-2")));
  }
  CHECK_THROWS_AS(find_nontrivial_automorphism(F("1,1,1,1,1,1")), Error);
}

TEST_CASE("every zero-sum form has a verified witness") {
  // Exhaustive over h <= 3 and coefficients in [-3, 3].
  std::vector<int> vals{-3, -2, -1, 1, 2, 3};
  for (std::size_t h = 1; h <= 3; ++h) {
    std::vector<std::size_t> idx(h, 0);
    while (true) {
      std::vector<BigInt> c;
      for (auto i : idx) c.emplace_back(vals[i]);
      const LinearForm f(c);
      if (oracle::has_zero_subset(c)) {
        const auto w = find_nontrivial_automorphism(f);
        REQUIRE_MESSAGE(w.has_value(), f.to_string());
        CHECK(is_automorphism(f, *w));
      }
      std::size_t pos = 0;
      while (pos < h && ++idx[pos] == vals.size()) idx[pos++] = 0;
      if (pos == h) break;
    }
  }
}

TEST_CASE("spiral ordering") {
  CHECK(spiral(0) == 0);
  CHECK(spiral(1) == 1);
  CHECK(spiral(2) == -1);
  CHECK(spiral(3) == 2);
  CHECK(spiral(4) == -2);
  CHECK(spiral_index(-2) == 4);
  for (long i = 0; i < 2000; ++i) CHECK(spiral_index(spiral(i)) == i);
  for (long n = -1000; n <= 1000; ++n) CHECK(spiral(spiral_index(n)) == n);
  const BigInt big("-98765432109876543210987654321");
  CHECK(spiral(spiral_index(big)) == big);
  CHECK_THROWS_AS(spiral(-1), Error);
}
