// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "linrep/builder_unique.hpp"
#include "linrep/error.hpp"
#include "oracles.hpp"

using namespace linrep;

namespace {

LinearForm F(const char* text) { return LinearForm::parse(text); }

ConstructionState seeded(const char* form, std::vector<BigInt> elems = {1}) {
  GroundSet set(elems);
  RepProfile p = rep_function(F(form), set);
  return ConstructionState{F(form), false, elems.front(), std::nullopt, {}, set, p};
}

std::vector<BigInt> elems_of(const ConstructionState& st) {
  return {st.union_set.elements().begin(), st.union_set.elements().end()};
}

}  // namespace

TEST_CASE("block layout") {
  const BlockLayout l = make_block_layout(F("2,3"), false);
  CHECK(l.coefficients == std::vector<BigInt>{2, 3});
  CHECK(l.bezout == std::vector<BigInt>{-1, 1});
  CHECK_THROWS_AS(make_block_layout(F("2,3"), true), Error);
  CHECK_THROWS_AS(make_block_layout(F("2,4"), false), Error);
  const BlockLayout h = make_block_layout(F("1,1,-2"), true);
  CHECK(sign_of(h.coefficients[1]) != sign_of(h.coefficients[2]));
  BigInt dot = 0;
  for (std::size_t i = 0; i < 3; ++i) dot += h.coefficients[i] * h.bezout[i];
  CHECK(dot == 1);
}

TEST_CASE("next target") {
  const ConstructionState st = seeded("1,1");
  CHECK(next_target(st) == 0);
  const ConstructionState covered = seeded("1,1", {5, -5});
  CHECK((next_target(covered) == 1 || next_target(covered) == -1));
}

TEST_CASE("proposals") {
  SUBCASE("(1,1), M = 10, target 0") {
    const ConstructionState st = seeded("1,1");
    const BlockProposal p = propose_block(st, make_block_layout(F("1,1"), false), 0, 10);
    CHECK(p.deltas == std::vector<BigInt>{11});
    CHECK(p.epsilon == -11);
    CHECK(p.remainder == 0);
    CHECK(p.elements == std::vector<BigInt>{11, -11});
  }
  SUBCASE("(2,3), M = 10: remainder lands in [0, 3)") {
    const ConstructionState st = seeded("2,3");
    const BlockProposal p = propose_block(st, make_block_layout(F("2,3"), false), 0, 10);
    CHECK(p.deltas == std::vector<BigInt>{11});
    CHECK(p.epsilon == -7);
    CHECK(p.remainder == 1);
    CHECK(2 * p.elements[0] + 3 * p.elements[1] == 0);
  }
  SUBCASE("remainder bound and target identity for mixed forms") {
    for (const char* form : {"1,-2", "3,-2", "2,-5,7", "1,2,-3"}) {
      const LinearForm f = F(form);
      const ConstructionState st = seeded(form);
      const BlockLayout layout = make_block_layout(f, false);
      for (long t = -5; t <= 5; ++t) {
        for (long m : {3L, 17L, 1000L}) {
          const BlockProposal p = propose_block(st, layout, t, m);
          CHECK(p.remainder >= 0);
          CHECK(p.remainder < abs(layout.coefficients.back()));
          BigInt v = 0;
          for (std::size_t i = 0; i < f.arity(); ++i) v += f[i] * p.elements[i];
          CHECK(v == t);
        }
      }
    }
  }
}

TEST_CASE("verify_block") {
  const ConstructionState st = seeded("1,1");
  const std::vector<BigInt> good{11, -11};
  const BlockVerdict v = verify_block(st, good, 0);
  CHECK(v.ok);
  // every sum over {1, 11, -11} appears once
  const auto o = oracle::enumerate({1, 1}, {1, 11, -11});
  for (const auto& [n, k] : o.classes) CHECK(k == 1);
  CHECK(o.classes.size() == 6);

  const std::vector<BigInt> dup{11, 11};
  CHECK_FALSE(verify_block(st, dup, 22).ok);
  const std::vector<BigInt> clash{1, -1};
  CHECK_FALSE(verify_block(st, clash, 0).ok);
  CHECK(verify_block(st, std::vector<BigInt>{2, -2}, 0).ok);

  // {1, 2, 3}: 4 = 1 + 3 = 2 + 2
  const BlockVerdict bad = verify_block(st, std::vector<BigInt>{2, 3}, 5);
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.offending.has_value());
  CHECK(*bad.offending == 4);
}

TEST_CASE("unique bases") {
  CHECK_THROWS_AS(build_unique_basis(F("2,4"), {.steps = 3}), Error);
  const ConstructionState trivial = build_unique_basis(F("-1"), {.steps = 3});
  CHECK(trivial.trivial_whole_line);

  for (const char* form : {"1,1", "2,3", "1,-2", "1,-1"}) {
    const ConstructionState st = build_unique_basis(F(form), {.steps = 12});
    CHECK(st.step() == 12);
    const UniqueAudit a = audit_unique_basis(st);
    CHECK_MESSAGE(a.ok(), form);
    const auto o = oracle::enumerate(
        std::vector<BigInt>(st.form.coefficients().begin(), st.form.coefficients().end()),
        elems_of(st));
    for (const auto& [n, k] : o.classes) CHECK(k == 1);
    for (const auto& t : st.covered_targets()) CHECK(o.classes.contains(t));
  }
  const ConstructionState st = build_unique_basis(F("1,1"), {.steps = 20});
  CHECK(st.union_set.size() == 41);
  CHECK(st.covered_targets().size() == 20);
  CHECK(st.growth_schedule().size() == 20);
  CHECK(st.retry_log().size() == 20);
}

TEST_CASE("half-line bases") {
  for (const char* form : {"1,-2", "3,-2"}) {
    for (long bound : {0L, -7L, 1000L}) {
      const ConstructionState st = build_unique_basis(F(form), {.steps = 8, .half_line = BigInt(bound)});
      CHECK(st.union_set.min() >= bound);
      CHECK(audit_unique_basis(st).ok());
    }
  }
  try {
    build_unique_basis(F("2,3"), {.steps = 2, .half_line = BigInt(0)});
    FAIL("same-sign half line accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MixedSignRequired);
  }
}

TEST_CASE("retry exhaustion carries a trace") {
  try {
    build_unique_basis(F("1,1"), {.steps = 6, .growth0 = BigInt(1), .retry_cap = 0});
    FAIL("no retry exhaustion");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RetryExhausted);
    CHECK(std::string(e.what()).find("M=1") != std::string::npos);
  }
}
