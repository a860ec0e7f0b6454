// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "linrep/builder_diff.hpp"
#include "linrep/error.hpp"
#include "oracles.hpp"

using namespace linrep;

namespace {

PlentifulSequence seq(std::initializer_list<long> xs) {
  std::vector<BigInt> v;
  for (long x : xs) v.emplace_back(x);
  return PlentifulSequence(v);
}

TargetFunction with_values(long lo, long hi, std::map<BigInt, Count> v, Count fallback) {
  return TargetFunction(Interval{lo, hi}, std::move(v), fallback, {});
}

TargetFunction infinite_off_zero() {
  return with_values(0, 0, {{BigInt(0), Count::finite(1)}}, Count::infinity());
}

ErrorCode code_of(auto&& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailed;
}

}  // namespace

TEST_CASE("even and normalized") {
  CHECK(check_even_normalized(TargetFunction::constant(Count::finite(1))).ok());
  const auto odd = with_values(-3, 3, {{BigInt(3), Count::finite(2)}}, Count::finite(1));
  CHECK_FALSE(check_even_normalized(odd).ok());
  const auto zero2 = with_values(0, 0, {{BigInt(0), Count::finite(2)}}, Count::finite(1));
  CHECK_FALSE(check_even_normalized(zero2).ok());
  CHECK(check_even_normalized(infinite_off_zero()).ok());
}

TEST_CASE("three representation obstruction") {
  const auto lone = with_values(-7, 7, {{BigInt(7), Count::finite(3)}, {BigInt(-7), Count::finite(3)}},
                                Count::finite(1));
  const CheckReport r = check_three_rep_obstruction(lone);
  CHECK_FALSE(r.ok());
  CHECK(r.violations.front().find("7") != std::string::npos);
  const auto helped = with_values(-7, 7,
                                  {{BigInt(7), Count::finite(3)}, {BigInt(-7), Count::finite(3)},
                                   {BigInt(2), Count::finite(2)}, {BigInt(-2), Count::finite(2)}},
                                  Count::finite(1));
  CHECK(check_three_rep_obstruction(helped).ok());
  CHECK(check_three_rep_obstruction(TargetFunction::constant(Count::finite(2))).ok());
}

TEST_CASE("plentiful sequences") {
  const auto two = with_values(1, 3, {{BigInt(1), Count::finite(2)}, {BigInt(2), Count::finite(2)},
                                      {BigInt(3), Count::finite(2)}},
                               Count::finite(1));
  CHECK(is_plentiful(seq({1, 1, 1}), two));
  const auto hole = with_values(1, 3, {{BigInt(1), Count::finite(2)}, {BigInt(3), Count::finite(2)}},
                                Count::finite(1));
  CHECK_FALSE(is_plentiful(seq({1, 1, 1}), hole));
  CHECK(is_plentiful(PlentifulSequence{}, hole));
  CHECK_THROWS_AS(seq({1, 0}), Error);
  CHECK(seq({2, 5, 7}).partial_sum(2, 3) == 12);
}

TEST_CASE("sequence sources") {
  const auto per = periodic_source(seq({1, 2}));
  CHECK(per->run_sum(1, 4) == 6);
  CHECK(per->run_sum(2, 2) == 2);
  CHECK(per->run_sum(BigInt("1000000000001"), BigInt("1000000000002")) == 3);
  for (long from = 1; from <= 6; ++from) {
    for (long bound = -2; bound <= 12; ++bound) {
      const auto to = per->first_run_exceeding(from, bound);
      REQUIRE(to.has_value());
      CHECK(*to >= from);
      CHECK(per->run_sum(from, *to) > bound);
      if (*to > from) CHECK(per->run_sum(from, *to - 1) <= bound);
    }
  }
  const auto run = per->find_run(4);
  REQUIRE(run.has_value());
  CHECK(per->run_sum(run->first, run->second) == 4);

  const auto fin = finite_source(seq({3, 4, 5}));
  CHECK(fin->length() == 3);
  CHECK(fin->first_run_exceeding(1, 6) == BigInt(2));
  CHECK_FALSE(fin->first_run_exceeding(2, 100).has_value());
  CHECK(fin->find_run(9)->first == 2);
  CHECK_FALSE(fin->find_run(6).has_value());
}

TEST_CASE("extract_plentiful") {
  const GroundSet a({0, 1, 10, 11, 100, 101});
  CHECK(extract_plentiful(a, 1, 2) == seq({10, 90}));
  const auto o = oracle::enumerate({1, -1}, {0, 1, 10, 11, 100, 101});
  CHECK(o.classes.at(10) >= 2);
  CHECK(o.classes.at(90) >= 2);
  CHECK(o.classes.at(100) >= 2);
  CHECK(code_of([&] { extract_plentiful(GroundSet({0, 1, 5}), 1, 1); }) ==
        ErrorCode::InsufficientPairs);
  CHECK(code_of([&] { extract_plentiful(a, 0, 1); }) == ErrorCode::InvalidArgument);
  CHECK(extract_plentiful(a, -1, 2) == seq({10, 90}));
}

TEST_CASE("infinite case") {
  const TargetFunction f = infinite_off_zero();
  const auto ones = periodic_source(seq({1}));
  const DiffConstructionState st = build_infinite_case(f, *ones, {.steps = 12});
  CHECK(st.base.step() == 12);
  const DiffAudit a = audit_diff_construction(st, f, ones.get(), false);
  CHECK(a.ok());
  CHECK(a.unwitnessed_gaps == 0);
  const auto o = oracle::enumerate(
      {1, -1}, std::vector<BigInt>(st.base.union_set.elements().begin(),
                                   st.base.union_set.elements().end()));
  CHECK(o.classes.at(0) == 1);
  for (const auto& [n, k] : o.classes) CHECK(o.classes.at(-n) == k);
  // round trip
  const PlentifulSequence s = extract_plentiful(st.base.union_set, 1, 2);
  CHECK(is_plentiful(s, rep_function(difference_form(), st.base.union_set)));

  SUBCASE("a value with f = 1 gains exactly one representation") {
    std::map<BigInt, Count> v{{BigInt(0), Count::finite(1)}};
    for (long n = 1; n <= 6; ++n) {
      v[BigInt(n)] = Count::finite(1);
      v[BigInt(-n)] = Count::finite(1);
    }
    const TargetFunction g(Interval{-6, 6}, v, Count::infinity(), {});
    const auto big = periodic_source(seq({7}));
    const DiffConstructionState s2 = build_infinite_case(g, *big, {.steps = 1});
    CHECK(s2.base.blocks[0].target == 1);
    const RepProfile before = rep_function(difference_form(), s2.base.prefix(0));
    const RepProfile after = rep_function(difference_form(), s2.base.union_set);
    CHECK(after.count(1) == 1);
    for (const auto& [n, k] : after.counts) {
      if (before.count(n) == 0 && n != 0) CHECK(k == 1);
    }
  }
}

TEST_CASE("infinite case preconditions") {
  const auto ones = periodic_source(seq({1}));
  const auto odd = with_values(-3, 3, {{BigInt(0), Count::finite(1)}, {BigInt(3), Count::finite(2)}},
                               Count::infinity());
  CHECK(code_of([&] { build_infinite_case(odd, *ones, {.steps = 2}); }) ==
        ErrorCode::PreconditionViolation);
  CHECK(code_of([&] {
          build_infinite_case(TargetFunction::constant(Count::finite(1)), *ones, {.steps = 2});
        }) == ErrorCode::PreconditionViolation);
  const auto short_seq = finite_source(seq({1, 1, 1}));
  CHECK(code_of([&] { build_infinite_case(infinite_off_zero(), *short_seq, {.steps = 6}); }) ==
        ErrorCode::SequenceExhausted);
}

TEST_CASE("unbounded case") {
  std::map<BigInt, Count> v{{BigInt(0), Count::finite(1)}};
  for (long n = 1; n <= 3; ++n) {
    v[BigInt(n)] = Count::finite(static_cast<std::uint64_t>(n));
    v[BigInt(-n)] = Count::finite(static_cast<std::uint64_t>(n));
  }
  const TargetFunction f(Interval{-3, 3}, v, Count::finite(2), {});
  const DiffConstructionState st = build_unbounded_case(f, geometric_supply(f), {.steps = 3});
  std::vector<std::size_t> gammas;
  for (const auto& b : st.base.blocks) gammas.push_back(b.elements.size() / 2);
  CHECK(gammas == std::vector<std::size_t>{1, 2, 3});
  CHECK(audit_diff_construction(st, f, nullptr, true).ok());
  const RepProfile p = rep_function(difference_form(), st.base.union_set);
  for (long n = 1; n <= 3; ++n) CHECK(p.count(n) == static_cast<std::uint64_t>(n));

  SUBCASE("gamma = 1 everywhere gives two elements per step") {
    const TargetFunction h(Interval{0, 0}, {{BigInt(0), Count::finite(1)}}, Count::finite(2), {});
    const DiffConstructionState s2 = build_unbounded_case(h, geometric_supply(h), {.steps = 4});
    CHECK(audit_diff_construction(s2, h, nullptr, true).ok());
  }
}

TEST_CASE("unbounded case preconditions") {
  const auto supply = geometric_supply(TargetFunction::constant(Count::finite(2)));
  const TargetFunction zero2(Interval{0, 0}, {{BigInt(0), Count::finite(2)}}, Count::finite(2), {});
  CHECK(code_of([&] { build_unbounded_case(zero2, supply, {.steps = 1}); }) ==
        ErrorCode::PreconditionViolation);
  CHECK(code_of([&] {
          build_unbounded_case(TargetFunction::constant(Count::finite(1)), supply, {.steps = 1});
        }) == ErrorCode::BoundedTarget);
  CHECK(code_of([&] { build_unbounded_case(infinite_off_zero(), supply, {.steps = 1}); }) ==
        ErrorCode::PreconditionViolation);
  const TargetFunction f(Interval{-2, 2},
                         {{BigInt(0), Count::finite(1)}, {BigInt(1), Count::finite(3)},
                          {BigInt(-1), Count::finite(3)}},
                         Count::finite(1), {});
  const PlentifulSupply none = [](std::size_t, const BigInt&, const BigInt&) {
    return std::optional<PlentifulSequence>{};
  };
  CHECK(code_of([&] { build_unbounded_case(f, none, {.steps = 1}); }) ==
        ErrorCode::SupplyExhausted);
}
