// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "linrep/error.hpp"
#include "linrep/json_io.hpp"

using namespace linrep;
using namespace linrep::json_io;

TEST_CASE("sets round trip as decimal strings") {
  const GroundSet s({BigInt("-123456789012345678901234567890"), BigInt(0), BigInt(7)});
  const Json j = set_to_json(s);
  CHECK(j.dump() == R"(["-123456789012345678901234567890","0","7"])");
  CHECK(set_from_json(j) == s);
  CHECK(set_from_json(parse_text("[3, \"1\", -2]")) == GroundSet({-2, 1, 3}));
  CHECK_THROWS_AS(set_from_json(parse_text("[1, 1]")), Error);
  CHECK_THROWS_AS(set_from_json(parse_text("{}")), Error);
  CHECK_THROWS_AS(parse_text("[1,"), Error);
  CHECK_THROWS_AS(set_from_json(parse_text("[1.5]")), Error);
}

TEST_CASE("profiles") {
  const RepProfile p = rep_function(LinearForm::parse("1,1"), GroundSet({0, 1, 2}));
  CHECK(profile_to_json(p).dump() ==
        R"({"counts":{"0":1,"1":1,"2":2,"3":1,"4":1},"support_min":"0","support_max":"4"})");
}

TEST_CASE("targets") {
  const TargetFunction f = target_from_json(parse_text(
      R"({"window":[-3,"3"],"values":{"1":2,"-1":2,"2":"inf","-2":"inf"},"default":"inf","zeros":["3"]})"));
  CHECK(f.at(1) == Count::finite(2));
  CHECK(f.at(2) == Count::infinity());
  CHECK(f.is_zero(3));
  CHECK(f.at(50) == Count::infinity());
  CHECK(target_from_json(target_to_json(f)).at(-2) == Count::infinity());
  CHECK(target_to_json(target_from_json(target_to_json(f))) == target_to_json(f));

  const TargetFunction d = target_from_json(parse_text("{}"));
  CHECK(d.at(0) == Count::finite(1));
  CHECK_THROWS_AS(target_from_json(parse_text(R"({"default":0})")), Error);
  CHECK_THROWS_AS(target_from_json(parse_text(R"({"default":-1})")), Error);
  CHECK_THROWS_AS(target_from_json(parse_text(R"({"window":[0,5],"zeros":[9]})")), Error);
}

TEST_CASE("sequences and traces") {
  const PlentifulSequence s({BigInt(10), BigInt(90)});
  CHECK(sequence_to_json(s).dump() == R"(["10","90"])");
  CHECK(sequence_from_json(sequence_to_json(s)) == s);

  const ConstructionState st = build_unique_basis(LinearForm::parse("1,1"), {.steps = 2});
  const std::string trace = trace_jsonl(st);
  CHECK(std::count(trace.begin(), trace.end(), '\n') == 2);
  const Json first = Json::parse(trace.substr(0, trace.find('\n')));
  CHECK(first["step"] == 1);
  CHECK(first["target"] == "0");
  CHECK(first["block"].is_array());
  CHECK(first["block"][0].is_string());
  CHECK(first.contains("M"));
  CHECK(first.contains("retries"));
  CHECK(first.contains("support_size"));
}

TEST_CASE("analysis") {
  const Json a = analysis_to_json(LinearForm::parse("1,-1"));
  CHECK(a["primitive"] == true);
  CHECK(a["partition_regular"] == false);
  CHECK(a["zero_sum_certificate"]["coefficients"] == Json::array({"1", "-1"}));
  CHECK(a["automorphism"].is_string());
  CHECK(a["ordered_unique_obstruction"] == true);
  const Json b = analysis_to_json(LinearForm::parse("2,4"));
  CHECK(b["primitive"] == false);
  CHECK(b["bezout"].is_null());
}
