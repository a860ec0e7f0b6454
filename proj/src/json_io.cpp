// SPDX-License-Identifier: Apache-2.0
#include "linrep/json_io.hpp"

#include "linrep/error.hpp"

namespace linrep::json_io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::Parse, what); }

Json flags(std::initializer_list<std::pair<const char*, bool>> items,
           const std::vector<std::string>& failures) {
  Json out = Json::object();
  bool all = failures.empty();
  out["ok"] = all;
  Json checks = Json::object();
  for (const auto& [name, value] : items) checks[name] = value;
  out["checks"] = std::move(checks);
  out["failures"] = failures;
  return out;
}

}  // namespace

BigInt bigint_from_json(const Json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return BigInt(std::to_string(j.get<std::uint64_t>()));
    return BigInt(std::to_string(j.get<std::int64_t>()));
  }
  bad("expected an integer or a decimal string, got " + j.dump());
}

Json bigint_to_json(const BigInt& v) { return to_string(v); }

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

Json set_to_json(const GroundSet& set) {
  Json out = Json::array();
  for (const auto& x : set.elements()) out.push_back(to_string(x));
  return out;
}

GroundSet set_from_json(const Json& j) {
  if (!j.is_array()) bad("a set must be a JSON array");
  std::vector<BigInt> xs;
  for (const auto& e : j) xs.push_back(bigint_from_json(e));
  try {
    return GroundSet(std::move(xs));
  } catch (const Error& e) {
    bad(e.what());
  }
}

Json profile_to_json(const RepProfile& profile) {
  Json counts = Json::object();
  for (const auto& [n, c] : profile.counts) counts[to_string(n)] = c;
  Json out = Json::object();
  out["counts"] = std::move(counts);
  if (profile.empty()) {
    out["support_min"] = nullptr;
    out["support_max"] = nullptr;
  } else {
    out["support_min"] = to_string(profile.support_min());
    out["support_max"] = to_string(profile.support_max());
  }
  return out;
}

Json count_to_json(const Count& c) {
  if (c.is_infinite()) return "inf";
  return c.value();
}

Count count_from_json(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return Count::infinity();
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(s, &used);
      if (used == s.size()) return Count::finite(v);
    } catch (const std::exception&) {
    }
    bad("bad count " + j.dump());
  }
  if (j.is_number_unsigned()) return Count::finite(j.get<std::uint64_t>());
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
    return Count::finite(static_cast<std::uint64_t>(j.get<std::int64_t>()));
  }
  bad("bad count " + j.dump());
}

Json target_to_json(const TargetFunction& target) {
  Json out = Json::object();
  out["window"] = Json::array({to_string(target.window().lo), to_string(target.window().hi)});
  Json values = Json::object();
  for (const auto& [n, c] : target.values()) values[to_string(n)] = count_to_json(c);
  out["values"] = std::move(values);
  out["default"] = count_to_json(target.outside_default());
  Json zeros = Json::array();
  for (const auto& z : target.zeros()) zeros.push_back(to_string(z));
  out["zeros"] = std::move(zeros);
  return out;
}

TargetFunction target_from_json(const Json& j) {
  if (!j.is_object()) bad("a target must be a JSON object");
  Interval window{0, 0};
  if (j.contains("window")) {
    const Json& w = j.at("window");
    if (!w.is_array() || w.size() != 2) bad("window must be [lo, hi]");
    window = Interval{bigint_from_json(w[0]), bigint_from_json(w[1])};
  }
  std::map<BigInt, Count> values;
  if (j.contains("values")) {
    if (!j.at("values").is_object()) bad("values must be an object");
    for (const auto& [key, c] : j.at("values").items()) {
      values[parse_bigint(key)] = count_from_json(c);
    }
  }
  const Count fallback = j.contains("default") ? count_from_json(j.at("default")) : Count::finite(1);
  std::vector<BigInt> zeros;
  if (j.contains("zeros")) {
    if (!j.at("zeros").is_array()) bad("zeros must be an array");
    for (const auto& z : j.at("zeros")) zeros.push_back(bigint_from_json(z));
  }
  return TargetFunction(window, std::move(values), fallback, std::move(zeros));
}

Json sequence_to_json(const PlentifulSequence& seq) {
  Json out = Json::array();
  for (const auto& s : seq.terms()) out.push_back(to_string(s));
  return out;
}

PlentifulSequence sequence_from_json(const Json& j) {
  if (!j.is_array()) bad("a sequence must be a JSON array");
  std::vector<BigInt> terms;
  for (const auto& e : j) terms.push_back(bigint_from_json(e));
  return PlentifulSequence(std::move(terms));
}

namespace {

Json trace_line(const BlockRecord& b) {
  Json line = Json::object();
  line["step"] = b.step;
  line["target"] = to_string(b.target);
  line["copy"] = b.target_copy;
  line["M"] = to_string(b.growth);
  line["retries"] = b.retries;
  Json block = Json::array();
  for (const auto& x : b.elements) block.push_back(to_string(x));
  line["block"] = std::move(block);
  line["support_size"] = b.support_size;
  return line;
}

}  // namespace

std::string trace_jsonl(const ConstructionState& state) {
  std::string out;
  for (const auto& b : state.blocks) out += trace_line(b).dump() + "\n";
  return out;
}

Json ledger_to_json(const DiffConstructionState& state) {
  Json out = Json::object();
  Json trace = Json::array();
  for (const auto& b : state.base.blocks) trace.push_back(trace_line(b));
  out["trace"] = std::move(trace);
  Json ledger = Json::object();
  for (const auto& [n, reps] : state.ledger) {
    Json list = Json::array();
    for (const auto& r : reps) {
      Json rep = Json::object();
      rep["a"] = to_string(r.anchor);
      rep["b"] = to_string(r.partner);
      rep["m"] = r.witness ? Json(to_string(*r.witness)) : Json(nullptr);
      list.push_back(std::move(rep));
    }
    ledger[to_string(n)] = std::move(list);
  }
  out["ledger"] = std::move(ledger);
  return out;
}

Json analysis_to_json(const LinearForm& form) {
  Json out = Json::object();
  out["form"] = form.to_string();
  const bool primitive = is_primitive(form);
  out["primitive"] = primitive;
  if (primitive) {
    Json bz = Json::array();
    for (const auto& s : bezout_witness(form)) bz.push_back(to_string(s));
    out["bezout"] = std::move(bz);
  } else {
    out["bezout"] = nullptr;
  }
  const auto zero = zero_sum_subset(form);
  out["partition_regular"] = !zero.has_value();
  if (zero) {
    Json cert = Json::object();
    Json idx = Json::array();
    Json coeffs = Json::array();
    for (auto i : *zero) {
      idx.push_back(i + 1);
      coeffs.push_back(to_string(form[i]));
    }
    cert["positions"] = std::move(idx);
    cert["coefficients"] = std::move(coeffs);
    out["zero_sum_certificate"] = std::move(cert);
  } else {
    out["zero_sum_certificate"] = nullptr;
  }
  if (form.arity() <= kDefaultAutomorphismArityCap) {
    const auto w = find_nontrivial_automorphism(form);
    out["automorphism"] = w ? Json(w->to_string()) : Json(nullptr);
  } else {
    out["automorphism"] = "search skipped (arity above " +
                          std::to_string(kDefaultAutomorphismArityCap) + ")";
  }
  out["ordered_unique_obstruction"] = has_ordered_unique_basis_obstruction(form);
  return out;
}

Json audit_to_json(const UniqueAudit& a) {
  return flags({{"blocks_disjoint", a.blocks_disjoint},
                {"at_most_once", a.at_most_once},
                {"targets_exactly_once", a.targets_exactly_once},
                {"prefix_stable", a.prefix_stable},
                {"monotone_coverage", a.monotone_coverage},
                {"growth_certificate", a.growth_certificate},
                {"half_line", a.half_line}},
               a.failures);
}

Json audit_to_json(const TargetAudit& a) {
  return flags({{"never_overshoot", a.never_overshoot},
                {"avoids_zeros", a.avoids_zeros},
                {"target_progress", a.target_progress},
                {"growth_certificate", a.growth_certificate}},
               a.failures);
}

Json audit_to_json(const DiffAudit& a) {
  Json out = flags({{"never_overshoot", a.never_overshoot},
                    {"zero_once", a.zero_once},
                    {"symmetric", a.symmetric},
                    {"size_guard", a.size_guard},
                    {"targets_served", a.targets_served},
                    {"ledger_coherent", a.ledger_coherent}},
                   a.failures);
  out["unwitnessed_gaps"] = a.unwitnessed_gaps;
  return out;
}

Json report_to_json(const TargetReport& report, const TargetFunction& target) {
  Json out = Json::object();
  out["ok"] = report.ok();
  Json violations = Json::array();
  for (const auto& [n, c] : report.overshoots) {
    Json v = Json::object();
    v["n"] = to_string(n);
    v["count"] = c;
    v["allowed"] = count_to_json(target.at(n));
    violations.push_back(std::move(v));
  }
  for (const auto& [z, c] : report.zero_hits) {
    Json v = Json::object();
    v["n"] = to_string(z);
    v["count"] = c;
    v["allowed"] = 0;
    violations.push_back(std::move(v));
  }
  out["violations"] = std::move(violations);
  return out;
}

}  // namespace linrep::json_io
