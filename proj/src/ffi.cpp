// SPDX-License-Identifier: Apache-2.0
#include "linrep/linrep.h"

#include <cstring>
#include <new>
#include <string>

#include "linrep/builder_diff.hpp"
#include "linrep/builder_target.hpp"
#include "linrep/builder_unique.hpp"
#include "linrep/error.hpp"
#include "linrep/json_io.hpp"

using namespace linrep;
namespace jio = linrep::json_io;

struct linrep_form {
  LinearForm form;
};

struct linrep_set {
  GroundSet set;
};

struct linrep_target {
  TargetFunction target;
};

struct linrep_result {
  bool ok = false;
  std::string set;
  std::string trace;
  std::string report;
};

namespace {

thread_local std::string last_error;

int status_of(ErrorCode code) { return static_cast<int>(code) + 1; }

int fail(int status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions to status codes.
template <typename F>
int guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(LINREP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LINREP_ERR_INTERNAL, e.what());
  }
}

int write_text(const std::string& text, char* buf, std::size_t* len) {
  if (len == nullptr) return fail(LINREP_ERR_NULL_ARGUMENT, "len is NULL");
  const std::size_t need = text.size() + 1;
  if (buf == nullptr || *len < need) {
    *len = need;
    return fail(LINREP_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(need) + " bytes");
  }
  std::memcpy(buf, text.c_str(), need);
  *len = need;
  return LINREP_OK;
}

BigInt bigint_or(const char* text, const BigInt& fallback) {
  return text == nullptr ? fallback : parse_bigint(text);
}

std::optional<BigInt> optional_bigint(const char* text) {
  if (text == nullptr) return std::nullopt;
  return parse_bigint(text);
}

std::uint64_t budget_of(const linrep_build_options& o) {
  return o.budget == 0 ? kDefaultTupleBudget : o.budget;
}

jio::Json report_head(const char* command, const ConstructionState& st) {
  jio::Json r = jio::Json::object();
  r["command"] = command;
  r["form"] = st.form.to_string();
  r["steps"] = st.step();
  r["size"] = st.union_set.size();
  return r;
}

linrep_result* finish(const ConstructionState& st, jio::Json report, bool ok,
                      std::string trace) {
  auto* res = new linrep_result;
  res->ok = ok;
  res->set = jio::set_to_json(st.union_set).dump();
  res->trace = std::move(trace);
  report["verified"] = ok;
  res->report = report.dump();
  return res;
}

#define LINREP_REQUIRE(ptr)                                                   \
  do {                                                                        \
    if ((ptr) == nullptr) return fail(LINREP_ERR_NULL_ARGUMENT, #ptr " is NULL"); \
  } while (0)

}  // namespace

extern "C" {

LINREP_API const char* linrep_status_name(int status) {
  switch (status) {
    case LINREP_OK: return "Ok";
    case LINREP_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
    case LINREP_ERR_NULL_ARGUMENT: return "NullArgument";
    case LINREP_ERR_INTERNAL: return "Internal";
    default: break;
  }
  if (status >= 1 && status <= status_of(ErrorCode::VerificationFailed)) {
    return to_string(static_cast<ErrorCode>(status - 1));
  }
  return "Unknown";
}

LINREP_API const char* linrep_last_error(void) { return last_error.c_str(); }

LINREP_API const char* linrep_version(void) { return "0.1.0"; }

LINREP_API int linrep_form_parse(const char* text, linrep_form** out) {
  LINREP_REQUIRE(text);
  LINREP_REQUIRE(out);
  return guarded([&] {
    *out = new linrep_form{LinearForm::parse(text)};
    return LINREP_OK;
  });
}

LINREP_API void linrep_form_free(linrep_form* form) { delete form; }

LINREP_API int linrep_form_arity(const linrep_form* form, size_t* out) {
  LINREP_REQUIRE(form);
  LINREP_REQUIRE(out);
  *out = form->form.arity();
  return LINREP_OK;
}

LINREP_API int linrep_form_analyze(const linrep_form* form, char* buf, size_t* len) {
  LINREP_REQUIRE(form);
  return guarded([&] { return write_text(jio::analysis_to_json(form->form).dump(), buf, len); });
}

LINREP_API int linrep_set_from_json(const char* json, linrep_set** out) {
  LINREP_REQUIRE(json);
  LINREP_REQUIRE(out);
  return guarded([&] {
    *out = new linrep_set{jio::set_from_json(jio::parse_text(json))};
    return LINREP_OK;
  });
}

LINREP_API void linrep_set_free(linrep_set* set) { delete set; }

LINREP_API int linrep_set_size(const linrep_set* set, size_t* out) {
  LINREP_REQUIRE(set);
  LINREP_REQUIRE(out);
  *out = set->set.size();
  return LINREP_OK;
}

LINREP_API int linrep_set_to_json(const linrep_set* set, char* buf, size_t* len) {
  LINREP_REQUIRE(set);
  return guarded([&] { return write_text(jio::set_to_json(set->set).dump(), buf, len); });
}

LINREP_API int linrep_target_from_json(const char* json, linrep_target** out) {
  LINREP_REQUIRE(json);
  LINREP_REQUIRE(out);
  return guarded([&] {
    const auto j = jio::parse_text(json);
    try {
      *out = new linrep_target{jio::target_from_json(j)};
    } catch (const Error& e) {
      // Malformed target files are input errors whatever check rejected them.
      if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::Parse, e.what());
      throw;
    }
    return LINREP_OK;
  });
}

LINREP_API void linrep_target_free(linrep_target* target) { delete target; }

LINREP_API int linrep_rep_function(const linrep_form* form, const linrep_set* set,
                                   uint64_t budget, char* buf, size_t* len) {
  LINREP_REQUIRE(form);
  LINREP_REQUIRE(set);
  return guarded([&] {
    const RepProfile p =
        rep_function(form->form, set->set, std::nullopt, budget ? budget : kDefaultTupleBudget);
    return write_text(jio::profile_to_json(p).dump(), buf, len);
  });
}

LINREP_API void linrep_build_options_init(linrep_build_options* opts) {
  if (opts == nullptr) return;
  opts->steps = 0;
  opts->d0 = nullptr;
  opts->growth0 = nullptr;
  opts->half_line = nullptr;
  opts->ratio = nullptr;
  opts->budget = kDefaultTupleBudget;
  opts->retry_cap = 64;
}

LINREP_API int linrep_build_unique(const linrep_form* form, const linrep_build_options* opts,
                                   linrep_result** out) {
  LINREP_REQUIRE(form);
  LINREP_REQUIRE(opts);
  LINREP_REQUIRE(out);
  return guarded([&] {
    UniqueBuildOptions o;
    o.steps = opts->steps;
    o.d0 = bigint_or(opts->d0, 1);
    o.growth0 = optional_bigint(opts->growth0);
    o.half_line = optional_bigint(opts->half_line);
    o.budget = budget_of(*opts);
    o.retry_cap = opts->retry_cap;
    const ConstructionState st = build_unique_basis(form->form, o);
    const UniqueAudit audit = audit_unique_basis(st, o.budget);
    jio::Json r = report_head("build", st);
    if (o.half_line) r["half_line"] = to_string(*o.half_line);
    r["summary"] = audit.ok() ? "all counts <= 1" : "audit failed";
    r["audit"] = jio::audit_to_json(audit);
    *out = finish(st, std::move(r), audit.ok(), jio::trace_jsonl(st));
    return LINREP_OK;
  });
}

LINREP_API int linrep_build_target(const linrep_form* form, const linrep_target* target,
                                   const linrep_build_options* opts, linrep_result** out) {
  LINREP_REQUIRE(form);
  LINREP_REQUIRE(target);
  LINREP_REQUIRE(opts);
  LINREP_REQUIRE(out);
  return guarded([&] {
    TargetBuildOptions o;
    o.steps = opts->steps;
    o.d0 = bigint_or(opts->d0, 1);
    o.growth0 = optional_bigint(opts->growth0);
    o.budget = budget_of(*opts);
    o.retry_cap = opts->retry_cap;
    const ConstructionState st = build_for_target(form->form, target->target, o);
    const TargetAudit audit = audit_target_construction(st, target->target, o.budget);
    jio::Json r = report_head("realize", st);
    r["summary"] = audit.ok() ? "counts within target at every step" : "audit failed";
    r["audit"] = jio::audit_to_json(audit);
    *out = finish(st, std::move(r), audit.ok(), jio::trace_jsonl(st));
    return LINREP_OK;
  });
}

LINREP_API int linrep_build_diff_infinite(const linrep_target* target,
                                          const char* sequence_json, int periodic,
                                          const linrep_build_options* opts,
                                          linrep_result** out) {
  LINREP_REQUIRE(target);
  LINREP_REQUIRE(sequence_json);
  LINREP_REQUIRE(opts);
  LINREP_REQUIRE(out);
  return guarded([&] {
    PlentifulSequence seq = jio::sequence_from_json(jio::parse_text(sequence_json));
    const auto source = periodic ? periodic_source(std::move(seq)) : finite_source(std::move(seq));
    DiffBuildOptions o;
    o.steps = opts->steps;
    o.d0 = bigint_or(opts->d0, 1);
    o.budget = budget_of(*opts);
    const DiffConstructionState st = build_infinite_case(target->target, *source, o);
    const DiffAudit audit =
        audit_diff_construction(st, target->target, source.get(), false, o.budget);
    jio::Json r = report_head("diff-realize", st.base);
    r["case"] = "infinite";
    r["sequence"] = source->describe();
    r["summary"] = audit.ok() ? "counts within target at every step" : "audit failed";
    r["audit"] = jio::audit_to_json(audit);
    r["ledger"] = jio::ledger_to_json(st)["ledger"];
    *out = finish(st.base, std::move(r), audit.ok(), jio::trace_jsonl(st.base));
    return LINREP_OK;
  });
}

LINREP_API int linrep_build_diff_unbounded(const linrep_target* target,
                                           const linrep_build_options* opts,
                                           linrep_result** out) {
  LINREP_REQUIRE(target);
  LINREP_REQUIRE(opts);
  LINREP_REQUIRE(out);
  return guarded([&] {
    UnboundedBuildOptions o;
    o.steps = opts->steps;
    o.d0 = bigint_or(opts->d0, 1);
    o.ratio = bigint_or(opts->ratio, kDefaultQuotientRatio);
    o.budget = budget_of(*opts);
    const DiffConstructionState st =
        build_unbounded_case(target->target, geometric_supply(target->target), o);
    const DiffAudit audit = audit_diff_construction(st, target->target, nullptr, true, o.budget);
    jio::Json r = report_head("diff-realize", st.base);
    r["case"] = "unbounded";
    r["ratio"] = to_string(o.ratio);
    r["summary"] = audit.ok() ? "served targets reach f exactly" : "audit failed";
    r["audit"] = jio::audit_to_json(audit);
    *out = finish(st.base, std::move(r), audit.ok(), jio::trace_jsonl(st.base));
    return LINREP_OK;
  });
}

LINREP_API int linrep_verify(const linrep_form* form, const linrep_set* set,
                             const linrep_target* target, uint64_t budget,
                             linrep_result** out) {
  LINREP_REQUIRE(form);
  LINREP_REQUIRE(set);
  LINREP_REQUIRE(out);
  return guarded([&] {
    const TargetFunction f =
        target ? target->target : TargetFunction::constant(Count::finite(1));
    const TargetReport rep = check_counts_against_target(form->form, set->set, f,
                                                         budget ? budget : kDefaultTupleBudget);
    jio::Json r = jio::Json::object();
    r["command"] = "verify";
    r["form"] = form->form.to_string();
    r["size"] = set->set.size();
    r["summary"] = rep.ok() ? "all counts within target"
                            : std::to_string(rep.overshoots.size() + rep.zero_hits.size()) +
                                  " violations";
    r["violations"] = jio::report_to_json(rep, f)["violations"];
    auto* res = new linrep_result;
    res->ok = rep.ok();
    res->set = jio::set_to_json(set->set).dump();
    r["verified"] = rep.ok();
    res->report = r.dump();
    *out = res;
    return LINREP_OK;
  });
}

LINREP_API int linrep_extract(const linrep_set* set, const char* n, size_t length,
                              uint64_t budget, linrep_result** out) {
  LINREP_REQUIRE(set);
  LINREP_REQUIRE(n);
  LINREP_REQUIRE(out);
  return guarded([&] {
    const BigInt diff = parse_bigint(n);
    const PlentifulSequence seq =
        extract_plentiful(set->set, diff, length, budget ? budget : kDefaultTupleBudget);
    jio::Json r = jio::Json::object();
    r["command"] = "extract";
    r["n"] = to_string(diff);
    r["length"] = length;
    r["sequence"] = jio::sequence_to_json(seq);
    r["plentiful"] = true;
    r["verified"] = true;
    auto* res = new linrep_result;
    res->ok = true;
    res->set = jio::set_to_json(set->set).dump();
    res->report = r.dump();
    *out = res;
    return LINREP_OK;
  });
}

LINREP_API void linrep_result_free(linrep_result* result) { delete result; }

LINREP_API int linrep_result_verified(const linrep_result* result, int* ok) {
  LINREP_REQUIRE(result);
  LINREP_REQUIRE(ok);
  *ok = result->ok ? 1 : 0;
  return LINREP_OK;
}

LINREP_API int linrep_result_set(const linrep_result* result, char* buf, size_t* len) {
  LINREP_REQUIRE(result);
  return write_text(result->set, buf, len);
}

LINREP_API int linrep_result_trace(const linrep_result* result, char* buf, size_t* len) {
  LINREP_REQUIRE(result);
  return write_text(result->trace, buf, len);
}

LINREP_API int linrep_result_report(const linrep_result* result, char* buf, size_t* len) {
  LINREP_REQUIRE(result);
  return write_text(result->report, buf, len);
}

}  // extern "C"
