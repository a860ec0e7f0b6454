// SPDX-License-Identifier: Apache-2.0
// Command line front end over the linrep C API.
//
// Exit codes: 0 verified, 1 verification violation, 2 parse error,
// 3 precondition failure, 4 budget exceeded, 5 retries/supply exhausted,
// 6 internal error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linrep/linrep.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kViolation = 1, kParse = 2, kPrecondition = 3, kBudget = 4,
            kExhausted = 5, kInternal = 6 };

int exit_for(int status) {
  switch (status) {
    case LINREP_OK: return kOk;
    case LINREP_ERR_PARSE: return kParse;
    case LINREP_ERR_BUDGET_EXCEEDED:
    case LINREP_ERR_SEARCH_SPACE_TOO_LARGE: return kBudget;
    case LINREP_ERR_RETRY_EXHAUSTED:
    case LINREP_ERR_SEQUENCE_EXHAUSTED:
    case LINREP_ERR_SUPPLY_EXHAUSTED: return kExhausted;
    case LINREP_ERR_VERIFICATION_FAILED: return kViolation;
    case LINREP_ERR_INTERNAL:
    case LINREP_ERR_BUFFER_TOO_SMALL:
    case LINREP_ERR_NULL_ARGUMENT: return kInternal;
    default: return kPrecondition;
  }
}

struct Failure {
  int status;
  std::string message;
};

void check(int status) {
  if (status != LINREP_OK) throw Failure{status, linrep_last_error()};
}

template <typename F>
std::string fetch(F&& call) {
  std::size_t len = 0;
  int st = call(nullptr, &len);
  if (st != LINREP_ERR_BUFFER_TOO_SMALL) check(st);
  std::string out(len, '\0');
  check(call(out.data(), &len));
  out.resize(len - 1);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{LINREP_ERR_INVALID_ARGUMENT, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

struct FormDeleter { void operator()(linrep_form* p) const { linrep_form_free(p); } };
struct SetDeleter { void operator()(linrep_set* p) const { linrep_set_free(p); } };
struct TargetDeleter { void operator()(linrep_target* p) const { linrep_target_free(p); } };
struct ResultDeleter { void operator()(linrep_result* p) const { linrep_result_free(p); } };
using FormPtr = std::unique_ptr<linrep_form, FormDeleter>;
using SetPtr = std::unique_ptr<linrep_set, SetDeleter>;
using TargetPtr = std::unique_ptr<linrep_target, TargetDeleter>;
using ResultPtr = std::unique_ptr<linrep_result, ResultDeleter>;

struct Config {
  std::string form;
  std::size_t steps = 0;
  std::string d0;
  std::string m0;
  std::optional<std::string> half_line;
  std::string target_path;
  std::string set_path;
  std::string window;
  std::string constant;
  std::string fallback = "1";
  std::string sequence_path;
  std::string sequence_terms;
  bool periodic = false;
  std::string diff_case = "auto";
  std::string ratio;
  std::string n;
  std::size_t length = 0;
  std::uint64_t budget = 100'000'000;
  std::size_t retry_cap = 64;
  std::string out_path;
  std::string trace_path;
  std::string report_path;
  std::string format = "json";
};

FormPtr load_form(const std::string& text) {
  linrep_form* f = nullptr;
  check(linrep_form_parse(text.c_str(), &f));
  return FormPtr(f);
}

SetPtr load_set(const std::string& path) {
  linrep_set* s = nullptr;
  check(linrep_set_from_json(read_file(path).c_str(), &s));
  return SetPtr(s);
}

std::pair<long long, long long> parse_window(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Failure{LINREP_ERR_PARSE, "bad window " + text};
  try {
    return {std::stoll(text.substr(0, comma)), std::stoll(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw Failure{LINREP_ERR_PARSE, "bad window " + text};
  }
}

Json count_json(const std::string& c) {
  if (c == "inf") return "inf";
  try {
    return std::stoull(c);
  } catch (const std::exception&) {
    throw Failure{LINREP_ERR_PARSE, "bad count " + c};
  }
}

// Target text from --target, or from --constant over --window with --default
// outside. Empty when neither is given.
std::string target_text(const Config& cfg) {
  if (!cfg.target_path.empty()) return read_file(cfg.target_path);
  if (cfg.constant.empty()) return {};
  const auto [lo, hi] = parse_window(cfg.window.empty() ? "0,0" : cfg.window);
  Json t = Json::object();
  t["window"] = Json::array({std::to_string(lo), std::to_string(hi)});
  Json values = Json::object();
  for (long long n = lo; n <= hi; ++n) {
    values[std::to_string(n)] = n == 0 ? Json(1) : count_json(cfg.constant);
  }
  t["values"] = std::move(values);
  t["default"] = count_json(cfg.fallback);
  return t.dump();
}

TargetPtr load_target(const std::string& text) {
  linrep_target* t = nullptr;
  check(linrep_target_from_json(text.c_str(), &t));
  return TargetPtr(t);
}

linrep_build_options options_of(const Config& cfg) {
  linrep_build_options o;
  linrep_build_options_init(&o);
  o.steps = cfg.steps;
  o.d0 = cfg.d0.empty() ? nullptr : cfg.d0.c_str();
  o.growth0 = cfg.m0.empty() ? nullptr : cfg.m0.c_str();
  o.half_line = cfg.half_line ? cfg.half_line->c_str() : nullptr;
  o.ratio = cfg.ratio.empty() ? nullptr : cfg.ratio.c_str();
  o.budget = cfg.budget;
  o.retry_cap = cfg.retry_cap;
  return o;
}

void print_text(const Json& report) {
  for (const auto& [key, value] : report.items()) {
    if (value.is_object() || value.is_array()) {
      if (key == "audit") {
        for (const auto& [name, ok] : value["checks"].items()) {
          std::cout << "check " << name << ": " << (ok.get<bool>() ? "pass" : "FAIL") << "\n";
        }
        for (const auto& f : value["failures"]) std::cout << "failure: " << f.get<std::string>() << "\n";
      } else if (key != "ledger") {
        std::cout << key << ": " << value.dump() << "\n";
      }
      continue;
    }
    std::cout << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
  }
}

int emit(const Config& cfg, const ResultPtr& res) {
  linrep_result* r = res.get();
  const std::string report = fetch([&](char* b, std::size_t* l) { return linrep_result_report(r, b, l); });
  if (!cfg.out_path.empty()) {
    write_file(cfg.out_path,
               fetch([&](char* b, std::size_t* l) { return linrep_result_set(r, b, l); }) + "\n");
  }
  if (!cfg.trace_path.empty()) {
    write_file(cfg.trace_path,
               fetch([&](char* b, std::size_t* l) { return linrep_result_trace(r, b, l); }));
  }
  if (!cfg.report_path.empty()) write_file(cfg.report_path, report + "\n");
  const Json parsed = Json::parse(report);
  if (cfg.format == "text") {
    print_text(parsed);
  } else {
    std::cout << parsed.dump(2) << "\n";
  }
  int ok = 0;
  check(linrep_result_verified(r, &ok));
  return ok ? kOk : kViolation;
}

int run_analyze(const Config& cfg) {
  const FormPtr form = load_form(cfg.form);
  const std::string text =
      fetch([&](char* b, std::size_t* l) { return linrep_form_analyze(form.get(), b, l); });
  const Json report = Json::parse(text);
  if (cfg.format == "text") {
    print_text(report);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return kOk;
}

int run_build(const Config& cfg) {
  const FormPtr form = load_form(cfg.form);
  const linrep_build_options o = options_of(cfg);
  linrep_result* r = nullptr;
  check(linrep_build_unique(form.get(), &o, &r));
  return emit(cfg, ResultPtr(r));
}

int run_realize(const Config& cfg) {
  const FormPtr form = load_form(cfg.form);
  const std::string text = target_text(cfg);
  if (text.empty()) throw CLI::ValidationError("realize needs --target or --constant");
  const TargetPtr target = load_target(text);
  const linrep_build_options o = options_of(cfg);
  linrep_result* r = nullptr;
  check(linrep_build_target(form.get(), target.get(), &o, &r));
  return emit(cfg, ResultPtr(r));
}

int run_diff_realize(const Config& cfg) {
  const std::string text = target_text(cfg);
  if (text.empty()) throw CLI::ValidationError("diff-realize needs --target or --constant");
  const TargetPtr target = load_target(text);
  std::string which = cfg.diff_case;
  if (which == "auto") which = text.find("\"inf") != std::string::npos ? "infinite" : "unbounded";
  const linrep_build_options o = options_of(cfg);
  linrep_result* r = nullptr;
  if (which == "infinite") {
    std::string seq;
    bool periodic = cfg.periodic;
    if (!cfg.sequence_path.empty()) {
      seq = read_file(cfg.sequence_path);
    } else {
      Json terms = Json::array();
      std::stringstream ss(cfg.sequence_terms.empty() ? "1" : cfg.sequence_terms);
      for (std::string item; std::getline(ss, item, ',');) terms.push_back(item);
      seq = terms.dump();
      if (cfg.sequence_terms.empty()) periodic = true;
    }
    check(linrep_build_diff_infinite(target.get(), seq.c_str(), periodic ? 1 : 0, &o, &r));
  } else {
    check(linrep_build_diff_unbounded(target.get(), &o, &r));
  }
  return emit(cfg, ResultPtr(r));
}

int run_verify(const Config& cfg) {
  const FormPtr form = load_form(cfg.form);
  const SetPtr set = load_set(cfg.set_path);
  const std::string text = target_text(cfg);
  TargetPtr target;
  if (!text.empty()) target = load_target(text);
  linrep_result* r = nullptr;
  check(linrep_verify(form.get(), set.get(), target.get(), cfg.budget, &r));
  return emit(cfg, ResultPtr(r));
}

int run_extract(const Config& cfg) {
  const FormPtr form = load_form(cfg.form);
  const std::string analysis =
      fetch([&](char* b, std::size_t* l) { return linrep_form_analyze(form.get(), b, l); });
  if (Json::parse(analysis)["form"] != "1,-1") {
    throw Failure{LINREP_ERR_INVALID_ARGUMENT, "extraction is defined for the form 1,-1 only"};
  }
  const SetPtr set = load_set(cfg.set_path);
  linrep_result* r = nullptr;
  check(linrep_extract(set.get(), cfg.n.c_str(), cfg.length, cfg.budget, &r));
  return emit(cfg, ResultPtr(r));
}

void add_outputs(CLI::App* sub, Config& cfg) {
  sub->add_option("--out", cfg.out_path, "Write the set (JSON array)");
  sub->add_option("--trace", cfg.trace_path, "Write the per-step trace (JSON lines)");
  sub->add_option("--report", cfg.report_path, "Write the verification report (JSON)");
  sub->add_option("--budget", cfg.budget, "Tuple budget per enumeration");
}

void add_build_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--steps", cfg.steps, "Number of steps")->required();
  sub->add_option("--d0", cfg.d0, "Seed element");
  sub->add_option("--retry-cap", cfg.retry_cap, "Growth doublings allowed per step");
}

void add_target_flags(CLI::App* sub, Config& cfg) {
  sub->add_option("--target", cfg.target_path, "Target function file (JSON)");
  sub->add_option("--constant", cfg.constant, "Constant target value on the window (n or inf)");
  sub->add_option("--window", cfg.window, "Window lo,hi for --constant");
  sub->add_option("--default", cfg.fallback, "Target value outside the window");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representation functions of integer linear forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  auto* analyze = app.add_subcommand("analyze", "Predicates and certificates for a form");
  analyze->add_option("--form", cfg.form, "Coefficients, e.g. 1,2,-3")->required();

  auto* build = app.add_subcommand("build", "Build a unique representation basis");
  build->add_option("--form", cfg.form, "Coefficients")->required();
  add_build_flags(build, cfg);
  build->add_option("--M0", cfg.m0, "Initial growth constant");
  build->add_option("--half-line", cfg.half_line, "Keep every element >= this bound");
  add_outputs(build, cfg);

  auto* realize = app.add_subcommand("realize", "Build towards a target function");
  realize->add_option("--form", cfg.form, "Coefficients")->required();
  add_build_flags(realize, cfg);
  realize->add_option("--M0", cfg.m0, "Initial growth constant");
  add_target_flags(realize, cfg);
  add_outputs(realize, cfg);

  auto* diff = app.add_subcommand("diff-realize", "Build for x1 - x2 towards a target");
  add_build_flags(diff, cfg);
  add_target_flags(diff, cfg);
  diff->add_option("--case", cfg.diff_case, "infinite, unbounded or auto")
      ->check(CLI::IsMember({"auto", "infinite", "unbounded"}));
  diff->add_option("--sequence", cfg.sequence_path, "Plentiful sequence file (JSON array)");
  diff->add_option("--terms", cfg.sequence_terms, "Plentiful sequence terms, e.g. 1,1,1");
  diff->add_flag("--periodic", cfg.periodic, "Repeat the sequence forever");
  diff->add_option("--ratio", cfg.ratio, "Minimum quotient of the supplied sequence");
  add_outputs(diff, cfg);

  auto* verify = app.add_subcommand("verify", "Check a set against a target (default f = 1)");
  verify->add_option("--form", cfg.form, "Coefficients")->required();
  verify->add_option("--set", cfg.set_path, "Set file (JSON array)")->required();
  add_target_flags(verify, cfg);
  add_outputs(verify, cfg);

  auto* extract = app.add_subcommand("extract", "Extract a plentiful sequence from a set");
  extract->add_option("--form", cfg.form, "Must be 1,-1")->default_val("1,-1");
  extract->add_option("--set", cfg.set_path, "Set file (JSON array)")->required();
  extract->add_option("--n", cfg.n, "Difference")->required();
  extract->add_option("--length", cfg.length, "Sequence length")->required();
  add_outputs(extract, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*analyze) return run_analyze(cfg);
    if (*build) return run_build(cfg);
    if (*realize) return run_realize(cfg);
    if (*diff) return run_diff_realize(cfg);
    if (*verify) return run_verify(cfg);
    if (*extract) return run_extract(cfg);
  } catch (const Failure& f) {
    Json err = Json::object();
    err["error"] = linrep_status_name(f.status);
    err["message"] = f.message;
    std::cerr << err.dump() << "\n";
    return exit_for(f.status);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    Json err = Json::object();
    err["error"] = "Internal";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return kInternal;
  }
  return kInternal;
}
