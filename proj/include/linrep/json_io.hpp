// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "linrep/builder_diff.hpp"
#include "linrep/builder_target.hpp"
#include "linrep/builder_unique.hpp"
#include "linrep/construction.hpp"
#include "linrep/forms.hpp"
#include "linrep/repcount.hpp"
#include "linrep/target.hpp"

// Big integers are always written as decimal strings. Readers also accept
// native JSON integers.
namespace linrep::json_io {

using Json = nlohmann::ordered_json;

BigInt bigint_from_json(const Json& j);
Json bigint_to_json(const BigInt& v);

/// Parses text, mapping syntax errors to Error(Parse).
Json parse_text(const std::string& text);

Json set_to_json(const GroundSet& set);
GroundSet set_from_json(const Json& j);

/// {"counts": {"n": c, ...}, "support_min": "..", "support_max": ".."}
Json profile_to_json(const RepProfile& profile);

Json count_to_json(const Count& c);
Count count_from_json(const Json& j);

/// {"window": [lo, hi], "values": {"n": c | "inf"}, "default": c | "inf",
///  "zeros": [...]}. Missing keys: window [0, 0], no values, default 1, no zeros.
Json target_to_json(const TargetFunction& target);
TargetFunction target_from_json(const Json& j);

Json sequence_to_json(const PlentifulSequence& seq);
PlentifulSequence sequence_from_json(const Json& j);

/// One line per block: {"step", "target", "copy", "M", "retries", "block", "support_size"}.
std::string trace_jsonl(const ConstructionState& state);

/// Trace lines plus the per-n representation lists.
Json ledger_to_json(const DiffConstructionState& state);

Json analysis_to_json(const LinearForm& form);

Json audit_to_json(const UniqueAudit& audit);
Json audit_to_json(const TargetAudit& audit);
Json audit_to_json(const DiffAudit& audit);
Json report_to_json(const TargetReport& report, const TargetFunction& target);

}  // namespace linrep::json_io
