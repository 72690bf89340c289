#pragma once

// Machine-readable report schema shared by `--json` output and the
// checkpoint ledger.
//
// A report is one JSON object with fields in this order:
//
//   schema_version  integer, currently 1
//   command         subcommand name
//   params          echo of the inputs
//   records         array; record shape depends on the command
//   tool_version    string
//   elapsed_ms      integer
//
// Every value is an integer, boolean, string, array or object. Norms are
// exact integers for zero-sum input; there are no floating-point fields.
// A ledger line is a compact single-line `verify` report with one record.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zsindex/modarith.hpp"
#include "zsindex/singular.hpp"
#include "zsindex/verifier.hpp"
#include "zsindex/zseq.hpp"

namespace zsindex {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

struct Report {
    std::string command;
    Json params = Json::object();
    std::vector<Json> records;
    std::string tool_version = kToolVersion;
    i64 elapsed_ms = 0;

    friend bool operator==(const Report&, const Report&) = default;
};

Json to_json(const Report& report);
// Throws Errc::domain on a schema mismatch.
Report report_from_json(const Json& j);
Report parse_report(const std::string& text);

Json to_json(const VerifyRecord& rec);
VerifyRecord verify_record_from_json(const Json& j);

std::string ledger_line(const VerifyRecord& rec);
VerifyRecord parse_ledger_line(const std::string& line);

Json to_json(const ZsSeq& seq, const IndexResult& result);
Json to_json(const GoodKReport& r);
Json to_json(const DescentParams& p);
Json to_json(const SingularCheck& c);
Json witness_to_json(i64 n, ExplicitForm form, const WitnessInterval& interval,
                     const std::optional<IntervalWitness>& w);
Json to_json(const BertrandSweep& s);

std::string form_name(ExplicitForm form);

} // namespace zsindex
