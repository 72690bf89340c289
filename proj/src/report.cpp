#include "zsindex/report.hpp"

#include "zsindex/error.hpp"

namespace zsindex {

namespace {

Json quad_json(const Quad& q) { return Json::array({q[0], q[1], q[2], q[3]}); }

Json norms_json(const std::vector<GeneratorNorm>& norms) {
    Json out = Json::array();
    for (const auto& gn : norms) out.push_back({{"g", gn.generator}, {"norm", gn.norm}});
    return out;
}

template <typename T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw Error(Errc::domain, std::string("report field missing: ") + key);
    return j.at(key).get<T>();
}

} // namespace

Json to_json(const Report& report) {
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["command"] = report.command;
    j["params"] = report.params;
    j["records"] = Json(report.records);
    j["tool_version"] = report.tool_version;
    j["elapsed_ms"] = report.elapsed_ms;
    return j;
}

Report report_from_json(const Json& j) {
    try {
        if (field<int>(j, "schema_version") != kSchemaVersion)
            throw Error(Errc::domain, "unsupported schema version");
        Report r;
        r.command = field<std::string>(j, "command");
        r.params = j.at("params");
        if (!j.at("records").is_array()) throw Error(Errc::domain, "records must be an array");
        for (const auto& rec : j.at("records")) r.records.push_back(rec);
        r.tool_version = field<std::string>(j, "tool_version");
        r.elapsed_ms = field<i64>(j, "elapsed_ms");
        return r;
    } catch (const Json::exception& e) {
        throw Error(Errc::domain, std::string("malformed report: ") + e.what());
    }
}

Report parse_report(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        throw Error(Errc::domain, std::string("report is not valid JSON: ") + e.what());
    }
    return report_from_json(j);
}

Json to_json(const VerifyRecord& rec) {
    Json examples = Json::array();
    for (const auto& ex : rec.index2_examples) {
        examples.push_back({{"seq", quad_json(ex.seq)},
                            {"index", 2},
                            {"witness", ex.witness},
                            {"norms", norms_json(ex.norms)}});
    }
    return Json{{"n", rec.n},
                {"total_minimal", rec.total_minimal},
                {"orbit_count", rec.orbit_count},
                {"max_index", rec.max_index},
                {"index2_examples", examples},
                {"elapsed_ms", rec.elapsed_ms}};
}

VerifyRecord verify_record_from_json(const Json& j) {
    try {
        VerifyRecord rec;
        rec.n = field<i64>(j, "n");
        rec.total_minimal = field<i64>(j, "total_minimal");
        rec.orbit_count = field<i64>(j, "orbit_count");
        rec.max_index = field<i64>(j, "max_index");
        for (const auto& ex : j.at("index2_examples")) {
            Index2Example e;
            const auto seq = ex.at("seq").get<std::vector<i64>>();
            if (seq.size() != 4) throw Error(Errc::domain, "index-2 example must have 4 elements");
            std::copy(seq.begin(), seq.end(), e.seq.begin());
            e.witness = field<i64>(ex, "witness");
            for (const auto& gn : ex.at("norms"))
                e.norms.push_back({field<i64>(gn, "g"), field<i64>(gn, "norm")});
            rec.index2_examples.push_back(std::move(e));
        }
        rec.elapsed_ms = field<i64>(j, "elapsed_ms");
        if (rec.n < 5 || rec.total_minimal < rec.orbit_count || rec.max_index < 0)
            throw Error(Errc::domain, "verify record violates its invariants");
        return rec;
    } catch (const Json::exception& e) {
        throw Error(Errc::domain, std::string("malformed verify record: ") + e.what());
    }
}

std::string ledger_line(const VerifyRecord& rec) {
    Report r;
    r.command = "verify";
    r.params = Json{{"n", rec.n}};
    r.records.push_back(to_json(rec));
    r.elapsed_ms = rec.elapsed_ms;
    return to_json(r).dump();
}

VerifyRecord parse_ledger_line(const std::string& line) {
    const Report r = parse_report(line);
    if (r.command != "verify" || r.records.size() != 1)
        throw Error(Errc::domain, "ledger line is not a single verify record");
    return verify_record_from_json(r.records.front());
}

Json to_json(const ZsSeq& seq, const IndexResult& result) {
    return Json{{"n", seq.n()},
                {"seq", Json(std::vector<i64>(seq.elems().begin(), seq.elems().end()))},
                {"index", result.index},
                {"witness", result.witness},
                {"complete", result.complete},
                {"norms", norms_json(result.norms)}};
}

Json to_json(const GoodKReport& r) {
    return Json{{"n", r.n},           {"k", r.k},
                {"is_pow2", r.is_pow2}, {"below_sixth", r.below_sixth},
                {"f_k", r.f_k},       {"F_k", r.big_f_k},
                {"good", r.good}};
}

Json to_json(const DescentParams& p) {
    return Json{{"n", p.n},
                {"b", p.b},
                {"k_star", p.k_star},
                {"chain", Json(p.chain)},
                {"final_bound", p.final_bound}};
}

Json to_json(const SingularCheck& c) {
    Json violations = Json::array();
    for (const auto& q : c.violations) violations.push_back(quad_json(q));
    return Json{{"n", c.n},
                {"checked", c.checked},
                {"consecutive_branch", c.consecutive_branch},
                {"n_minus_two_branch", c.n_minus_two_branch},
                {"high_x4_index2", c.high_x4_index2},
                {"violations", violations},
                {"ok", c.ok()}};
}

std::string form_name(ExplicitForm form) {
    return form == ExplicitForm::six ? "(1)(n-4)(n-3)(6)" : "(1)(n-3)(n-2)(4)";
}

Json witness_to_json(i64 n, ExplicitForm form, const WitnessInterval& interval,
                     const std::optional<IntervalWitness>& w) {
    Json j{{"n", n},
           {"form", form_name(form)},
           {"interval", Json{{"lo_div", interval.lo_div}, {"hi_div", interval.hi_div}}},
           {"found", w.has_value()}};
    if (w) {
        j["g"] = w->g;
        j["large_count"] = w->large_count;
    }
    return j;
}

Json to_json(const BertrandSweep& s) {
    return Json{{"max", s.max_n},
                {"checked", s.checked},
                {"open_failures", Json(s.open_failures)},
                {"half_open_failures", Json(s.half_open_failures)},
                {"ok", s.ok()}};
}

} // namespace zsindex
