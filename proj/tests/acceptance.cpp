// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Every criterion is exact; there are no numeric tolerances.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "oracles.hpp"
#include "zsindex/cli.hpp"
#include "zsindex/error.hpp"
#include "zsindex/report.hpp"
#include "zsindex/singular.hpp"
#include "zsindex/verifier.hpp"

using namespace zsindex;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

bool coprime6(i64 n) { return n % 2 != 0 && n % 3 != 0; }

i64 coprime6_count(i64 lo, i64 hi) {
    i64 c = 0;
    for (i64 n = lo; n <= hi; ++n) c += coprime6(n) ? 1 : 0;
    return c;
}

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

Outcome sweep_via_cli(i64 lo, i64 hi) {
    std::ostringstream out, err;
    const int code = run_cli({"verify", "--range", std::to_string(lo), std::to_string(hi), "--jobs",
                              std::to_string(jobs()), "--json"},
                             out, err);
    const Report r = parse_report(out.str());
    i64 bad = 0;
    for (const auto& rec : r.records)
        if (rec["max_index"] != 1) ++bad;
    const i64 want = coprime6_count(lo, hi);
    std::ostringstream d;
    d << r.records.size() << " moduli (expected " << want << "), " << bad << " with max_index != 1, exit " << code;
    return {code == kExitOk && bad == 0 && static_cast<i64>(r.records.size()) == want, d.str()};
}

Outcome c1() { return sweep_via_cli(5, 300); }

Outcome c2() { return sweep_via_cli(5, 1000); }

Outcome c3() {
    i64 checked = 0, mismatched = 0;
    for (i64 n = 5; n <= 60; ++n) {
        if (!coprime6(n)) continue;
        VerifyRecord got = verify_n(n);
        got.elapsed_ms = 0;
        if (!(got == oracle::naive_verify(n))) {
            ++mismatched;
            std::cout << "    mismatch at n = " << n << '\n';
        }
        ++checked;
    }
    return {mismatched == 0, std::to_string(checked) + " moduli, " + std::to_string(mismatched) + " mismatches"};
}

Outcome c4() {
    const auto all = enumerate_minimal(5, false);
    const auto orbits = enumerate_minimal(5, true);
    const std::vector<std::vector<i64>> want{{1, 1, 1, 2}, {1, 3, 3, 3}, {2, 2, 2, 4}, {3, 4, 4, 4}};
    bool ok = all.size() == want.size() && orbits.size() == 1;
    for (std::size_t i = 0; ok && i < all.size(); ++i)
        ok = std::vector<i64>(all[i].elems().begin(), all[i].elems().end()) == want[i];
    for (const auto& s : all) ok = ok && index_with_witness(s).index == 1;
    ok = ok && orbits[0] == all[0];
    const VerifyRecord r = verify_n(5);
    ok = ok && r.total_minimal == 4 && r.orbit_count == 1 && r.max_index == 1;
    return {ok, std::to_string(all.size()) + " sequences, " + std::to_string(orbits.size()) + " orbit"};
}

Outcome c5() {
    std::ostringstream out, err;
    const int code = run_cli({"singular", "--range", "11", "5000", "--jobs", std::to_string(jobs()), "--json"},
                             out, err);
    const Report r = parse_report(out.str());
    i64 sequences = 0, failing = 0;
    for (const auto& rec : r.records) {
        sequences += rec["checked"].get<i64>();
        if (rec["ok"] != true) ++failing;
    }
    const i64 want = coprime6_count(11, 5000);
    std::ostringstream d;
    d << r.records.size() << " moduli, " << sequences << " singular sequences, " << failing << " failing moduli";
    return {code == kExitOk && failing == 0 && static_cast<i64>(r.records.size()) == want, d.str()};
}

Outcome c6() {
    i64 moduli = 0, six_bad = 0, four_bad = 0, four_wide_bad = 0;
    i64 four_counts[5] = {};
    for (i64 n = 1001; n <= 1'000'000; ++n) {
        if (!coprime6(n) || distinct_prime_factors(n) < 3) continue;
        ++moduli;
        const auto six = interval_witness(n, ExplicitForm::six);
        if (!six || six->large_count != 3) ++six_bad;
        const auto four = interval_witness(n, ExplicitForm::four);
        if (!four || four->large_count != 3) ++four_bad;
        if (four) ++four_counts[four->large_count];
        const auto wide = interval_witness(n, ExplicitForm::four, {8, 6});
        if (!wide || wide->large_count != 3) ++four_wide_bad;
    }
    std::ostringstream d;
    d << moduli << " moduli; form (1)(n-4)(n-3)(6): " << six_bad << " failures; form (1)(n-3)(n-2)(4): " << four_bad
      << " failures (large-residue counts:";
    for (int c = 0; c <= 4; ++c)
        if (four_counts[c]) d << ' ' << c << "x" << four_counts[c];
    d << ")";
    std::cout << "    info: form (1)(n-3)(n-2)(4) on (n/8, n/6) instead: " << four_wide_bad << " failures over "
              << moduli << " moduli\n";
    return {moduli > 0 && six_bad == 0 && four_bad == 0, d.str()};
}

Outcome c7() {
    i64 moduli = 0, closure = 0, kstar = 0, inner = 0, envelope = 0, quads = 0;
    for (i64 n = 5; n <= 100'000; ++n) {
        if (!coprime6(n)) continue;
        ++moduli;
        for (i64 k = 1; k <= n; k *= 2) {
            const GoodKReport r = good_report(k, n);
            if (r.good && k >= 2 && !good_report(k / 2, n).good) ++closure;
            if (r.good) {
                ++quads;
                if (count_large_residues(descent_boundary_quadruple(k, n), k) != 3) ++inner;
            }
        }
        if (n > 24) {
            try {
                const DescentParams p = descent_params(n);
                if (!good_report(p.k_star, n).good) ++kstar;
                if (n - p.final_bound > 4) ++envelope;
            } catch (const Error&) {
                ++kstar;
            }
        }
    }
    std::ostringstream d;
    d << moduli << " moduli, " << quads << " good k; failures: halving " << closure << ", 2^(b-2) good " << kstar
      << ", three large residues " << inner << ", envelope " << envelope;
    return {closure + kstar + inner + envelope == 0, d.str()};
}

Outcome c8() {
    i64 sequences = 0, bad = 0;
    for (i64 n = 11; n <= 500; ++n) {
        if (!coprime6(n)) continue;
        for (i64 x3 = 2; x3 < n; ++x3) {
            const ZsSeq s = new_seq(n, {1, n - 2, x3, n + 1 - x3});
            if (!is_singular(s)) continue;
            ++sequences;
            const ZsSeq y = successor_reduction(s);
            if (!same_multiset(unit_transform(y, x3), s) ||
                index_with_witness(y).index != index_with_witness(s).index)
                ++bad;
        }
    }
    return {sequences > 0 && bad == 0,
            std::to_string(sequences) + " sequences, " + std::to_string(bad) + " failures"};
}

Outcome c9() {
    std::ostringstream out, err;
    const int code = run_cli({"primes-check", "--max", "1000000", "--json"}, out, err);
    const Report r = parse_report(out.str());
    const Json& rec = r.records.at(0);
    std::ostringstream d;
    d << rec["checked"] << " values of N, open-interval misses " << rec["open_failures"].size()
      << ", half-open misses " << rec["half_open_failures"].size();
    return {code == kExitOk && rec["ok"] == true && rec["checked"] == 999'999, d.str()};
}

// Checks every invariant for one sequence; returns the number of violations.
i64 invariant_violations(const ZsSeq& s, std::mt19937_64& rng, int transforms) {
    const i64 n = s.n();
    i64 bad = 0;
    const IndexResult r = index_with_witness(s);
    bool has_norm3 = false;
    for (const auto& [g, norm] : r.norms) {
        if (n * g_norm(s, mod_inverse(g, n)).num != residue_sum(s, g)) ++bad;
        if (g_norm(s, g).num + g_norm(s, n - g).num != 4) ++bad;
        has_norm3 = has_norm3 || norm == 3;
    }
    if (s.ctx().coprime6() && r.index != 1 && r.index != 2) ++bad;
    if (s.ctx().coprime6() && has_norm3 && r.index != 1) ++bad;
    const auto us = units(n);
    std::uniform_int_distribution<std::size_t> pick(0, us.size() - 1);
    for (int t = 0; t < transforms; ++t)
        if (index_with_witness(unit_transform(s, us[pick(rng)]), NormProfile::early_exit).index != r.index) ++bad;
    return bad;
}

Outcome c10() {
    std::mt19937_64 rng(2024);
    i64 exhaustive = 0, random = 0, bad = 0;
    for (i64 n = 5; n <= 100; ++n) {
        for (const ZsSeq& s : enumerate_minimal(n, false)) {
            bad += invariant_violations(s, rng, 3);
            ++exhaustive;
        }
    }
    std::uniform_int_distribution<i64> modulus(5, 2000);
    while (random < 3000) {
        const i64 n = modulus(rng);
        std::uniform_int_distribution<i64> el(1, n - 1);
        std::vector<i64> xs{el(rng), el(rng), el(rng)};
        const i64 last = (3 * n - xs[0] - xs[1] - xs[2]) % n;
        if (last == 0) continue;
        xs.push_back(last);
        const ZsSeq s = new_seq(n, xs);
        if (!is_minimal_zero_sum(s)) continue;
        bad += invariant_violations(s, rng, 10);
        ++random;
    }
    return {bad == 0, std::to_string(exhaustive) + " exhaustive + " + std::to_string(random) +
                          " random sequences, " + std::to_string(bad) + " violations"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "verify --range 5 300: index 1 throughout", c1},
        {2, "verify every n <= 1000: index 1 throughout", c2},
        {3, "naive and orbit-reduced verification agree, n <= 60", c3},
        {4, "n = 5 ground truth", c4},
        {5, "every singular sequence has index 1, n <= 5000", c5},
        {6, "unit in (n/12, n/8) with three large residues, both forms, n <= 10^6", c6},
        {7, "good-k suite, n <= 10^5", c7},
        {8, "successor reduction, n <= 500", c8},
        {9, "primes-check --max 1000000", c9},
        {10, "sequence invariants, exhaustive n <= 100 and random n <= 2000", c10},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " ("
                  << ms << " ms)" << std::endl;
        failed += o.pass ? 0 : 1;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
