#pragma once

// Exhaustive enumeration of minimal zero-sum sequences of length 4 and the
// (parallel, resumable) range verification built on it.

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zsindex/tables.hpp"
#include "zsindex/zseq.hpp"

namespace zsindex {

struct Index2Example {
    Quad seq{};
    i64 witness = 0;
    std::vector<GeneratorNorm> norms;

    friend bool operator==(const Index2Example&, const Index2Example&) = default;
};

struct VerifyRecord {
    i64 n = 0;
    i64 total_minimal = 0;  // minimal zero-sum multisets of length 4
    i64 orbit_count = 0;    // unit orbits among them
    i64 max_index = 0;
    std::vector<Index2Example> index2_examples;  // one per index-2 orbit
    i64 elapsed_ms = 0;

    friend bool operator==(const VerifyRecord&, const VerifyRecord&) = default;
};

// Calls `sink` once per minimal zero-sum multiset over [1, n-1], as sorted
// tuples in ascending lexicographic order. With orbits_only, only the
// canonical representative of each unit orbit is produced.
void for_each_minimal(i64 n, bool orbits_only, const std::function<void(const Quad&)>& sink);

std::vector<ZsSeq> enumerate_minimal(i64 n, bool orbits_only);

// Orbit data for a sorted quadruple: whether it is its orbit's canonical
// representative, and the size of its orbit.
struct OrbitInfo {
    bool canonical = false;
    i64 orbit_size = 0;
};

OrbitInfo orbit_info(const Quad& sorted, const ModulusTables& tables);

VerifyRecord verify_n(i64 n);

struct RangeOptions {
    unsigned workers = 1;
    std::optional<std::filesystem::path> checkpoint;
    bool record_timing = true;  // false zeroes elapsed_ms for reproducible output
};

struct RangeResult {
    std::vector<VerifyRecord> records;     // ascending n
    std::vector<i64> resumed;              // n taken from the checkpoint ledger
    std::vector<std::string> corrupt_lines;  // ledger lines that failed to parse
    i64 verified = 0;                      // n verified in this run

    bool any_index2() const;
};

// Verifies every n in [lo, hi] with gcd(n, 6) = 1. Results do not depend on
// the worker count.
RangeResult verify_range(i64 lo, i64 hi, const RangeOptions& options = {});

} // namespace zsindex
