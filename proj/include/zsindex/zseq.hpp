#pragma once

// Sequences over Z/n, the zero-sum and minimality predicates, g-norms and
// the exact index.

#include <span>
#include <string>
#include <vector>

#include "zsindex/modarith.hpp"

namespace zsindex {

// A sequence of nonzero residues bound to its modulus. Elements keep their
// input order; multiset comparisons go through same_multiset().
class ZsSeq {
public:
    // Rejects (does not reduce) elements outside [1, n-1].
    ZsSeq(GroupContext ctx, std::vector<i64> elems);

    const GroupContext& ctx() const noexcept { return ctx_; }
    i64 n() const noexcept { return ctx_.n(); }
    std::span<const i64> elems() const noexcept { return elems_; }
    std::size_t size() const noexcept { return elems_.size(); }
    i64 operator[](std::size_t i) const { return elems_[i]; }

    std::vector<i64> sorted() const;
    std::string to_string() const;

    friend bool operator==(const ZsSeq&, const ZsSeq&) = default;

private:
    GroupContext ctx_;
    std::vector<i64> elems_;
};

ZsSeq new_seq(i64 n, std::vector<i64> elems);

bool same_multiset(const ZsSeq& a, const ZsSeq& b);

bool is_zero_sum(const ZsSeq& s);

// Zero-sum with no nonempty proper zero-sum sub-multiset.
bool is_minimal_zero_sum(const ZsSeq& s);

// Sum over i of (u * x_i mod n). u must be a unit.
i64 residue_sum(const ZsSeq& s, i64 u);

// Exact rational, always in lowest terms with a positive denominator.
struct Norm {
    i64 num = 0;
    i64 den = 1;

    bool is_integer() const noexcept { return den == 1; }
    std::string to_string() const;
    friend bool operator==(const Norm&, const Norm&) = default;
};

// ||S||_g = residue_sum(S, g^{-1}) / n.
Norm g_norm(const ZsSeq& s, i64 g);

struct GeneratorNorm {
    i64 generator = 0;
    i64 norm = 0;
    friend bool operator==(const GeneratorNorm&, const GeneratorNorm&) = default;
};

enum class NormProfile { full, early_exit };

struct IndexResult {
    i64 index = 0;
    i64 witness = 0;                   // smallest generator attaining the index
    std::vector<GeneratorNorm> norms;  // ascending by generator
    bool complete = false;             // false when the scan stopped at norm 1

    friend bool operator==(const IndexResult&, const IndexResult&) = default;
};

// Exact index of a zero-sum sequence. With NormProfile::early_exit the scan
// stops at the first generator of norm 1, so `norms` holds only the prefix
// that was scanned.
IndexResult index_with_witness(const ZsSeq& s, NormProfile profile = NormProfile::full);

// #{i : (u * x_i mod n) > n/2}
int count_large_residues(const ZsSeq& s, i64 u);

ZsSeq unit_transform(const ZsSeq& s, i64 u);

// Lexicographically least sorted tuple in the unit orbit of s.
ZsSeq canonical_orbit_rep(const ZsSeq& s);

} // namespace zsindex
