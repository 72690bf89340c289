#pragma once

// Precomputed per-modulus tables and the length-4 inner loops used by the
// exhaustive searches. The ZsSeq API in zseq.hpp is the reference path;
// these kernels trade its validation for speed.

#include <array>
#include <vector>

#include "zsindex/modarith.hpp"
#include "zsindex/zseq.hpp"

namespace zsindex {

using Quad = std::array<i64, 4>;

class ModulusTables {
public:
    explicit ModulusTables(i64 n);

    i64 n() const noexcept { return n_; }
    // Generators ascending, with the inverse of each at the same position.
    const std::vector<i64>& generators() const noexcept { return gens_; }
    const std::vector<i64>& inverses() const noexcept { return inverses_; }
    i64 gcd_with_n(i64 x) const { return gcd_[static_cast<std::size_t>(x)]; }
    bool is_unit(i64 x) const { return gcd_[static_cast<std::size_t>(x)] == 1; }
    // Inverse of a unit x in [1, n); 0 for non-units.
    i64 inverse_of(i64 x) const { return inverse_by_value_[static_cast<std::size_t>(x)]; }

private:
    i64 n_;
    std::vector<i64> gens_;
    std::vector<i64> inverses_;
    std::vector<i64> gcd_;
    std::vector<i64> inverse_by_value_;
};

// Elements must lie in [1, n-1].
inline bool quad_is_minimal(const Quad& q, i64 n) {
    if ((q[0] + q[1] + q[2] + q[3]) % n != 0) return false;
    // Singletons and triples are nonzero automatically; every pair is either
    // one of these three or the complement of one.
    return (q[0] + q[1]) % n != 0 && (q[0] + q[2]) % n != 0 && (q[1] + q[2]) % n != 0;
}

inline i64 quad_residue_sum(const Quad& q, i64 u, i64 n) {
    return u * q[0] % n + u * q[1] % n + u * q[2] % n + u * q[3] % n;
}

struct QuadIndex {
    i64 index = 0;
    i64 witness = 0;
};

// Index of a zero-sum quadruple, scanning generators upward and stopping at
// the first norm-1 witness.
QuadIndex quad_index(const Quad& q, const ModulusTables& t);

// Full norm profile, ascending by generator.
std::vector<GeneratorNorm> quad_norms(const Quad& q, const ModulusTables& t);

} // namespace zsindex
