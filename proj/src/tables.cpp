#include "zsindex/tables.hpp"

#include <numeric>
#include <string>

#include "zsindex/error.hpp"

namespace zsindex {

ModulusTables::ModulusTables(i64 n) : n_(n) {
    if (n < 5) throw Error(Errc::unsupported_modulus, "modulus " + std::to_string(n));
    // u * x for u, x < n must fit in 63 bits.
    if (n > 3'000'000'000LL) throw Error(Errc::overflow, "modulus too large for the search kernels");
    gcd_.resize(static_cast<std::size_t>(n));
    inverse_by_value_.assign(static_cast<std::size_t>(n), 0);
    for (i64 x = 0; x < n; ++x) gcd_[x] = std::gcd(x, n);
    for (i64 g = 1; g < n; ++g) {
        if (gcd_[g] != 1) continue;
        gens_.push_back(g);
        inverses_.push_back(mod_inverse(g, n));
        inverse_by_value_[g] = inverses_.back();
    }
}

QuadIndex quad_index(const Quad& q, const ModulusTables& t) {
    const i64 n = t.n();
    const auto& gens = t.generators();
    const auto& inv = t.inverses();
    QuadIndex out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const i64 norm = quad_residue_sum(q, inv[i], n) / n;
        if (out.index == 0 || norm < out.index) {
            out.index = norm;
            out.witness = gens[i];
            if (norm == 1) break;
        }
    }
    return out;
}

std::vector<GeneratorNorm> quad_norms(const Quad& q, const ModulusTables& t) {
    const auto& gens = t.generators();
    const auto& inv = t.inverses();
    std::vector<GeneratorNorm> out;
    out.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        out.push_back({gens[i], quad_residue_sum(q, inv[i], t.n()) / t.n()});
    return out;
}

} // namespace zsindex
