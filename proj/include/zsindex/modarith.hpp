#pragma once

// Exact modular and prime arithmetic on 64-bit signed integers.
//
// Every routine either returns an exact result or throws zsindex::Error;
// nothing wraps silently.

#include <cstdint>
#include <optional>
#include <vector>

namespace zsindex {

using i64 = std::int64_t;

i64 checked_add(i64 a, i64 b);
i64 checked_mul(i64 a, i64 b);

// Least nonnegative residue of x modulo y (y >= 1), defined for negative x.
i64 reduce(i64 x, i64 y);

// (a * b) mod n computed without intermediate overflow.
i64 mul_mod(i64 a, i64 b, i64 n);

// Multiplicative inverse of a modulo n, in [1, n). Throws Errc::non_unit
// when gcd(a, n) != 1.
i64 mod_inverse(i64 a, i64 n);

i64 euler_phi(i64 n);

// Ascending list of the residues in [1, n) coprime to n.
std::vector<i64> units(i64 n);

// Number of distinct prime factors, by trial division.
int distinct_prime_factors(i64 n);

// Deterministic Miller-Rabin; exact for every m < 2^63. Negative m is not prime.
bool is_prime(i64 m);

// Smallest prime p with 2N < p < 3N (N >= 2).
std::optional<i64> prime_in_bertrand(i64 N);

// Smallest prime p with N+1 <= p < 3(N+1)/2 (N >= 2).
std::optional<i64> prime_in_half_open(i64 N);

// All primes in [lo, hi), produced by a segmented sieve of Eratosthenes.
std::vector<i64> primes_between(i64 lo, i64 hi);

// Sieve-backed sweep of both prime-interval statements for 2 <= N <= max_n.
struct BertrandSweep {
    i64 max_n = 0;
    i64 checked = 0;
    std::vector<i64> open_failures;      // N with no prime in (2N, 3N)
    std::vector<i64> half_open_failures; // N with no prime in [N+1, 3(N+1)/2)

    bool ok() const { return open_failures.empty() && half_open_failures.empty(); }
};

BertrandSweep bertrand_sweep(i64 max_n);

// The cyclic group Z/n together with cached derived facts.
class GroupContext {
public:
    explicit GroupContext(i64 n);

    i64 n() const noexcept { return n_; }
    bool coprime6() const noexcept { return coprime6_; }
    i64 unit_count() const noexcept { return unit_count_; }

    friend bool operator==(const GroupContext& a, const GroupContext& b) noexcept {
        return a.n_ == b.n_;
    }

private:
    i64 n_;
    bool coprime6_;
    i64 unit_count_;
};

} // namespace zsindex
