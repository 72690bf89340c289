#include "zsindex/modarith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "zsindex/error.hpp"

namespace zsindex {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod_u64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod_u64(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mulmod_u64(result, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1U;
    }
    return result;
}

// Largest r with r*r <= v.
i64 isqrt(i64 v) {
    auto r = static_cast<i64>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

std::vector<i64> simple_sieve(i64 limit) {
    std::vector<i64> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(static_cast<std::size_t>(limit + 1), 0);
    for (i64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (i64 j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

void require_modulus(i64 n, i64 min_value) {
    if (n < min_value)
        throw Error(Errc::invalid_modulus, "modulus " + std::to_string(n) + " must be at least " +
                                               std::to_string(min_value));
}

} // namespace

i64 checked_add(i64 a, i64 b) {
    i64 out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw Error(Errc::overflow, std::to_string(a) + " + " + std::to_string(b));
    return out;
}

i64 checked_mul(i64 a, i64 b) {
    i64 out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw Error(Errc::overflow, std::to_string(a) + " * " + std::to_string(b));
    return out;
}

i64 reduce(i64 x, i64 y) {
    require_modulus(y, 1);
    const i64 r = x % y;
    return r < 0 ? r + y : r;
}

i64 mul_mod(i64 a, i64 b, i64 n) {
    require_modulus(n, 1);
    const auto product = static_cast<__int128>(reduce(a, n)) * reduce(b, n);
    return static_cast<i64>(product % n);
}

i64 mod_inverse(i64 a, i64 n) {
    require_modulus(n, 2);
    // Extended Euclid on (a mod n, n); coefficients stay bounded by n.
    i64 old_r = reduce(a, n), r = n;
    i64 old_s = 1, s = 0;
    while (r != 0) {
        const i64 q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1)
        throw Error(Errc::non_unit,
                    std::to_string(a) + " is not invertible modulo " + std::to_string(n));
    return reduce(old_s, n);
}

i64 euler_phi(i64 n) {
    require_modulus(n, 1);
    i64 result = n;
    i64 m = n;
    for (i64 p = 2; p <= m / p; ++p) {
        if (m % p != 0) continue;
        while (m % p == 0) m /= p;
        result -= result / p;
    }
    if (m > 1) result -= result / m;
    return result;
}

std::vector<i64> units(i64 n) {
    require_modulus(n, 2);
    std::vector<i64> out;
    out.reserve(static_cast<std::size_t>(euler_phi(n)));
    for (i64 u = 1; u < n; ++u)
        if (std::gcd(u, n) == 1) out.push_back(u);
    return out;
}

int distinct_prime_factors(i64 n) {
    if (n < 1) throw Error(Errc::domain, "factor count needs a positive integer");
    int count = 0;
    for (i64 p = 2; p <= n / p; ++p) {
        if (n % p != 0) continue;
        ++count;
        while (n % p == 0) n /= p;
    }
    return n > 1 ? count + 1 : count;
}

bool is_prime(i64 m) {
    if (m < 2) return false;
    static constexpr std::array<u64, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (u64 p : kBases) {
        if (static_cast<u64>(m) == p) return true;
        if (static_cast<u64>(m) % p == 0) return false;
    }
    const auto n = static_cast<u64>(m);
    const int s = __builtin_ctzll(n - 1);
    const u64 d = (n - 1) >> s;
    // These twelve bases are a proven deterministic set below 3.3e24.
    for (u64 a : kBases) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s && witness; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) witness = false;
        }
        if (witness) return false;
    }
    return true;
}

std::optional<i64> prime_in_bertrand(i64 N) {
    if (N < 2) throw Error(Errc::domain, "prime interval needs N >= 2");
    const i64 hi = checked_mul(3, N);
    for (i64 p = checked_mul(2, N) + 1; p < hi; ++p)
        if (is_prime(p)) return p;
    return std::nullopt;
}

std::optional<i64> prime_in_half_open(i64 N) {
    if (N < 2) throw Error(Errc::domain, "prime interval needs N >= 2");
    const i64 twice_hi = checked_mul(3, checked_add(N, 1));
    // p < 3(N+1)/2  <=>  2p < 3(N+1)
    for (i64 p = N + 1; 2 * p < twice_hi; ++p)
        if (is_prime(p)) return p;
    return std::nullopt;
}

std::vector<i64> primes_between(i64 lo, i64 hi) {
    std::vector<i64> out;
    lo = std::max<i64>(lo, 2);
    if (hi <= lo) return out;

    const std::vector<i64> base = simple_sieve(isqrt(hi - 1));
    constexpr i64 kSegment = i64{1} << 18;
    std::vector<char> composite(static_cast<std::size_t>(kSegment));

    for (i64 seg_lo = lo; seg_lo < hi; seg_lo += kSegment) {
        const i64 seg_hi = std::min(hi, seg_lo + kSegment);
        std::fill(composite.begin(), composite.end(), 0);
        for (i64 p : base) {
            if (p * p >= seg_hi) break;
            i64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (i64 j = start; j < seg_hi; j += p) composite[j - seg_lo] = 1;
        }
        for (i64 v = seg_lo; v < seg_hi; ++v)
            if (!composite[v - seg_lo]) out.push_back(v);
    }
    return out;
}

BertrandSweep bertrand_sweep(i64 max_n) {
    if (max_n < 2) throw Error(Errc::domain, "prime sweep needs max >= 2");
    BertrandSweep sweep;
    sweep.max_n = max_n;

    // Covers (2N, 3N) and [N+1, 3(N+1)/2) for every N <= max_n.
    const std::vector<i64> primes = primes_between(2, checked_add(checked_mul(3, max_n), 3));

    std::size_t open_ptr = 0;
    std::size_t half_ptr = 0;
    for (i64 N = 2; N <= max_n; ++N) {
        while (open_ptr < primes.size() && primes[open_ptr] <= 2 * N) ++open_ptr;
        if (open_ptr == primes.size() || primes[open_ptr] >= 3 * N)
            sweep.open_failures.push_back(N);

        while (half_ptr < primes.size() && primes[half_ptr] < N + 1) ++half_ptr;
        if (half_ptr == primes.size() || 2 * primes[half_ptr] >= 3 * (N + 1))
            sweep.half_open_failures.push_back(N);

        ++sweep.checked;
    }
    return sweep;
}

GroupContext::GroupContext(i64 n)
    : n_(n), coprime6_(n % 2 != 0 && n % 3 != 0), unit_count_(0) {
    if (n < 5)
        throw Error(Errc::unsupported_modulus,
                    "modulus " + std::to_string(n) + " is below the supported minimum 5");
    unit_count_ = euler_phi(n);
}

} // namespace zsindex
