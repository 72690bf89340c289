#include "zsindex/singular.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>
#include <string>

#include "zsindex/error.hpp"

namespace zsindex {

namespace {

void require_coprime6(i64 n) {
    if (n % 2 == 0 || n % 3 == 0)
        throw Error(Errc::domain, "modulus " + std::to_string(n) + " is not coprime to 6");
}

bool is_pow2(i64 k) { return k > 0 && (k & (k - 1)) == 0; }

// Largest b with 3 * 2^b < n.
int exponent_below(i64 n) {
    int lo = 0;
    int hi = 61;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if ((i64{3} << mid) < n)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

Quad sorted_quad(Quad q) {
    std::sort(q.begin(), q.end());
    return q;
}

bool all_units(const Quad& q, const ModulusTables& t) {
    return std::all_of(q.begin(), q.end(), [&](i64 x) { return t.is_unit(x); });
}

} // namespace

bool is_singular(const ZsSeq& s) {
    if (s.size() != 4)
        throw Error(Errc::domain, "singularity is defined for length 4, got " + std::to_string(s.size()));
    const i64 n = s.n();
    if (!s.ctx().coprime6()) return false;
    if (!is_minimal_zero_sum(s)) return false;
    for (i64 x : s.elems())
        if (std::gcd(x, n) != 1) return false;

    std::array<i64, 4> x{s[0], s[1], s[2], s[3]};
    std::sort(x.begin(), x.end());
    do {
        if (x[0] == 1 && (x[1] + 1 == x[2] || x[1] == n - 2)) return true;
    } while (std::next_permutation(x.begin(), x.end()));
    return false;
}

i64 f_val(i64 k, i64 n) {
    if (k < 1) throw Error(Errc::domain, "f(k) needs k >= 1");
    if (n < 5) throw Error(Errc::unsupported_modulus, "modulus " + std::to_string(n));
    const i64 den = checked_mul(3, k);
    return checked_mul(den - 1, n) / den;
}

GoodKReport good_report(i64 k, i64 n) {
    require_coprime6(n);
    GoodKReport r;
    r.n = n;
    r.k = k;
    r.is_pow2 = is_pow2(k);
    r.below_sixth = checked_mul(6, k) < n;
    r.f_k = f_val(k, n);
    r.big_f_k = checked_mul(2 * n - 2 - 2 * r.f_k, k);
    // F(k) > (n-1)/2  <=>  2 F(k) > n - 1
    r.good = r.is_pow2 && r.below_sixth && checked_mul(2, r.big_f_k) > n - 1;
    return r;
}

DescentParams descent_params(i64 n) {
    require_coprime6(n);
    if (n <= 24) throw Error(Errc::out_of_range, "descent bound needs n > 24, got " + std::to_string(n));

    DescentParams p;
    p.n = n;
    p.b = exponent_below(n);
    if (!(n < (i64{3} << (p.b + 1))))
        throw Error(Errc::fault, "exponent search failed for n = " + std::to_string(n));
    p.k_star = i64{1} << (p.b - 2);

    for (int t = 0; t <= p.b - 2; ++t) {
        if (!good_report(i64{1} << t, n).good)
            throw Error(Errc::fault, "2^" + std::to_string(t) + " is not good for n = " + std::to_string(n));
    }
    for (int t = 1; t <= p.b - 1; ++t) {
        const i64 bound = f_val(i64{1} << t, n);
        if (!p.chain.empty() && bound < p.chain.back())
            throw Error(Errc::fault, "descent chain decreases for n = " + std::to_string(n));
        p.chain.push_back(bound);
    }
    p.final_bound = p.chain.back();
    if (n - p.final_bound > 4)
        throw Error(Errc::fault, "final bound " + std::to_string(p.final_bound) +
                                     " leaves more than 4 for n = " + std::to_string(n));
    return p;
}

ZsSeq explicit_form(i64 n, ExplicitForm form) {
    require_coprime6(n);
    if (n < 11) throw Error(Errc::degenerate, "explicit forms need n >= 11, got " + std::to_string(n));
    if (form == ExplicitForm::six) return new_seq(n, {1, n - 4, n - 3, 6});
    return new_seq(n, {1, n - 3, n - 2, 4});
}

std::pair<ZsSeq, ZsSeq> explicit_forms(i64 n) {
    return {explicit_form(n, ExplicitForm::six), explicit_form(n, ExplicitForm::four)};
}

ZsSeq descent_boundary_quadruple(i64 k, i64 n) {
    const GoodKReport r = good_report(k, n);
    if (!r.good)
        throw Error(Errc::domain, std::to_string(k) + " is not good for n = " + std::to_string(n));
    const i64 x4 = 2 * n - 2 - 2 * r.f_k;
    if (r.f_k < 1 || r.f_k + 1 > n - 1 || x4 < 1 || x4 > n - 1)
        throw Error(Errc::domain, "boundary quadruple leaves [1, n-1] for k = " + std::to_string(k));
    return new_seq(n, {1, r.f_k, r.f_k + 1, x4});
}

ZsSeq successor_reduction(const ZsSeq& s) {
    if (!is_singular(s)) throw Error(Errc::domain, s.to_string() + " is not singular");
    const i64 n = s.n();

    std::array<std::size_t, 4> idx{0, 1, 2, 3};
    bool found = false;
    do {
        if (s[idx[0]] == 1 && s[idx[1]] == n - 2) {
            found = true;
            break;
        }
    } while (std::next_permutation(idx.begin(), idx.end()));
    if (!found) throw Error(Errc::domain, s.to_string() + " is not in the x2 = n-2 branch");

    const i64 x3 = s[idx[2]];
    const i64 inv = mod_inverse(x3, n);
    return new_seq(n, {1, reduce(inv - 1, n), inv, mul_mod(inv, n - 2, n)});
}

std::optional<IntervalWitness> interval_witness(i64 n, ExplicitForm form, WitnessInterval interval) {
    require_coprime6(n);
    if (interval.lo_div < 1 || interval.hi_div < 1)
        throw Error(Errc::domain, "interval divisors must be positive");
    // n / lo_div < g < n / hi_div, cross-multiplied.
    for (i64 g = n / interval.lo_div + 1; checked_mul(interval.hi_div, g) < n; ++g) {
        if (std::gcd(g, n) != 1) continue;
        return IntervalWitness{g, count_large_residues(explicit_form(n, form), g)};
    }
    return std::nullopt;
}

SingularCheck verify_singular_theorem(i64 n) {
    require_coprime6(n);
    if (n < 11) throw Error(Errc::out_of_range, "singular check needs n >= 11, got " + std::to_string(n));
    const ModulusTables tables(n);

    SingularCheck out;
    out.n = n;
    std::set<Quad> seen;

    auto admit = [&](const Quad& q) { return all_units(q, tables) && quad_is_minimal(q, n); };
    auto check = [&](const Quad& q) -> i64 {
        const Quad key = sorted_quad(q);
        const i64 index = quad_index(key, tables).index;
        if (seen.insert(key).second) {
            ++out.checked;
            if (index != 1) out.violations.push_back(key);
        }
        return index;
    };

    // x2 + 1 = x3
    for (i64 x2 = 1; x2 + 1 <= n - 1; ++x2) {
        const i64 x4 = reduce(-(2 * x2 + 2), n);
        if (x4 == 0) continue;
        const Quad q{1, x2, x2 + 1, x4};
        if (!admit(q)) continue;
        ++out.consecutive_branch;
        const i64 index = check(q);
        if (index == 2 && x4 >= x2) ++out.high_x4_index2;
    }
    // x2 = n - 2
    for (i64 x3 = 1; x3 <= n - 1; ++x3) {
        const i64 x4 = reduce(1 - x3, n);
        if (x4 == 0) continue;
        const Quad q{1, n - 2, x3, x4};
        if (!admit(q)) continue;
        ++out.n_minus_two_branch;
        check(q);
    }
    return out;
}

} // namespace zsindex
