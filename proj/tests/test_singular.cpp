#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "zsindex/error.hpp"
#include "zsindex/singular.hpp"
#include "zsindex/verifier.hpp"

using namespace zsindex;

namespace {

Errc code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::fault;
}

bool coprime6(i64 n) { return n % 2 != 0 && n % 3 != 0; }

// Definition checked over every labeling with plain loops, independent of
// the library's permutation search.
bool singular_by_definition(const oracle::Quad& q, i64 n) {
    if (!coprime6(n)) return false;
    if (!oracle::minimal_by_subsets({q.begin(), q.end()}, n)) return false;
    for (i64 x : q)
        if (std::gcd(x, n) != 1) return false;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                if (a == b || a == c || b == c) continue;
                if (q[a] == 1 && (q[b] + 1 == q[c] || q[b] == n - 2)) return true;
            }
    return false;
}

} // namespace

TEST_CASE("singularity predicate") {
    CHECK(is_singular(new_seq(25, {1, 21, 22, 6})));
    CHECK(is_singular(new_seq(25, {1, 23, 4, 22})));
    CHECK(is_singular(new_seq(25, {22, 4, 23, 1})));
    // Labeled (1)(2)(3)(1), this one meets every condition.
    CHECK(is_singular(new_seq(7, {1, 1, 2, 3})));
    CHECK_FALSE(is_singular(new_seq(7, {1, 1, 1, 4})));
    CHECK_FALSE(is_singular(new_seq(25, {1, 4, 5, 15})));  // 5 and 15 are not units
    CHECK_FALSE(is_singular(new_seq(9, {1, 3, 4, 1})));     // not coprime to 6
    CHECK(code_of([] { is_singular(new_seq(25, {1, 24})); }) == Errc::domain);
}

TEST_CASE("singularity agrees with the definition on all minimal sequences") {
    for (i64 n = 5; n <= 70; ++n) {
        for_each_minimal(n, false, [&](const Quad& q) {
            REQUIRE(is_singular(new_seq(n, {q.begin(), q.end()})) == singular_by_definition(q, n));
        });
    }
}

TEST_CASE("f and good k") {
    CHECK(f_val(1, 25) == 16);
    CHECK(f_val(2, 25) == 20);
    CHECK(f_val(4, 25) == 22);
    CHECK(code_of([] { f_val(0, 25); }) == Errc::domain);

    const GoodKReport two = good_report(2, 25);
    CHECK(two.good);
    CHECK(two.f_k == 20);
    CHECK(two.big_f_k == 16);

    const GoodKReport eight = good_report(8, 25);
    CHECK(eight.is_pow2);
    CHECK_FALSE(eight.below_sixth);
    CHECK_FALSE(eight.good);

    const GoodKReport three = good_report(3, 25);
    CHECK_FALSE(three.is_pow2);
    CHECK_FALSE(three.good);

    CHECK(code_of([] { good_report(2, 27); }) == Errc::domain);
}

TEST_CASE("good-k report fields follow their definitions") {
    for (i64 n = 5; n <= 3000; ++n) {
        if (!coprime6(n)) continue;
        for (i64 k = 1; k <= n; ++k) {
            const GoodKReport r = good_report(k, n);
            const i64 f = (3 * k - 1) * n / (3 * k);
            REQUIRE(r.f_k == f);
            REQUIRE(r.f_k < n);
            REQUIRE(r.big_f_k == (2 * n - 2 - 2 * f) * k);
            REQUIRE(r.big_f_k >= 0);
            REQUIRE(r.is_pow2 == ((k & (k - 1)) == 0));
            REQUIRE(r.below_sixth == (6 * k < n));
            REQUIRE(r.good == (r.is_pow2 && r.below_sixth && 2 * r.big_f_k > n - 1));
        }
    }
}

TEST_CASE("descent parameters") {
    const DescentParams p25 = descent_params(25);
    CHECK(p25.b == 3);
    CHECK(p25.k_star == 2);
    CHECK(p25.chain == std::vector<i64>{20, 22});
    CHECK(p25.final_bound == 22);

    const DescentParams p29 = descent_params(29);
    CHECK(p29.b == 3);
    CHECK(p29.k_star == 2);
    CHECK(p29.final_bound == 26);

    const DescentParams p49 = descent_params(49);
    CHECK(p49.b == 4);
    CHECK(p49.k_star == 4);
    CHECK(p49.final_bound == 46);

    CHECK(code_of([] { descent_params(23); }) == Errc::out_of_range);
    CHECK(code_of([] { descent_params(35 * 3); }) == Errc::domain);
}

TEST_CASE("halving closure, descent goodness and the envelope up to 2*10^4") {
    for (i64 n = 25; n <= 20'000; ++n) {
        if (!coprime6(n)) continue;
        for (i64 k = 2; k <= n; k *= 2)
            if (good_report(k, n).good) REQUIRE(good_report(k / 2, n).good);
        const DescentParams p = descent_params(n);
        REQUIRE(3 * (i64{1} << p.b) < n);
        REQUIRE(n < 3 * (i64{1} << (p.b + 1)));
        REQUIRE(good_report(p.k_star, n).good);
        REQUIRE(std::is_sorted(p.chain.begin(), p.chain.end()));
        REQUIRE(p.chain.size() == static_cast<std::size_t>(p.b - 1));
        REQUIRE(n - p.final_bound <= 4);
    }
}

TEST_CASE("explicit forms") {
    const auto [six, four] = explicit_forms(25);
    CHECK(six == new_seq(25, {1, 21, 22, 6}));
    CHECK(four == new_seq(25, {1, 22, 23, 4}));
    CHECK(explicit_form(35, ExplicitForm::six) == new_seq(35, {1, 31, 32, 6}));
    CHECK(explicit_form(35, ExplicitForm::four) == new_seq(35, {1, 32, 33, 4}));
    CHECK(code_of([] { explicit_forms(7); }) == Errc::degenerate);

    for (i64 n = 11; n <= 5000; ++n) {
        if (!coprime6(n)) continue;
        const auto [a, b] = explicit_forms(n);
        REQUIRE(is_singular(a));
        REQUIRE(is_singular(b));
        REQUIRE(index_with_witness(a).index == 1);
        REQUIRE(index_with_witness(b).index == 1);
    }
}

TEST_CASE("descent boundary quadruple") {
    CHECK(descent_boundary_quadruple(1, 25) == new_seq(25, {1, 16, 17, 16}));
    CHECK(descent_boundary_quadruple(2, 25) == new_seq(25, {1, 20, 21, 8}));
    CHECK(descent_boundary_quadruple(4, 25) == new_seq(25, {1, 22, 23, 4}));
    CHECK(code_of([] { descent_boundary_quadruple(8, 25); }) == Errc::domain);

    for (i64 n = 5; n <= 5000; ++n) {
        if (!coprime6(n)) continue;
        for (i64 k = 1; 6 * k < n; k *= 2) {
            if (!good_report(k, n).good) continue;
            const ZsSeq q = descent_boundary_quadruple(k, n);
            const auto v = q.elems();
            REQUIRE(std::accumulate(v.begin(), v.end(), i64{0}) == 2 * n);
            REQUIRE(count_large_residues(q, k) == 3);
            REQUIRE(k * v[0] % n == k);
        }
    }
}

TEST_CASE("successor reduction") {
    CHECK(successor_reduction(new_seq(25, {1, 23, 4, 22})) == new_seq(25, {1, 18, 19, 12}));
    CHECK(successor_reduction(new_seq(25, {1, 23, 7, 19})) == new_seq(25, {1, 17, 18, 14}));
    // Input order picks x3 = 22 here, whose inverse 8 lies below n/2.
    CHECK(successor_reduction(new_seq(25, {22, 4, 23, 1})) == new_seq(25, {1, 7, 8, 9}));
    CHECK(code_of([] { successor_reduction(new_seq(25, {1, 21, 22, 6})); }) == Errc::domain);
    CHECK(code_of([] { successor_reduction(new_seq(7, {1, 1, 2, 3})); }) == Errc::domain);
    CHECK(code_of([] { successor_reduction(new_seq(7, {1, 1, 1, 4})); }) == Errc::domain);
}

TEST_CASE("successor reduction over every n-2 branch sequence, n <= 300") {
    for (i64 n = 11; n <= 300; ++n) {
        if (!coprime6(n)) continue;
        for (i64 x3 = 1; x3 < n; ++x3) {
            const i64 x4 = n + 1 - x3;
            if (x4 < 1 || x4 >= n) continue;
            const ZsSeq s = new_seq(n, {1, n - 2, x3, x4});
            if (!is_singular(s)) continue;
            const ZsSeq y = successor_reduction(s);
            const auto v = y.elems();
            const i64 inv = oracle::inverse_by_search(x3, n);
            REQUIRE(std::accumulate(v.begin(), v.end(), i64{0}) == (2 * inv > n ? 2 * n : n));
            REQUIRE(v[1] + 1 == v[2]);
            REQUIRE(is_singular(y));
            REQUIRE(same_multiset(unit_transform(y, x3), s));
            REQUIRE(index_with_witness(y).index == index_with_witness(s).index);
        }
    }
}

TEST_CASE("interval witness") {
    const auto w25 = interval_witness(25, ExplicitForm::six);
    REQUIRE(w25);
    CHECK(*w25 == IntervalWitness{3, 3});
    const auto w35 = interval_witness(35, ExplicitForm::six);
    REQUIRE(w35);
    CHECK(*w35 == IntervalWitness{3, 3});

    // (11/12, 11/8) holds only 1.
    CHECK(interval_witness(11, ExplicitForm::six)->g == 1);
    // (5/12, 5/8) contains no integer at all.
    CHECK_FALSE(interval_witness(5, ExplicitForm::six).has_value());
    // 77: (6.4, 9.6) holds 7, 8, 9; 7 divides 77, so the answer is 8.
    CHECK(interval_witness(77, ExplicitForm::six)->g == 8);
    CHECK(code_of([] { interval_witness(25, ExplicitForm::six, {0, 8}); }) == Errc::domain);
}

TEST_CASE("interval witness picks the least unit strictly inside") {
    for (i64 n = 11; n <= 4000; ++n) {
        if (!coprime6(n)) continue;
        for (const WitnessInterval iv : {WitnessInterval{12, 8}, WitnessInterval{8, 6}}) {
            i64 want = 0;
            for (i64 g = 1; g < n && want == 0; ++g)
                if (iv.lo_div * g > n && iv.hi_div * g < n && std::gcd(g, n) == 1) want = g;
            const auto got = interval_witness(n, ExplicitForm::six, iv);
            REQUIRE(got.has_value() == (want != 0));
            if (got) REQUIRE(got->g == want);
        }
    }
}

TEST_CASE("the six form has three large residues at its witness") {
    for (i64 n = 1001; n <= 60'000; n += 2) {
        if (!coprime6(n) || distinct_prime_factors(n) < 3) continue;
        const auto w = interval_witness(n, ExplicitForm::six);
        REQUIRE(w.has_value());
        REQUIRE(w->large_count == 3);
    }
}

TEST_CASE("singular sequences have index 1 at small moduli") {
    for (i64 n : {25, 35, 49}) {
        const SingularCheck c = verify_singular_theorem(n);
        CHECK(c.ok());
        CHECK(c.checked > 0);
    }
    CHECK(code_of([] { verify_singular_theorem(27); }) == Errc::domain);
    CHECK(code_of([] { verify_singular_theorem(7); }) == Errc::out_of_range);
}

TEST_CASE("singular check counts agree with brute-force classification") {
    for (i64 n = 11; n <= 70; ++n) {
        if (!coprime6(n)) continue;
        std::set<Quad> want;
        for_each_minimal(n, false, [&](const Quad& q) {
            if (singular_by_definition(q, n)) want.insert(q);
        });
        const SingularCheck c = verify_singular_theorem(n);
        REQUIRE(c.checked == static_cast<i64>(want.size()));
        REQUIRE(c.ok());
        for (const Quad& q : want) REQUIRE(oracle::index_by_definition({q.begin(), q.end()}, n).index == 1);
    }
}
