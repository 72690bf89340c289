#pragma once

// The singular case: the singularity predicate, the good-k machinery behind
// the descent bound on x2, the two explicit forms, the reduction of the
// x2 = n-2 branch to the consecutive branch, and the interval witness.

#include <optional>
#include <utility>
#include <vector>

#include "zsindex/modarith.hpp"
#include "zsindex/tables.hpp"
#include "zsindex/zseq.hpp"

namespace zsindex {

// Length-4 minimal zero-sum S over Z/n, gcd(n,6)=1, with some labeling
// x1 = 1, (x2 + 1 = x3 or x2 = n-2), and every x_i a unit.
bool is_singular(const ZsSeq& s);

// floor((3k-1) n / (3k)), exact.
i64 f_val(i64 k, i64 n);

struct GoodKReport {
    i64 n = 0;
    i64 k = 0;
    bool is_pow2 = false;
    bool below_sixth = false;  // k < n/6
    i64 f_k = 0;
    i64 big_f_k = 0;           // (2n - 2 - 2 f(k)) k
    bool good = false;         // is_pow2 && below_sixth && big_f_k > (n-1)/2

    friend bool operator==(const GoodKReport&, const GoodKReport&) = default;
};

GoodKReport good_report(i64 k, i64 n);

struct DescentParams {
    i64 n = 0;
    int b = 0;                 // 3 * 2^b < n < 3 * 2^(b+1)
    i64 k_star = 0;            // 2^(b-2)
    std::vector<i64> chain;    // f(2), f(4), ..., f(2^(b-1))
    i64 final_bound = 0;       // f(2^(b-1))

    friend bool operator==(const DescentParams&, const DescentParams&) = default;
};

// Requires gcd(n,6) = 1 and n > 24. Throws Errc::fault if any of the
// guaranteed facts (goodness of 2^t for t <= b-2, monotone chain,
// n - final_bound <= 4) fails.
DescentParams descent_params(i64 n);

enum class ExplicitForm {
    six,   // (1)(n-4)(n-3)(6)
    four,  // (1)(n-3)(n-2)(4)
};

ZsSeq explicit_form(i64 n, ExplicitForm form);
std::pair<ZsSeq, ZsSeq> explicit_forms(i64 n);

// (1, f(k), f(k)+1, 2n-2-2f(k)): the configuration with x2 sitting exactly
// on the bound f(k). Requires k good.
ZsSeq descent_boundary_quadruple(i64 k, i64 n);

// For singular S = (1, n-2, x3, x4) returns
// Y = (1, x3^{-1} - 1, x3^{-1}, x3^{-1}(n-2)), a singular sequence of the
// consecutive kind with x3 * Y = S as multisets. If the input is not already
// labeled (1, n-2, ...), the first such labeling preserving input order is used.
ZsSeq successor_reduction(const ZsSeq& s);

// Open interval (n / lo_div, n / hi_div).
struct WitnessInterval {
    i64 lo_div = 12;
    i64 hi_div = 8;
};

struct IntervalWitness {
    i64 g = 0;
    int large_count = 0;  // count_large_residues(form, g)

    friend bool operator==(const IntervalWitness&, const IntervalWitness&) = default;
};

// Smallest unit g strictly inside the interval, with the large-residue count
// of the chosen form at g. Empty when the interval holds no unit. The forms
// need n >= 11, so a unit found below that throws Errc::degenerate; the
// default interval holds no integer there.
std::optional<IntervalWitness> interval_witness(i64 n, ExplicitForm form,
                                                WitnessInterval interval = {});

struct SingularCheck {
    i64 n = 0;
    i64 checked = 0;             // distinct singular multisets
    i64 consecutive_branch = 0;  // x2 + 1 = x3 labelings found
    i64 n_minus_two_branch = 0;  // x2 = n-2 labelings found
    i64 high_x4_index2 = 0;      // consecutive branch with x4 >= x2 and index 2
    std::vector<Quad> violations;  // singular sequences whose index is not 1

    bool ok() const { return violations.empty() && high_x4_index2 == 0; }
    friend bool operator==(const SingularCheck&, const SingularCheck&) = default;
};

// Enumerates every singular sequence over Z/n and checks each has index 1.
SingularCheck verify_singular_theorem(i64 n);

} // namespace zsindex
