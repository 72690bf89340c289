#include "zsindex/zseq.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "zsindex/error.hpp"

namespace zsindex {

namespace {

void require_unit(i64 u, i64 n) {
    if (std::gcd(reduce(u, n), n) != 1)
        throw Error(Errc::non_unit, std::to_string(u) + " is not a unit modulo " + std::to_string(n));
}

// True when some nonempty subset of `xs` sums to 0 mod n.
bool has_zero_subsum(std::span<const i64> xs, i64 n) {
    if (xs.size() <= 16) {
        const std::uint32_t limit = std::uint32_t{1} << xs.size();
        for (std::uint32_t mask = 1; mask < limit; ++mask) {
            i64 sum = 0;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (mask & (std::uint32_t{1} << i)) sum = (sum + xs[i]) % n;
            if (sum == 0) return true;
        }
        return false;
    }
    std::vector<char> reach(static_cast<std::size_t>(n), 0);
    std::vector<char> next;
    for (i64 x : xs) {
        next = reach;
        next[x % n] = 1;
        for (i64 r = 0; r < n; ++r)
            if (reach[r]) next[(r + x) % n] = 1;
        reach.swap(next);
        if (reach[0]) return true;
    }
    return false;
}

} // namespace

ZsSeq::ZsSeq(GroupContext ctx, std::vector<i64> elems) : ctx_(ctx), elems_(std::move(elems)) {
    if (elems_.empty()) throw Error(Errc::invalid_element, "sequence must have at least one element");
    for (i64 x : elems_) {
        if (x < 1 || x >= ctx_.n())
            throw Error(Errc::invalid_element, "element " + std::to_string(x) +
                                                   " outside [1, " + std::to_string(ctx_.n() - 1) + "]");
    }
}

std::vector<i64> ZsSeq::sorted() const {
    std::vector<i64> out = elems_;
    std::sort(out.begin(), out.end());
    return out;
}

std::string ZsSeq::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < elems_.size(); ++i) os << (i ? "," : "") << elems_[i];
    os << ") mod " << n();
    return os.str();
}

ZsSeq new_seq(i64 n, std::vector<i64> elems) { return ZsSeq(GroupContext(n), std::move(elems)); }

bool same_multiset(const ZsSeq& a, const ZsSeq& b) {
    return a.n() == b.n() && a.sorted() == b.sorted();
}

bool is_zero_sum(const ZsSeq& s) {
    i64 sum = 0;
    for (i64 x : s.elems()) sum = (sum + x) % s.n();
    return sum == 0;
}

bool is_minimal_zero_sum(const ZsSeq& s) {
    if (!is_zero_sum(s)) return false;
    // A proper zero-sum subset exists iff one avoiding the last element does:
    // its complement is zero-sum too.
    return !has_zero_subsum(s.elems().first(s.size() - 1), s.n());
}

i64 residue_sum(const ZsSeq& s, i64 u) {
    require_unit(u, s.n());
    i64 total = 0;
    for (i64 x : s.elems()) total = checked_add(total, mul_mod(u, x, s.n()));
    return total;
}

std::string Norm::to_string() const {
    return is_integer() ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Norm g_norm(const ZsSeq& s, i64 g) {
    require_unit(g, s.n());
    const i64 sum = residue_sum(s, mod_inverse(g, s.n()));
    const i64 d = std::gcd(sum, s.n());
    return Norm{sum / d, s.n() / d};
}

IndexResult index_with_witness(const ZsSeq& s, NormProfile profile) {
    if (!is_zero_sum(s))
        throw Error(Errc::domain, "index is defined here only for zero-sum sequences: " + s.to_string());
    const i64 n = s.n();
    IndexResult out;
    out.complete = true;
    const std::vector<i64> gens = units(n);
    out.norms.reserve(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const i64 g = gens[i];
        const i64 norm = residue_sum(s, mod_inverse(g, n)) / n;
        out.norms.push_back({g, norm});
        if (out.index == 0 || norm < out.index) {
            out.index = norm;
            out.witness = g;
        }
        if (norm == 1 && profile == NormProfile::early_exit) {
            out.complete = i + 1 == gens.size();
            break;
        }
    }
    return out;
}

int count_large_residues(const ZsSeq& s, i64 u) {
    require_unit(u, s.n());
    int count = 0;
    for (i64 x : s.elems())
        if (2 * mul_mod(u, x, s.n()) > s.n()) ++count;
    return count;
}

ZsSeq unit_transform(const ZsSeq& s, i64 u) {
    require_unit(u, s.n());
    std::vector<i64> out;
    out.reserve(s.size());
    for (i64 x : s.elems()) out.push_back(mul_mod(u, x, s.n()));
    return ZsSeq(s.ctx(), std::move(out));
}

ZsSeq canonical_orbit_rep(const ZsSeq& s) {
    const i64 n = s.n();
    // The least element anywhere in the orbit is the least gcd(x_i, n); the
    // representative must place it first, so only units sending some x_i
    // with that gcd onto it need to be tried.
    i64 d = n;
    for (i64 x : s.elems()) d = std::min(d, std::gcd(x, n));
    const i64 m = n / d;

    std::vector<i64> best = s.sorted();
    std::vector<i64> image(s.size());
    std::vector<i64> tried;
    for (i64 x : s.elems()) {
        if (std::gcd(x, n) != d) continue;
        if (std::find(tried.begin(), tried.end(), x) != tried.end()) continue;
        tried.push_back(x);
        const i64 base = mod_inverse(x / d, m);
        for (i64 t = 0; t < d; ++t) {
            const i64 u = base + t * m;
            if (std::gcd(u, n) != 1) continue;
            for (std::size_t i = 0; i < s.size(); ++i) image[i] = mul_mod(u, s[i], n);
            std::sort(image.begin(), image.end());
            if (image < best) best = image;
        }
    }
    return ZsSeq(s.ctx(), std::move(best));
}

} // namespace zsindex
