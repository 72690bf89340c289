#include "zsindex/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <iomanip>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "zsindex/error.hpp"
#include "zsindex/modarith.hpp"
#include "zsindex/report.hpp"
#include "zsindex/singular.hpp"
#include "zsindex/verifier.hpp"
#include "zsindex/zseq.hpp"

namespace zsindex {

namespace {

using Clock = std::chrono::steady_clock;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    i64 n = 0;
    std::vector<i64> range;
    std::string seq;
    unsigned jobs = std::max(1U, std::thread::hardware_concurrency());
    std::string checkpoint;
    bool json = false;
    bool csv = false;
    bool no_timing = false;
    bool norms = false;
    bool orbits = false;
    int form = 0;
    std::vector<i64> interval;
    i64 max = 0;
};

std::vector<i64> parse_seq(const std::string& text) {
    std::vector<i64> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item(text.data() + pos, comma - pos);
        i64 value = 0;
        const auto [end, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || ec != std::errc() || end != item.data() + item.size())
            throw UsageError("cannot parse sequence element '" + std::string(item) + "'");
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

i64 elapsed_ms(Clock::time_point start, const Options& o) {
    if (o.no_timing) return 0;
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

bool coprime6(i64 n) { return n % 2 != 0 && n % 3 != 0; }

// [lo, hi] from either --n or --range.
std::pair<i64, i64> bounds(const Options& o) {
    if (o.n != 0 && !o.range.empty()) throw UsageError("give either --n or --range, not both");
    if (o.n != 0) return {o.n, o.n};
    if (o.range.size() != 2) throw UsageError("one of --n or --range LO HI is required");
    if (o.range[0] < 5 || o.range[0] > o.range[1])
        throw UsageError("range must satisfy 5 <= LO <= HI");
    return {o.range[0], o.range[1]};
}

template <typename Fn>
void parallel_for(std::size_t count, unsigned workers, Fn fn) {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) fn(i);
    };
    workers = std::max(1U, std::min<unsigned>(workers, static_cast<unsigned>(count)));
    if (workers == 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
}

void print_json(const Report& r, std::ostream& out) { out << to_json(r).dump(2) << '\n'; }

void print_tuple(std::ostream& out, std::span<const i64> xs) {
    out << '(';
    for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
    out << ')';
}

// ---------------------------------------------------------------------------
// index
// ---------------------------------------------------------------------------
int cmd_index(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    const ZsSeq seq = new_seq(o.n, parse_seq(o.seq));
    if (!is_zero_sum(seq)) {
        err << "error: not zero-sum: " << seq.to_string() << '\n';
        return kExitUsage;
    }
    const IndexResult result = index_with_witness(seq, NormProfile::full);

    Report r;
    r.command = "index";
    r.params = Json{{"n", o.n}, {"seq", Json(std::vector<i64>(seq.elems().begin(), seq.elems().end()))}};
    Json rec = to_json(seq, result);
    if (!o.norms) rec.erase("norms");
    r.records.push_back(rec);
    r.elapsed_ms = elapsed_ms(start, o);

    if (o.json) {
        print_json(r, out);
        return kExitOk;
    }
    out << "sequence " << seq.to_string() << '\n';
    out << "index " << result.index << ", witness " << result.witness << '\n';
    if (o.norms) {
        out << std::setw(10) << "g" << std::setw(6) << "norm" << '\n';
        for (const auto& gn : result.norms) out << std::setw(10) << gn.generator << std::setw(6) << gn.norm << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
void print_index2_dump(const VerifyRecord& rec, std::ostream& out) {
    for (const auto& ex : rec.index2_examples) {
        out << "INDEX 2 at n=" << rec.n << ": ";
        print_tuple(out, ex.seq);
        out << "\n  norms:";
        for (const auto& gn : ex.norms) out << ' ' << gn.generator << ':' << gn.norm;
        out << '\n';
    }
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    const auto [lo, hi] = bounds(o);
    if (o.n != 0 && (!coprime6(o.n) || o.n < 5))
        throw UsageError("--n must be at least 5 and coprime to 6");
    if (o.json && o.csv) throw UsageError("--json and --csv are exclusive");

    RangeOptions ropt;
    ropt.workers = o.jobs;
    ropt.record_timing = !o.no_timing;
    if (!o.checkpoint.empty()) ropt.checkpoint = o.checkpoint;
    const RangeResult result = verify_range(lo, hi, ropt);
    for (const auto& line : result.corrupt_lines)
        err << "warning: corrupt checkpoint line ignored, modulus re-verified: " << line << '\n';

    Report r;
    r.command = "verify";
    r.params = Json{{"lo", lo}, {"hi", hi}};
    for (const auto& rec : result.records) r.records.push_back(to_json(rec));
    r.elapsed_ms = elapsed_ms(start, o);
    const int code = result.any_index2() ? kExitCheckFailed : kExitOk;

    if (o.json) {
        print_json(r, out);
    } else if (o.csv) {
        out << "n,total_minimal,orbit_count,max_index,index2_count,elapsed_ms\n";
        for (const auto& rec : result.records)
            out << rec.n << ',' << rec.total_minimal << ',' << rec.orbit_count << ',' << rec.max_index << ','
                << rec.index2_examples.size() << ',' << rec.elapsed_ms << '\n';
    } else {
        out << std::setw(8) << "n" << std::setw(16) << "total_minimal" << std::setw(12) << "orbits"
            << std::setw(11) << "max_index" << std::setw(8) << "index2" << std::setw(12) << "elapsed_ms" << '\n';
        i64 max_index = 0;
        for (const auto& rec : result.records) {
            out << std::setw(8) << rec.n << std::setw(16) << rec.total_minimal << std::setw(12) << rec.orbit_count
                << std::setw(11) << rec.max_index << std::setw(8) << rec.index2_examples.size() << std::setw(12)
                << rec.elapsed_ms << '\n';
            max_index = std::max(max_index, rec.max_index);
        }
        for (const auto& rec : result.records) print_index2_dump(rec, out);
        out << result.records.size() << " moduli (" << result.verified << " verified, " << result.resumed.size()
            << " resumed), max index " << max_index << ", "
            << (code == kExitOk ? "no index-2 orbit" : "INDEX-2 ORBIT FOUND") << '\n';
    }
    return code;
}

// ---------------------------------------------------------------------------
// singular
// ---------------------------------------------------------------------------
int cmd_singular(const Options& o, std::ostream& out, std::ostream&) {
    const auto start = Clock::now();
    const auto [lo, hi] = bounds(o);
    if (o.n != 0 && (!coprime6(o.n) || o.n < 11))
        throw UsageError("--n must be at least 11 and coprime to 6");

    std::vector<i64> moduli;
    for (i64 n = std::max<i64>(lo, 11); n <= hi; ++n)
        if (coprime6(n)) moduli.push_back(n);
    std::vector<SingularCheck> checks(moduli.size());
    parallel_for(moduli.size(), o.jobs, [&](std::size_t i) { checks[i] = verify_singular_theorem(moduli[i]); });

    Report r;
    r.command = "singular";
    r.params = Json{{"lo", lo}, {"hi", hi}};
    bool ok = true;
    i64 total = 0;
    for (const auto& c : checks) {
        r.records.push_back(to_json(c));
        ok = ok && c.ok();
        total += c.checked;
    }
    r.elapsed_ms = elapsed_ms(start, o);

    if (o.json) {
        print_json(r, out);
    } else {
        out << std::setw(8) << "n" << std::setw(10) << "checked" << std::setw(14) << "x2+1=x3" << std::setw(10)
            << "x2=n-2" << std::setw(12) << "violations" << '\n';
        for (const auto& c : checks) {
            out << std::setw(8) << c.n << std::setw(10) << c.checked << std::setw(14) << c.consecutive_branch
                << std::setw(10) << c.n_minus_two_branch << std::setw(12) << c.violations.size() << '\n';
            for (const auto& q : c.violations) {
                out << "  index != 1: ";
                print_tuple(out, q);
                out << '\n';
            }
        }
        out << total << " singular sequences over " << checks.size() << " moduli, "
            << (ok ? "all have index 1" : "VIOLATIONS FOUND") << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// goodk
// ---------------------------------------------------------------------------
int cmd_goodk(const Options& o, std::ostream& out, std::ostream& err) {
    const auto start = Clock::now();
    if (o.n < 5 || !coprime6(o.n)) throw UsageError("--n must be at least 5 and coprime to 6");
    const i64 n = o.n;

    std::vector<GoodKReport> reports;
    for (i64 k = 1; k <= n; k *= 2) reports.push_back(good_report(k, n));
    bool closed = true;
    for (std::size_t i = 1; i < reports.size(); ++i)
        if (reports[i].good && !reports[i - 1].good) closed = false;

    std::optional<DescentParams> descent;
    std::string descent_error;
    if (n > 24) {
        try {
            descent = descent_params(n);
        } catch (const Error& e) {
            if (e.code() != Errc::fault) throw;
            descent_error = e.what();
        }
    }

    Json good_k = Json::array();
    for (const auto& g : reports) good_k.push_back(to_json(g));
    Report r;
    r.command = "goodk";
    r.params = Json{{"n", n}};
    r.records.push_back(Json{{"n", n},
                             {"good_k", good_k},
                             {"halving_closed", closed},
                             {"descent", descent ? to_json(*descent) : Json(nullptr)}});
    r.elapsed_ms = elapsed_ms(start, o);
    const bool ok = closed && descent_error.empty();

    if (o.json) {
        print_json(r, out);
    } else {
        out << std::setw(10) << "k" << std::setw(12) << "f(k)" << std::setw(12) << "F(k)" << std::setw(6) << "pow2"
            << std::setw(7) << "<n/6" << std::setw(6) << "good" << '\n';
        for (const auto& g : reports)
            out << std::setw(10) << g.k << std::setw(12) << g.f_k << std::setw(12) << g.big_f_k << std::setw(6)
                << (g.is_pow2 ? "yes" : "no") << std::setw(7) << (g.below_sixth ? "yes" : "no") << std::setw(6)
                << (g.good ? "yes" : "no") << '\n';
        out << "good k:";
        for (const auto& g : reports)
            if (g.good) out << ' ' << g.k;
        out << '\n';
        if (descent) {
            out << "b = " << descent->b << ", k* = " << descent->k_star << ", chain = [";
            for (std::size_t i = 0; i < descent->chain.size(); ++i) out << (i ? ", " : "") << descent->chain[i];
            out << "], final_bound = " << descent->final_bound << " (n - final_bound = " << n - descent->final_bound
                << ")\n";
        } else if (n <= 24) {
            out << "descent bound needs n > 24\n";
        }
        if (!closed) out << "HALVING CLOSURE FAILED\n";
    }
    if (!descent_error.empty()) err << "error: " << descent_error << '\n';
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------
int cmd_witness(const Options& o, std::ostream& out, std::ostream&) {
    const auto start = Clock::now();
    if (o.n < 5 || !coprime6(o.n)) throw UsageError("--n must be at least 5 and coprime to 6");
    if (o.form != 6 && o.form != 4) throw UsageError("--form must be 6 or 4");
    const ExplicitForm form = o.form == 6 ? ExplicitForm::six : ExplicitForm::four;
    WitnessInterval interval;
    if (!o.interval.empty()) {
        if (o.interval.size() != 2 || o.interval[0] < 1 || o.interval[1] < 1)
            throw UsageError("--interval takes two positive divisors LO_DIV HI_DIV");
        interval = {o.interval[0], o.interval[1]};
    }
    const auto w = interval_witness(o.n, form, interval);
    // A unit is guaranteed only for n > 1000 with at least three prime factors.
    const bool guaranteed = o.n > 1000 && distinct_prime_factors(o.n) >= 3;
    const bool ok = w ? w->large_count == 3 : !guaranteed;

    Report r;
    r.command = "witness";
    r.params = Json{{"n", o.n}, {"form", o.form}, {"lo_div", interval.lo_div}, {"hi_div", interval.hi_div}};
    r.records.push_back(witness_to_json(o.n, form, interval, w));
    r.elapsed_ms = elapsed_ms(start, o);

    if (o.json) {
        print_json(r, out);
    } else {
        out << "form " << form_name(form) << " at n = " << o.n << ", interval (n/" << interval.lo_div << ", n/"
            << interval.hi_div << ")\n";
        if (w)
            out << "g = " << w->g << ", large residues = " << w->large_count << (ok ? "" : "  (expected 3)") << '\n';
        else
            out << "no unit in the interval" << (ok ? "" : "  (one is guaranteed here)") << '\n';
    }
    return ok ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// enumerate
// ---------------------------------------------------------------------------
int cmd_enumerate(const Options& o, std::ostream& out, std::ostream&) {
    const auto start = Clock::now();
    if (o.n < 5) throw UsageError("--n must be at least 5");
    Report r;
    r.command = "enumerate";
    r.params = Json{{"n", o.n}, {"orbits_only", o.orbits}};
    i64 count = 0;
    for_each_minimal(o.n, o.orbits, [&](const Quad& q) {
        ++count;
        if (o.json)
            r.records.push_back(Json{{"seq", Json::array({q[0], q[1], q[2], q[3]})}});
        else {
            print_tuple(out, q);
            out << '\n';
        }
    });
    r.elapsed_ms = elapsed_ms(start, o);
    if (o.json)
        print_json(r, out);
    else
        out << count << (o.orbits ? " orbit representatives" : " minimal zero-sum sequences") << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------------
// primes-check
// ---------------------------------------------------------------------------
int cmd_primes_check(const Options& o, std::ostream& out, std::ostream&) {
    const auto start = Clock::now();
    if (o.max < 2) throw UsageError("--max must be at least 2");
    const BertrandSweep sweep = bertrand_sweep(o.max);

    Report r;
    r.command = "primes-check";
    r.params = Json{{"max", o.max}};
    r.records.push_back(to_json(sweep));
    r.elapsed_ms = elapsed_ms(start, o);

    if (o.json) {
        print_json(r, out);
    } else {
        out << "checked N in [2, " << o.max << "]: " << sweep.checked << " values\n";
        out << "prime in (2N, 3N): " << (sweep.open_failures.empty() ? "always" : "MISSING") << '\n';
        out << "prime in [N+1, 3(N+1)/2): " << (sweep.half_open_failures.empty() ? "always" : "MISSING") << '\n';
        for (i64 N : sweep.open_failures) out << "  no prime in (2N, 3N) for N = " << N << '\n';
        for (i64 N : sweep.half_open_failures) out << "  no prime in [N+1, 3(N+1)/2) for N = " << N << '\n';
    }
    return sweep.ok() ? kExitOk : kExitCheckFailed;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Index computations and exhaustive checks for minimal zero-sum sequences over Z/n", "zsindex"};
    app.require_subcommand(1);
    Options o;

    auto add_output = [&](CLI::App* sub) {
        sub->add_flag("--json", o.json, "Emit the JSON report");
        sub->add_flag("--no-timing", o.no_timing, "Report elapsed times as 0 (reproducible output)");
    };
    auto add_range = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "Single modulus");
        sub->add_option("--range", o.range, "Moduli LO..HI inclusive")->expected(2);
        sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* index = app.add_subcommand("index", "Index and witness of one sequence");
    index->add_option("--n", o.n, "Modulus")->required();
    index->add_option("--seq", o.seq, "Elements, comma separated")->required();
    index->add_flag("--norms", o.norms, "Include the full norm table");
    add_output(index);

    auto* verify = app.add_subcommand("verify", "Check every length-4 minimal zero-sum sequence has index 1");
    add_range(verify);
    verify->add_option("--checkpoint", o.checkpoint, "Append-only ledger for resume");
    verify->add_flag("--csv", o.csv, "Emit one CSV row per modulus");
    add_output(verify);

    auto* singular = app.add_subcommand("singular", "Check every singular sequence has index 1");
    add_range(singular);
    add_output(singular);

    auto* goodk = app.add_subcommand("goodk", "Good powers of two and the descent bound");
    goodk->add_option("--n", o.n, "Modulus")->required();
    add_output(goodk);

    auto* witness = app.add_subcommand("witness", "Unit witness strictly between n/12 and n/8");
    witness->add_option("--n", o.n, "Modulus")->required();
    witness->add_option("--form", o.form, "6 for (1)(n-4)(n-3)(6), 4 for (1)(n-3)(n-2)(4)")->required();
    witness->add_option("--interval", o.interval, "Divisors LO_DIV HI_DIV of the interval (n/LO_DIV, n/HI_DIV)")
        ->expected(2);
    add_output(witness);

    auto* enumerate = app.add_subcommand("enumerate", "List minimal zero-sum sequences of length 4");
    enumerate->add_option("--n", o.n, "Modulus")->required();
    enumerate->add_flag("--orbits", o.orbits, "Only canonical unit-orbit representatives");
    add_output(enumerate);

    auto* primes = app.add_subcommand("primes-check", "Sieve check for primes in (2N, 3N) and [N+1, 3(N+1)/2)");
    primes->add_option("--max", o.max, "Largest N")->required();
    add_output(primes);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }

    try {
        if (*index) return cmd_index(o, out, err);
        if (*verify) return cmd_verify(o, out, err);
        if (*singular) return cmd_singular(o, out, err);
        if (*goodk) return cmd_goodk(o, out, err);
        if (*witness) return cmd_witness(o, out, err);
        if (*enumerate) return cmd_enumerate(o, out, err);
        if (*primes) return cmd_primes_check(o, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.code() == Errc::fault ? kExitCheckFailed : kExitUsage;
    }
    return kExitUsage;
}

} // namespace zsindex
