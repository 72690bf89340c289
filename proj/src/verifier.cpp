#include "zsindex/verifier.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "zsindex/error.hpp"
#include "zsindex/report.hpp"

namespace zsindex {

namespace {

Quad sorted_image(const Quad& q, i64 u, i64 n) {
    Quad out{u * q[0] % n, u * q[1] % n, u * q[2] % n, u * q[3] % n};
    std::sort(out.begin(), out.end());
    return out;
}

// Units u with u * from == to (mod n), where gcd(from, n) = gcd(to, n) = d.
template <typename Fn>
void for_each_unit_mapping(i64 from, i64 to, i64 d, const ModulusTables& t, Fn&& fn) {
    const i64 n = t.n();
    if (d == 1) {
        fn(t.inverse_of(from) * to % n);
        return;
    }
    const i64 m = n / d;
    const i64 base = mod_inverse(from / d, m) * (to / d) % m;
    for (i64 u = base; u < n; u += m)
        if (t.is_unit(u)) fn(u);
}

std::vector<i64> proper_divisors(i64 n) {
    std::vector<i64> out;
    for (i64 d = 1; d < n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

void require_search_modulus(i64 n) {
    if (n < 5)
        throw Error(Errc::unsupported_modulus, "modulus " + std::to_string(n) + " is below 5");
}

// Canonicity only; stops at the first unit producing a smaller image.
bool is_canonical(const Quad& q, const ModulusTables& t) {
    const i64 n = t.n();
    const i64 d = q[0];
    for (std::size_t i = 0; i < 4; ++i) {
        if (t.gcd_with_n(q[i]) != d || (i > 0 && q[i] == q[i - 1])) continue;
        bool smaller = false;
        for_each_unit_mapping(q[i], d, d, t, [&](i64 u) {
            if (!smaller && sorted_image(q, u, n) < q) smaller = true;
        });
        if (smaller) return false;
    }
    return true;
}

// |{u : sorted(u q) = q}| for a sorted quadruple. Any such u sends an
// element of least gcd with n onto another one.
i64 stabilizer_size(const Quad& q, const ModulusTables& t) {
    const i64 n = t.n();
    const auto least = std::min_element(q.begin(), q.end(), [&](i64 a, i64 b) {
        return t.gcd_with_n(a) < t.gcd_with_n(b);
    });
    const i64 anchor = *least;
    const i64 d = t.gcd_with_n(anchor);
    i64 count = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (t.gcd_with_n(q[i]) != d || (i > 0 && q[i] == q[i - 1])) continue;
        for_each_unit_mapping(anchor, q[i], d, t, [&](i64 u) {
            if (sorted_image(q, u, n) == q) ++count;
        });
    }
    return count;
}

void enumerate_all(i64 n, const std::function<void(const Quad&)>& sink) {
    for (i64 x1 = 1; 4 * x1 <= 3 * n; ++x1) {
        for (i64 x2 = x1; x2 <= n - 1 && x1 + 3 * x2 <= 3 * n; ++x2) {
            if ((x1 + x2) % n == 0) continue;
            for (i64 x3 = x2; x3 <= n - 1 && x1 + x2 + 2 * x3 <= 3 * n; ++x3) {
                if ((x1 + x3) % n == 0 || (x2 + x3) % n == 0) continue;
                const i64 s3 = x1 + x2 + x3;
                for (i64 target = n; target <= 3 * n; target += n) {
                    const i64 x4 = target - s3;
                    if (x4 < x3) continue;
                    if (x4 > n - 1) break;
                    sink(Quad{x1, x2, x3, x4});
                }
            }
        }
    }
}

// Canonical representatives only. The least element of a representative is
// the least gcd(x_i, n) over its orbit, so x1 runs over divisors of n and
// every other element must have gcd with n at least x1.
void enumerate_canonical(const ModulusTables& t, const std::function<void(const Quad&)>& sink) {
    const i64 n = t.n();
    for (i64 x1 : proper_divisors(n)) {
        if (4 * x1 > 3 * n) break;
        for (i64 x2 = x1; x2 <= n - 1 && x1 + 3 * x2 <= 3 * n; ++x2) {
            if (t.gcd_with_n(x2) < x1 || (x1 + x2) % n == 0) continue;
            for (i64 x3 = x2; x3 <= n - 1 && x1 + x2 + 2 * x3 <= 3 * n; ++x3) {
                if (t.gcd_with_n(x3) < x1 || (x1 + x3) % n == 0 || (x2 + x3) % n == 0) continue;
                const i64 s3 = x1 + x2 + x3;
                for (i64 target = n; target <= 3 * n; target += n) {
                    const i64 x4 = target - s3;
                    if (x4 < x3) continue;
                    if (x4 > n - 1) break;
                    if (t.gcd_with_n(x4) < x1) continue;
                    const Quad q{x1, x2, x3, x4};
                    if (is_canonical(q, t)) sink(q);
                }
            }
        }
    }
}

} // namespace

void for_each_minimal(i64 n, bool orbits_only, const std::function<void(const Quad&)>& sink) {
    require_search_modulus(n);
    if (!orbits_only) {
        enumerate_all(n, sink);
        return;
    }
    const ModulusTables tables(n);
    enumerate_canonical(tables, sink);
}

std::vector<ZsSeq> enumerate_minimal(i64 n, bool orbits_only) {
    const GroupContext ctx(n);
    std::vector<ZsSeq> out;
    for_each_minimal(n, orbits_only, [&](const Quad& q) {
        out.emplace_back(ctx, std::vector<i64>(q.begin(), q.end()));
    });
    return out;
}

OrbitInfo orbit_info(const Quad& sorted, const ModulusTables& tables) {
    i64 d = tables.n();
    for (i64 x : sorted) d = std::min(d, tables.gcd_with_n(x));
    OrbitInfo info;
    info.canonical = sorted[0] == d && is_canonical(sorted, tables);
    info.orbit_size = static_cast<i64>(tables.generators().size()) / stabilizer_size(sorted, tables);
    return info;
}

VerifyRecord verify_n(i64 n) {
    require_search_modulus(n);
    const auto start = std::chrono::steady_clock::now();
    const ModulusTables tables(n);
    const auto phi = static_cast<i64>(tables.generators().size());

    VerifyRecord rec;
    rec.n = n;
    enumerate_canonical(tables, [&](const Quad& q) {
        ++rec.orbit_count;
        rec.total_minimal += phi / stabilizer_size(q, tables);
        const QuadIndex idx = quad_index(q, tables);
        rec.max_index = std::max(rec.max_index, idx.index);
        if (idx.index >= 2) rec.index2_examples.push_back({q, idx.witness, quad_norms(q, tables)});
    });
    rec.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return rec;
}

bool RangeResult::any_index2() const {
    return std::any_of(records.begin(), records.end(),
                       [](const VerifyRecord& r) { return !r.index2_examples.empty(); });
}

namespace {

class Ledger {
public:
    explicit Ledger(const std::filesystem::path& path) : path_(path) {
        fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND, 0644);
        if (fd_ < 0)
            throw Error(Errc::io, "cannot open checkpoint " + path.string() + ": " + std::strerror(errno));
        // A torn final line from an interrupted run must not swallow the next record.
        std::ifstream in(path, std::ios::binary | std::ios::ate);
        if (in && in.tellg() > 0) {
            in.seekg(-1, std::ios::end);
            if (in.get() != '\n') write_raw("\n");
        }
    }
    Ledger(const Ledger&) = delete;
    Ledger& operator=(const Ledger&) = delete;
    ~Ledger() {
        if (fd_ >= 0) ::close(fd_);
    }

    // One write() per record so every line lands whole.
    void append(const VerifyRecord& rec) {
        write_raw(ledger_line(rec) + "\n");
    }

private:
    void write_raw(const std::string& text) {
        const ssize_t written = ::write(fd_, text.data(), text.size());
        if (written != static_cast<ssize_t>(text.size()))
            throw Error(Errc::io, "short write to checkpoint " + path_.string());
    }

    std::filesystem::path path_;
    int fd_ = -1;
};

std::map<i64, VerifyRecord> load_ledger(const std::filesystem::path& path,
                                        std::vector<std::string>& corrupt) {
    std::map<i64, VerifyRecord> done;
    std::ifstream in(path);
    if (!in) return done;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            VerifyRecord rec = parse_ledger_line(line);
            done.emplace(rec.n, std::move(rec));
        } catch (const std::exception&) {
            corrupt.push_back(line);
        }
    }
    return done;
}

} // namespace

RangeResult verify_range(i64 lo, i64 hi, const RangeOptions& options) {
    if (lo < 5 || hi < lo)
        throw Error(Errc::domain, "range must satisfy 5 <= lo <= hi, got [" + std::to_string(lo) + ", " +
                                      std::to_string(hi) + "]");
    RangeResult result;
    std::map<i64, VerifyRecord> done;
    std::optional<Ledger> ledger;
    if (options.checkpoint) {
        done = load_ledger(*options.checkpoint, result.corrupt_lines);
        ledger.emplace(*options.checkpoint);
    }

    std::vector<i64> todo;
    for (i64 n = lo; n <= hi; ++n) {
        if (n % 2 == 0 || n % 3 == 0) continue;
        if (auto it = done.find(n); it != done.end()) {
            result.resumed.push_back(n);
            result.records.push_back(it->second);
        } else {
            todo.push_back(n);
        }
    }
    // Largest moduli first: per-n cost grows quickly with n.
    std::reverse(todo.begin(), todo.end());

    std::vector<VerifyRecord> fresh(todo.size());
    std::atomic<std::size_t> next{0};
    std::mutex ledger_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto work = [&] {
        try {
            for (std::size_t i = next++; i < todo.size(); i = next++) {
                VerifyRecord rec = verify_n(todo[i]);
                if (!options.record_timing) rec.elapsed_ms = 0;
                if (ledger) {
                    std::lock_guard lock(ledger_mutex);
                    ledger->append(rec);
                }
                fresh[i] = std::move(rec);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = todo.size();
        }
    };

    const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, todo.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    result.verified = static_cast<i64>(fresh.size());
    for (auto& rec : fresh) result.records.push_back(std::move(rec));
    std::sort(result.records.begin(), result.records.end(),
              [](const VerifyRecord& a, const VerifyRecord& b) { return a.n < b.n; });
    return result;
}

} // namespace zsindex
