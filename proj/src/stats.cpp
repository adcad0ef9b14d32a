#include "kzero/stats.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "kzero/ec2.hpp"
#include "kzero/ec3.hpp"
#include "kzero/oracle.hpp"

namespace kzero {

namespace {

constexpr int kCap2 = 24;
constexpr int kCap3 = 13;

void check_args(int p, int n) {
    if (p != 2 && p != 3) throw Error("p must be 2 or 3");
    if (n < 1) throw Error("degree must be positive");
    if (p == 2 && n > kCap2)
        throw DegreeTooLarge("exhaustive scans for p = 2 are capped at n = " +
                             std::to_string(kCap2));
    if (p == 3 && n > kCap3)
        throw DegreeTooLarge("exhaustive scans for p = 3 are capped at n = " +
                             std::to_string(kCap3));
}

std::int64_t pow_int(int p, int n) {
    std::int64_t r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
}

// Run fn(first_index, last_index, worker_slot) over [1, count] split across
// workers; slots let callers merge associatively so the result does not
// depend on the worker count.
template <typename Fn>
void parallel_ranges(std::int64_t count, int workers, Fn fn) {
    workers = std::max(1, workers);
    workers = static_cast<int>(std::min<std::int64_t>(workers, count));
    if (workers == 1) {
        fn(std::int64_t(1), count + 1, 0);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        std::int64_t lo = 1 + count * w / workers;
        std::int64_t hi = 1 + count * (w + 1) / workers;
        pool.emplace_back([=] { fn(lo, hi, w); });
    }
    for (auto &t : pool) t.join();
}

std::vector<std::int64_t> height_histogram(int p, int n, int workers) {
    const std::int64_t count = pow_int(p, n) - 1;
    std::vector<std::vector<std::int64_t>> slots(
        std::max(1, std::min<int>(workers, static_cast<int>(count))),
        std::vector<std::int64_t>(n + 1, 0));
    if (p == 2) {
        FieldCtx2 F = setup_gf2(n);
        parallel_ranges(count, workers, [&](std::int64_t lo, std::int64_t hi, int slot) {
            auto &hist = slots[slot];
            for (std::int64_t i = lo; i < hi; ++i) {
                int h = ec2_sylow(F, gf2_from_index(F, static_cast<std::uint64_t>(i))).h;
                ++hist[std::min(h, n)];
            }
        });
    } else {
        FieldCtx3 F = setup_gf3(n);
        parallel_ranges(count, workers, [&](std::int64_t lo, std::int64_t hi, int slot) {
            auto &hist = slots[slot];
            for (std::int64_t i = lo; i < hi; ++i) {
                int h = ec3_sylow(F, gf3_from_index(F, static_cast<std::uint64_t>(i))).h;
                ++hist[std::min(h, n)];
            }
        });
    }
    std::vector<std::int64_t> hist(n + 1, 0);
    for (const auto &s : slots)
        for (int k = 0; k <= n; ++k) hist[k] += s[k];
    return hist;
}

} // namespace

DivisibilityRow divisibility_table(int p, int n, int workers) {
    check_args(p, n);
    std::vector<std::int64_t> hist = height_histogram(p, n, workers);
    DivisibilityRow row;
    row.p = p;
    row.n = n;
    row.counts.assign(n, 0);
    std::int64_t acc = 0;
    for (int k = n; k >= 1; --k) {
        acc += hist[k];
        row.counts[k - 1] = acc;
    }
    return row;
}

std::int64_t column4_closed_form(int n) {
    if (n < 1) throw Error("degree must be positive");
    if (n > 61) throw DegreeTooLarge("column4_closed_form is exact only up to n = 61");
    std::int64_t re = 1, im = 0;
    for (int k = 0; k < n; ++k) {
        std::int64_t nre = -re - im;
        std::int64_t nim = re - im;
        re = nre;
        im = nim;
    }
    return ((std::int64_t(1) << n) - 2 * re) / 4;
}

std::int64_t zero_count(int p, int n, int workers) {
    check_args(p, n);
    const std::int64_t count = pow_int(p, n) - 1;
    if (p == 2 && n == 1) {
        // no h = n criterion at n = 1; settle by the definition
        FieldCtx2 F = setup_gf2(1);
        std::int64_t z = 0;
        for (std::int64_t i = 1; i <= count; ++i)
            if (kloosterman_naive(F, gf2_from_index(F, static_cast<std::uint64_t>(i))) == 0) ++z;
        return z;
    }
    std::vector<std::int64_t> slots(std::max(1, std::min<int>(workers, static_cast<int>(count))), 0);
    if (p == 2) {
        FieldCtx2 F = setup_gf2(n);
        parallel_ranges(count, workers, [&](std::int64_t lo, std::int64_t hi, int slot) {
            for (std::int64_t i = lo; i < hi; ++i)
                if (ec2_is_zero(F, gf2_from_index(F, static_cast<std::uint64_t>(i)))) ++slots[slot];
        });
    } else {
        FieldCtx3 F = setup_gf3(n);
        parallel_ranges(count, workers, [&](std::int64_t lo, std::int64_t hi, int slot) {
            for (std::int64_t i = lo; i < hi; ++i)
                if (ec3_is_zero(F, gf3_from_index(F, static_cast<std::uint64_t>(i)))) ++slots[slot];
        });
    }
    std::int64_t z = 0;
    for (auto s : slots) z += s;
    return z;
}

HeightStats height_stats(int p, int n, std::int64_t samples, std::uint64_t seed) {
    if (p != 2 && p != 3) throw Error("p must be 2 or 3");
    if (samples < 1) throw Error("sample size must be >= 1");
    double sum = 0, sum2 = 0;
    SplitMix64 rng(seed);
    if (p == 2) {
        FieldCtx2 F = setup_gf2(n);
        for (std::int64_t i = 0; i < samples; ++i) {
            int h = ec2_sylow(F, gf2_random_nonzero(F, rng)).h;
            sum += h;
            sum2 += static_cast<double>(h) * h;
        }
    } else {
        FieldCtx3 F = setup_gf3(n);
        for (std::int64_t i = 0; i < samples; ++i) {
            int h = ec3_sylow(F, gf3_random_nonzero(F, rng)).h;
            sum += h;
            sum2 += static_cast<double>(h) * h;
        }
    }
    HeightStats s;
    s.mean = sum / static_cast<double>(samples);
    s.variance = sum2 / static_cast<double>(samples) - s.mean * s.mean;
    return s;
}

ExactHeightStats exact_height_stats(int p, int n, int workers) {
    DivisibilityRow row = divisibility_table(p, n, workers);
    ExactHeightStats s;
    s.population = pow_int(p, n) - 1;
    for (auto c : row.counts) s.height_sum += c;
    s.mean = static_cast<double>(s.height_sum) / static_cast<double>(s.population);
    double sum2 = 0;
    for (int k = 1; k <= n; ++k) {
        std::int64_t exact = row.counts[k - 1] - ((k < n) ? row.counts[k] : 0);
        sum2 += static_cast<double>(exact) * k * k;
    }
    s.variance = sum2 / static_cast<double>(s.population) - s.mean * s.mean;
    return s;
}

std::string table_csv(int p, int n_max, int workers) {
    check_args(p, n_max);
    std::ostringstream os;
    os << "p,n,k,count\n";
    for (int n = 1; n <= n_max; ++n) {
        DivisibilityRow row = divisibility_table(p, n, workers);
        for (int k = 1; k <= n; ++k)
            os << p << "," << n << "," << k << "," << row.counts[k - 1] << "\n";
    }
    return os.str();
}

std::string table_json(int p, int n_max, int workers) {
    check_args(p, n_max);
    nlohmann::json arr = nlohmann::json::array();
    for (int n = 1; n <= n_max; ++n) {
        DivisibilityRow row = divisibility_table(p, n, workers);
        for (int k = 1; k <= n; ++k)
            arr.push_back({{"p", p}, {"n", n}, {"k", k}, {"count", row.counts[k - 1]}});
    }
    return arr.dump(2) + "\n";
}

} // namespace kzero
