#include "kzero/cli.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>
#include <vector>

#include "kzero/ec2.hpp"
#include "kzero/ec3.hpp"
#include "kzero/oracle.hpp"
#include "kzero/stats.hpp"

namespace kzero::cli {

namespace {

struct Ctx {
    int p = 0;
    std::optional<FieldCtx2> f2;
    std::optional<FieldCtx3> f3;
};

Ctx acquire_ctx(const RunConfig &cfg) {
    Ctx c;
    if (!cfg.ctx_path.empty()) {
        std::ifstream in(cfg.ctx_path);
        if (!in) throw IOError("cannot open context file " + cfg.ctx_path);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string record = buf.str();
        // sniff the characteristic from the first record line
        if (record.rfind("p=2", 0) == 0) {
            c.p = 2;
            c.f2 = fieldctx2_from_record(record);
        } else if (record.rfind("p=3", 0) == 0) {
            c.p = 3;
            c.f3 = fieldctx3_from_record(record);
        } else {
            throw ParseError("context file must start with p=2 or p=3");
        }
        return c;
    }
    if (cfg.p != 2 && cfg.p != 3) throw ParseError("p must be 2 or 3");
    if (cfg.n < 1) throw ParseError("a positive degree -n is required");
    c.p = cfg.p;
    if (c.p == 2) c.f2 = setup_gf2(cfg.n);
    else c.f3 = setup_gf3(cfg.n);
    return c;
}

void write_output(const RunConfig &cfg, const std::string &text, std::ostream &out) {
    if (cfg.output_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.output_path, std::ios::binary | std::ios::trunc);
    if (!f) throw IOError("cannot open " + cfg.output_path + " for writing");
    f << text;
    if (!f) throw IOError("write to " + cfg.output_path + " failed");
}

int cmd_setup(const RunConfig &cfg, std::ostream &out) {
    if (cfg.p != 2 && cfg.p != 3) throw ParseError("p must be 2 or 3");
    if (cfg.n < 1) throw ParseError("a positive degree -n is required");
    std::string record =
        (cfg.p == 2) ? fieldctx2_to_record(setup_gf2(cfg.n)) : fieldctx3_to_record(setup_gf3(cfg.n));
    write_output(cfg, record, out);
    return 0;
}

int cmd_test(const RunConfig &cfg, std::ostream &out) {
    Ctx c = acquire_ctx(cfg);
    if (cfg.element.empty()) throw ParseError("an element -a is required");
    bool zero = false;
    bool fallback = false;
    if (c.p == 2) {
        const FieldCtx2 &F = *c.f2;
        Gf2El a = gf2_from_hex(F, cfg.element);
        if (a.is_zero()) throw ZeroArgument();
        SylowResult2 r = ec2_sylow(F, a);
        zero = ec2_is_zero(F, a); // throws UnsupportedDegree at n = 1
        out << "h=" << r.h << "\n";
        out << "generator=(" << gf2_to_hex(F, r.generator.x) << ","
            << gf2_to_hex(F, r.generator.y) << ")\n";
    } else {
        const FieldCtx3 &F = *c.f3;
        Gf3El a = gf3_from_trits(F, cfg.element);
        if (a.is_zero()) throw ZeroArgument();
        SylowResult3 r = ec3_sylow(F, a);
        zero = ec3_is_zero(F, a);
        fallback = (F.n == 1);
        out << "h=" << r.h << "\n";
        out << "generator=(" << gf3_to_trits(F, r.generator.x) << ","
            << gf3_to_trits(F, r.generator.y) << ")\n";
    }
    out << (zero ? "ZERO" : "NONZERO") << (fallback ? " (naive fallback)" : "") << "\n";
    return zero ? 0 : 1;
}

// Deterministic parallel search: worker w draws from the stream seed^w and
// owns the global trial indices w, w+W, w+2W, ...; the hit with the lowest
// global index wins, so the outcome depends only on (seed, workers).
struct SearchHit {
    std::uint64_t trial = ~std::uint64_t(0);
    std::string element;
};

template <typename DrawFn, typename TestFn>
std::optional<SearchHit> search_loop(const RunConfig &cfg, DrawFn draw, TestFn test) {
    const int W = std::max(1, cfg.workers);
    std::atomic<std::uint64_t> best_trial{~std::uint64_t(0)};
    std::mutex best_mutex;
    SearchHit best;
    auto worker = [&](int w) {
        SplitMix64 rng(cfg.seed ^ static_cast<std::uint64_t>(w));
        for (std::uint64_t trial = static_cast<std::uint64_t>(w);; trial += W) {
            if (trial >= cfg.max_trials) return;
            if (trial >= best_trial.load(std::memory_order_relaxed)) return;
            std::string el = draw(rng);
            if (test(el)) {
                std::lock_guard<std::mutex> lock(best_mutex);
                if (trial < best.trial) {
                    best.trial = trial;
                    best.element = el;
                    best_trial.store(trial, std::memory_order_relaxed);
                }
                return;
            }
        }
    };
    if (W == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < W; ++w) pool.emplace_back(worker, w);
        for (auto &t : pool) t.join();
    }
    if (best.trial == ~std::uint64_t(0)) return std::nullopt;
    return best;
}

int cmd_search(const RunConfig &cfg, std::ostream &out) {
    Ctx c = acquire_ctx(cfg);
    std::optional<SearchHit> hit;
    int n = (c.p == 2) ? c.f2->n : c.f3->n;
    if (n < 2) throw ParseError("search requires n >= 2");
    if (c.p == 2) {
        const FieldCtx2 &F = *c.f2;
        hit = search_loop(
            cfg, [&](SplitMix64 &rng) { return gf2_to_hex(F, gf2_random_nonzero(F, rng)); },
            [&](const std::string &el) {
                Gf2El a = gf2_from_hex(F, el);
                SylowResult2 r = ec2_sylow(F, a);
                if (r.h != F.n) return false;
                // independent certification: the generator has order 2^n
                Ec2Point q = ec2_pow2(F, a, r.generator, F.n - 1);
                return !q.infinity && ec2_double(F, a, q).infinity;
            });
    } else {
        const FieldCtx3 &F = *c.f3;
        hit = search_loop(
            cfg, [&](SplitMix64 &rng) { return gf3_to_trits(F, gf3_random_nonzero(F, rng)); },
            [&](const std::string &el) {
                Gf3El a = gf3_from_trits(F, el);
                SylowResult3 r = ec3_sylow(F, a);
                if (r.h != F.n) return false;
                Point3 q = ec3_pow3(F, a, r.generator, F.n - 1);
                return !q.infinity && ec3_triple(F, a, q).infinity;
            });
    }
    if (!hit) {
        out << "EXHAUSTED trials=" << cfg.max_trials << "\n";
        return 1;
    }
    out << "found=" << hit->element << "\n";
    out << "trial=" << hit->trial << "\n";
    out << "verified=1\n";
    return 0;
}

int cmd_table(const RunConfig &cfg, std::ostream &out) {
    if (cfg.n_max < 1) throw ParseError("a positive --n-max is required");
    std::string text;
    if (cfg.format == "csv") text = table_csv(cfg.p, cfg.n_max, cfg.workers);
    else if (cfg.format == "json") text = table_json(cfg.p, cfg.n_max, cfg.workers);
    else throw ParseError("format must be csv or json");
    write_output(cfg, text, out);
    return 0;
}

int cmd_bench(const RunConfig &cfg, std::ostream &out) {
    if (cfg.samples < 1) throw ParseError("samples must be >= 1");
    Ctx c = acquire_ctx(cfg);
    using clock = std::chrono::steady_clock;
    auto us_per = [&](clock::time_point t0, clock::time_point t1) {
        return std::chrono::duration<double, std::micro>(t1 - t0).count() /
               static_cast<double>(cfg.samples);
    };
    double sum_h = 0;
    std::int64_t hits_full = 0, hits_pre = 0;
    double t_sylow, t_full, t_pre;
    int offset;
    if (c.p == 2) {
        const FieldCtx2 &F = *c.f2;
        offset = 2;
        SplitMix64 rng(cfg.seed);
        std::vector<Gf2El> draws(cfg.samples);
        for (auto &a : draws) a = gf2_random_nonzero(F, rng);
        auto t0 = clock::now();
        for (const auto &a : draws) sum_h += ec2_sylow(F, a).h;
        auto t1 = clock::now();
        for (std::int64_t i = 0; i < cfg.samples; ++i)
            hits_full += ec2_lisonek_test(F, draws[i], cfg.seed + static_cast<std::uint64_t>(i));
        auto t2 = clock::now();
        for (std::int64_t i = 0; i < cfg.samples; ++i) {
            if (gf2_trace(F, draws[i]) != 0) continue; // h = 2 < n: cannot be a zero
            hits_pre += ec2_lisonek_test(F, draws[i], cfg.seed + static_cast<std::uint64_t>(i));
        }
        auto t3 = clock::now();
        t_sylow = us_per(t0, t1);
        t_full = us_per(t1, t2);
        t_pre = us_per(t2, t3);
    } else {
        const FieldCtx3 &F = *c.f3;
        offset = 1;
        SplitMix64 rng(cfg.seed);
        std::vector<Gf3El> draws(cfg.samples);
        for (auto &a : draws) a = gf3_random_nonzero(F, rng);
        auto t0 = clock::now();
        for (const auto &a : draws) sum_h += ec3_sylow(F, a).h;
        auto t1 = clock::now();
        for (std::int64_t i = 0; i < cfg.samples; ++i)
            hits_full += ec3_lisonek_test(F, draws[i], cfg.seed + static_cast<std::uint64_t>(i));
        auto t2 = clock::now();
        for (std::int64_t i = 0; i < cfg.samples; ++i) {
            if (gf3_trace(F, draws[i]) != 0) continue; // h = 1 < n: cannot be a zero
            hits_pre += ec3_lisonek_test(F, draws[i], cfg.seed + static_cast<std::uint64_t>(i));
        }
        auto t3 = clock::now();
        t_sylow = us_per(t0, t1);
        t_full = us_per(t1, t2);
        t_pre = us_per(t2, t3);
    }
    double mean_iter = sum_h / static_cast<double>(cfg.samples) - offset;
    out << "samples=" << cfg.samples << "\n";
    out << std::fixed << std::setprecision(4);
    out << "mean_iterations=" << mean_iter << "\n";
    out << "zero_certifications_full=" << hits_full << "\n";
    out << "zero_certifications_precheck=" << hits_pre << "\n";
    out << "timing sylow_us_per_element=" << t_sylow << "\n";
    out << "timing lisonek_us_per_element=" << t_full << "\n";
    out << "timing lisonek_precheck_us_per_element=" << t_pre << "\n";
    out << "timing speedup_full=" << (t_full / t_sylow) << "\n";
    out << "timing speedup_precheck=" << (t_pre / t_sylow) << "\n";
    return 0;
}

} // namespace

int run(const RunConfig &cfg, std::ostream &out, std::ostream &err) {
    try {
        if (cfg.command == "setup") return cmd_setup(cfg, out);
        if (cfg.command == "test") return cmd_test(cfg, out);
        if (cfg.command == "search") return cmd_search(cfg, out);
        if (cfg.command == "table") return cmd_table(cfg, out);
        if (cfg.command == "bench") return cmd_bench(cfg, out);
        err << "error: unknown command '" << cfg.command << "'\n";
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace kzero::cli
