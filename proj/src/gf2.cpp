#include "kzero/gf2.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstring>
#include <sstream>

namespace kzero {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

constexpr int kW = kGf2Words;
constexpr int kMW = kGf2ModWords;
constexpr int kSW = 2 * kGf2ModWords; // scratch for products / squarings

inline bool get_bit(const u64 *w, int i) { return (w[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(u64 *w, int i) { w[i >> 6] |= u64(1) << (i & 63); }

int top_bit(const u64 *w, int words) {
    for (int j = words - 1; j >= 0; --j)
        if (w[j]) return j * 64 + 63 - std::countl_zero(w[j]);
    return -1;
}

// dst ^= src << shift; src has src_words active words. dst must have room for
// the shifted value (the guarded carry write never lands on a live bit
// beyond it).
void xor_shl(u64 *dst, const u64 *src, int src_words, int shift) {
    const int ws = shift >> 6, bs = shift & 63;
    if (bs == 0) {
        for (int j = 0; j < src_words; ++j) dst[j + ws] ^= src[j];
    } else {
        u64 carry = 0;
        for (int j = 0; j < src_words; ++j) {
            dst[j + ws] ^= (src[j] << bs) | carry;
            carry = src[j] >> (64 - bs);
        }
        if (carry) dst[src_words + ws] ^= carry;
    }
}

inline int word_count(int degree) { return (degree >> 6) + 1; }

// Single descending pass: clearing bit d only introduces bits below d.
void poly_reduce(u64 *acc, int acc_words, const u64 *f, int df) {
    const int fw = word_count(df);
    for (int d = top_bit(acc, acc_words); d >= df; --d)
        if (get_bit(acc, d)) xor_shl(acc, f, fw, d - df);
}

inline u64 spread32(u32 x) {
    u64 v = x;
    v = (v | (v << 16)) & 0x0000FFFF0000FFFFULL;
    v = (v | (v << 8)) & 0x00FF00FF00FF00FFULL;
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0FULL;
    v = (v | (v << 2)) & 0x3333333333333333ULL;
    v = (v | (v << 1)) & 0x5555555555555555ULL;
    return v;
}

inline u32 compress_even(u64 x) {
    x &= 0x5555555555555555ULL;
    x = (x | (x >> 1)) & 0x3333333333333333ULL;
    x = (x | (x >> 2)) & 0x0F0F0F0F0F0F0F0FULL;
    x = (x | (x >> 4)) & 0x00FF00FF00FF00FFULL;
    x = (x | (x >> 8)) & 0x0000FFFF0000FFFFULL;
    x = (x | (x >> 16)) & 0x00000000FFFFFFFFULL;
    return static_cast<u32>(x);
}

void poly_sqmod(u64 *r, const u64 *a, const u64 *f, int df) {
    u64 acc[kSW] = {};
    for (int j = 0; j < kMW; ++j) {
        acc[2 * j] = spread32(static_cast<u32>(a[j]));
        acc[2 * j + 1] = spread32(static_cast<u32>(a[j] >> 32));
    }
    poly_reduce(acc, kSW, f, df);
    std::memcpy(r, acc, kMW * sizeof(u64));
}

// Degree of gcd(A, B); both operands are clobbered.
int poly_gcd_degree(u64 *a, u64 *b) {
    int da = top_bit(a, kMW), db = top_bit(b, kMW);
    while (true) {
        if (db < 0) return da;
        if (da < db) {
            std::swap_ranges(a, a + kMW, b);
            std::swap(da, db);
            continue;
        }
        xor_shl(a, b, word_count(db), da - db);
        da = top_bit(a, kMW);
        if (da < 0) return db;
    }
}

// Rabin's test: f (monic, degree n) is irreducible over F_2 iff
// x^(2^n) == x (mod f) and gcd(x^(2^(n/q)) - x, f) = 1 for every prime q | n.
bool rabin2(const Gf2Mod &f, int n) {
    if (n == 1) return true;
    if (!(f[0] & 1)) return false; // divisible by t
    std::vector<int> checkpoints;
    int m = n;
    for (int q = 2; q * q <= m; ++q) {
        if (m % q == 0) {
            checkpoints.push_back(n / q);
            while (m % q == 0) m /= q;
        }
    }
    if (m > 1) checkpoints.push_back(n / m);
    std::sort(checkpoints.begin(), checkpoints.end());

    u64 h[kMW] = {};
    set_bit(h, 1); // the polynomial x
    std::size_t next_cp = 0;
    for (int k = 1; k <= n; ++k) {
        poly_sqmod(h, h, f.data(), n);
        if (next_cp < checkpoints.size() && k == checkpoints[next_cp]) {
            ++next_cp;
            u64 g1[kMW], g2[kMW];
            std::memcpy(g1, h, sizeof(g1));
            g1[0] ^= 2; // h - x
            std::memcpy(g2, f.data(), sizeof(g2));
            if (poly_gcd_degree(g1, g2) > 0) return false;
        }
    }
    u64 x[kMW] = {};
    set_bit(x, 1);
    return std::memcmp(h, x, sizeof(x)) == 0;
}

// Minimal-weight then lexicographically-smallest irreducible of degree n.
// Weight class w fixes bit n, bit 0 (except the degree-one candidate t) and
// w-2 middle bits; colex enumeration of the middle-bit subsets is exactly
// ascending order of the packed encoding.
Gf2Mod find_modulus2(int n) {
    {
        Gf2Mod cand{};
        set_bit(cand.data(), n);
        if (n == 1) return cand; // t itself, weight 1
    }
    for (int w = 2; w <= n + 1; ++w) {
        const int m = w - 2;
        if (m > n - 1) break;
        std::vector<int> pos(m);
        for (int i = 0; i < m; ++i) pos[i] = i + 1;
        while (true) {
            Gf2Mod cand{};
            set_bit(cand.data(), n);
            set_bit(cand.data(), 0);
            for (int p : pos) set_bit(cand.data(), p);
            if (rabin2(cand, n)) return cand;
            // colex successor
            int i = 0;
            while (i < m) {
                int limit = (i + 1 < m) ? pos[i + 1] : n;
                if (pos[i] + 1 < limit) break;
                ++i;
            }
            if (i == m) break;
            ++pos[i];
            for (int j = 0; j < i; ++j) pos[j] = j + 1;
        }
    }
    throw Error("no irreducible polynomial found (degree " + std::to_string(n) + ")");
}

void field_reduce(const FieldCtx2 &F, u64 *acc) {
    const u64 *m = F.modulus.data();
    const int mw = word_count(F.n);
    for (int d = 2 * F.n - 2; d >= F.n; --d)
        if (get_bit(acc, d)) xor_shl(acc, m, mw, d - F.n);
}

void build_trace_mask(FieldCtx2 &F) {
    F.trace_mask = {};
    for (int i = 0; i < F.n; ++i) {
        Gf2El y = gf2_basis(F, i);
        Gf2El s = y;
        for (int k = 1; k < F.n; ++k) {
            y = gf2_square(F, y);
            s = gf2_add(s, y);
        }
        if (s == gf2_one()) {
            set_bit(F.trace_mask.data(), i);
        } else if (!s.is_zero()) {
            throw Error("trace power sum is not 0 or 1; modulus not irreducible?");
        }
    }
}

// sqrt_t and the quadratic-solver table. The table entry for t^i is the
// explicit linear solution built from delta-power suffix sums, so that
// ht[i]^2 + ht[i] = t^i + Tr(t^i)*delta holds for every basis element and
// the table combination solves u^2 + u = c exactly on the trace-zero set.
void build_derived(FieldCtx2 &F) {
    if (F.n >= 2) {
        Gf2El y = gf2_basis(F, 1);
        for (int k = 1; k < F.n; ++k) y = gf2_square(F, y);
        F.sqrt_t = y;
    } else {
        F.sqrt_t = gf2_zero();
    }

    const int n = F.n;
    std::vector<Gf2El> dpow(n); // delta^(2^j)
    dpow[0] = F.delta;
    for (int j = 1; j < n; ++j) dpow[j] = gf2_square(F, dpow[j - 1]);
    std::vector<Gf2El> suffix(n); // suffix[i] = sum_{j>i} dpow[j], i in [0, n-2]
    if (n >= 2) {
        suffix[n - 2] = dpow[n - 1];
        for (int i = n - 3; i >= 0; --i) suffix[i] = gf2_add(suffix[i + 1], dpow[i + 1]);
    }

    F.ht_table.assign(n, Gf2El{});
    for (int k = 0; k < n; ++k) {
        Gf2El acc = gf2_zero();
        Gf2El y = gf2_basis(F, k);
        for (int i = 0; i <= n - 2; ++i) {
            acc = gf2_add(acc, gf2_mul(F, suffix[i], y));
            y = gf2_square(F, y);
        }
        F.ht_table[k] = acc;
    }
}

std::string words_to_hex(const u64 *w, int words) {
    int top = top_bit(w, words);
    if (top < 0) return "0";
    std::ostringstream os;
    os << std::hex;
    bool leading = true;
    for (int j = words - 1; j >= 0; --j) {
        if (leading) {
            if (w[j] == 0) continue;
            os << w[j];
            leading = false;
        } else {
            os.width(16);
            os.fill('0');
            os << w[j];
        }
    }
    return os.str();
}

void hex_to_words(const std::string &hex, u64 *w, int words) {
    if (hex.empty()) throw ParseError("empty hex string");
    if (static_cast<int>(hex.size()) > words * 16) throw ParseError("hex string too long");
    std::fill(w, w + words, 0);
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw ParseError(std::string("invalid hex character '") + c + "'");
        // shift left by 4 and add
        u64 carry = v;
        for (int j = 0; j < words; ++j) {
            u64 nc = w[j] >> 60;
            w[j] = (w[j] << 4) | carry;
            carry = nc;
        }
        if (carry) throw ParseError("hex value too large");
    }
}

} // namespace

Gf2El gf2_zero() { return Gf2El{}; }

Gf2El gf2_one() {
    Gf2El r;
    r.w[0] = 1;
    return r;
}

Gf2El gf2_basis(const FieldCtx2 &F, int i) {
    if (i < 0 || i >= F.n) throw Error("basis index out of range");
    Gf2El r;
    set_bit(r.w.data(), i);
    return r;
}

Gf2El gf2_add(const Gf2El &a, const Gf2El &b) {
    Gf2El r;
    for (int j = 0; j < kW; ++j) r.w[j] = a.w[j] ^ b.w[j];
    return r;
}

Gf2El gf2_mul(const FieldCtx2 &F, const Gf2El &a, const Gf2El &b) {
    const int dw = 2 * F.words;
    u64 acc[2 * kW] = {};
    u64 sh[2 * kW] = {};
    std::memcpy(sh, b.w.data(), F.words * sizeof(u64));
    for (int i = 0; i < F.n; ++i) {
        if (get_bit(a.w.data(), i))
            for (int j = 0; j < dw; ++j) acc[j] ^= sh[j];
        u64 carry = 0;
        for (int j = 0; j < dw; ++j) {
            u64 nc = sh[j] >> 63;
            sh[j] = (sh[j] << 1) | carry;
            carry = nc;
        }
    }
    field_reduce(F, acc);
    Gf2El r;
    std::memcpy(r.w.data(), acc, F.words * sizeof(u64));
    return r;
}

Gf2El gf2_square(const FieldCtx2 &F, const Gf2El &a) {
    u64 acc[2 * kW] = {};
    for (int j = 0; j < F.words; ++j) {
        acc[2 * j] = spread32(static_cast<u32>(a.w[j]));
        acc[2 * j + 1] = spread32(static_cast<u32>(a.w[j] >> 32));
    }
    field_reduce(F, acc);
    Gf2El r;
    std::memcpy(r.w.data(), acc, F.words * sizeof(u64));
    return r;
}

Gf2El gf2_sqrt(const FieldCtx2 &F, const Gf2El &a) {
    // Split a = ae(t^2) + t*ao(t^2); then sqrt(a) = ae(t) + sqrt(t)*ao(t).
    Gf2El ae, ao;
    for (int j = 0; j < F.words; ++j) {
        u64 e = compress_even(a.w[j]);
        u64 o = compress_even(a.w[j] >> 1);
        ae.w[j >> 1] |= e << (32 * (j & 1));
        ao.w[j >> 1] |= o << (32 * (j & 1));
    }
    return gf2_add(ae, gf2_mul(F, ao, F.sqrt_t));
}

Gf2El gf2_inv(const FieldCtx2 &F, const Gf2El &a) {
    if (a.is_zero()) throw ZeroInversion();
    u64 u[kMW] = {}, v[kMW] = {}, g1[kMW] = {}, g2[kMW] = {};
    std::memcpy(u, a.w.data(), kW * sizeof(u64));
    std::memcpy(v, F.modulus.data(), kMW * sizeof(u64));
    g1[0] = 1;
    const int mw = word_count(F.n);
    int du = top_bit(u, mw), dv = F.n;
    while (du > 0) {
        int j = du - dv;
        if (j < 0) {
            std::swap_ranges(u, u + kMW, v);
            std::swap_ranges(g1, g1 + kMW, g2);
            std::swap(du, dv);
            j = -j;
        }
        xor_shl(u, v, word_count(dv), j);
        int dg2 = top_bit(g2, kMW);
        if (dg2 >= 0) xor_shl(g1, g2, word_count(dg2), j);
        du = top_bit(u, mw);
        if (du < 0) throw Error("gf2_inv: operand shares a factor with the modulus");
    }
    int dg = top_bit(g1, kMW);
    while (dg >= F.n) {
        xor_shl(g1, F.modulus.data(), word_count(F.n), dg - F.n);
        dg = top_bit(g1, kMW);
    }
    Gf2El r;
    std::memcpy(r.w.data(), g1, kW * sizeof(u64));
    return r;
}

int gf2_trace(const FieldCtx2 &F, const Gf2El &a) {
    u64 acc = 0;
    for (int j = 0; j < F.words; ++j) acc ^= a.w[j] & F.trace_mask[j];
    return std::popcount(acc) & 1;
}

Gf2El gf2_solve_quadratic(const FieldCtx2 &F, const Gf2El &c) {
    if (gf2_trace(F, c) != 0) throw NoSolution();
    Gf2El acc;
    for (int j = 0; j < F.words; ++j) {
        u64 bits = c.w[j];
        while (bits) {
            int i = std::countr_zero(bits);
            bits &= bits - 1;
            acc = gf2_add(acc, F.ht_table[64 * j + i]);
        }
    }
    return acc;
}

std::uint64_t gf2_to_index(const FieldCtx2 &F, const Gf2El &a) {
    if (F.n > 64) throw Error("gf2_to_index requires n <= 64");
    return a.w[0];
}

Gf2El gf2_from_index(const FieldCtx2 &F, std::uint64_t idx) {
    if (F.n > 64) throw Error("gf2_from_index requires n <= 64");
    if (F.n < 64 && (idx >> F.n) != 0) throw Error("index out of range");
    Gf2El r;
    r.w[0] = idx;
    return r;
}

Gf2El gf2_random(const FieldCtx2 &F, SplitMix64 &rng) {
    Gf2El r;
    for (int j = 0; j < F.words; ++j) r.w[j] = rng.next();
    const int rem = F.n & 63;
    if (rem) r.w[F.words - 1] &= (~u64(0)) >> (64 - rem);
    for (int j = F.words; j < kW; ++j) r.w[j] = 0;
    return r;
}

Gf2El gf2_random_nonzero(const FieldCtx2 &F, SplitMix64 &rng) {
    for (;;) {
        Gf2El r = gf2_random(F, rng);
        if (!r.is_zero()) return r;
    }
}

std::string gf2_to_hex(const FieldCtx2 &, const Gf2El &a) {
    return words_to_hex(a.w.data(), kW);
}

Gf2El gf2_from_hex(const FieldCtx2 &F, const std::string &hex) {
    u64 w[kMW] = {};
    hex_to_words(hex, w, kMW);
    if (top_bit(w, kMW) >= F.n) throw ParseError("element not reduced (degree >= n)");
    Gf2El r;
    std::memcpy(r.w.data(), w, kW * sizeof(u64));
    return r;
}

std::string gf2_modulus_hex(const FieldCtx2 &F) {
    return words_to_hex(F.modulus.data(), kMW);
}

FieldCtx2 setup_gf2(int n) {
    if (n < 1) throw Error("degree must be positive");
    if (n > kGf2MaxDegree)
        throw DegreeTooLarge("n = " + std::to_string(n) + " exceeds the GF(2^n) cap of " +
                             std::to_string(kGf2MaxDegree));
    FieldCtx2 F;
    F.n = n;
    F.words = (n + 63) / 64;
    F.modulus = find_modulus2(n);
    build_trace_mask(F);
    int di = -1;
    for (int i = 0; i < n; ++i) {
        if (get_bit(F.trace_mask.data(), i)) {
            di = i;
            break;
        }
    }
    if (di < 0) throw Error("no basis element of trace 1"); // impossible: trace is onto
    F.delta = gf2_basis(F, di);
    build_derived(F);
    return F;
}

std::string fieldctx2_to_record(const FieldCtx2 &F) {
    std::ostringstream os;
    os << "p=2\n";
    os << "n=" << F.n << "\n";
    os << "modulus=" << gf2_modulus_hex(F) << "\n";
    os << "delta=" << gf2_to_hex(F, F.delta) << "\n";
    return os.str();
}

FieldCtx2 fieldctx2_from_record(const std::string &record) {
    std::istringstream is(record);
    std::string line, modulus_hex, delta_hex;
    int p = 0, n = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("malformed context line: " + line);
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "p") p = std::stoi(value);
        else if (key == "n") n = std::stoi(value);
        else if (key == "modulus") modulus_hex = value;
        else if (key == "delta") delta_hex = value;
        else throw ParseError("unknown context field: " + key);
    }
    if (p != 2) throw ParseError("context record is not a GF(2^n) record");
    if (n < 1 || n > kGf2MaxDegree) throw ParseError("context degree out of range");
    FieldCtx2 F;
    F.n = n;
    F.words = (n + 63) / 64;
    hex_to_words(modulus_hex, F.modulus.data(), kMW);
    if (top_bit(F.modulus.data(), kMW) != n) throw ParseError("modulus degree mismatch");
    if (!rabin2(F.modulus, n)) throw ParseError("modulus is not irreducible");
    build_trace_mask(F);
    F.delta = gf2_from_hex(F, delta_hex);
    if (gf2_trace(F, F.delta) != 1) throw ParseError("delta does not have trace 1");
    build_derived(F);
    return F;
}

} // namespace kzero
