#include "kzero/gf3.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <sstream>

namespace kzero {

namespace {

using u64 = std::uint64_t;
using u8 = std::uint8_t;

constexpr int kW = kGf3Words;
constexpr int kMW = kGf3Words + 1;  // modulus planes (degree <= 128 -> 129 trits)
constexpr int kDW = 2 * kGf3Words;  // product planes (degree <= 254)

// Carry-free addition mod 3 on disjoint bit planes:
//   t  = (al | bh) ^ (ah | bl)
//   rl = (ah | bh) ^ t
//   rh = (al | bl) ^ t
inline void plane_add(u64 *rlo, u64 *rhi, const u64 *alo, const u64 *ahi, const u64 *blo,
                      const u64 *bhi, int words) {
    for (int j = 0; j < words; ++j) {
        u64 t = (alo[j] | bhi[j]) ^ (ahi[j] | blo[j]);
        u64 rl = (ahi[j] | bhi[j]) ^ t;
        u64 rh = (alo[j] | blo[j]) ^ t;
        rlo[j] = rl;
        rhi[j] = rh;
    }
}

inline int plane_trit(const u64 *lo, const u64 *hi, int i) {
    int l = (lo[i >> 6] >> (i & 63)) & 1;
    int h = (hi[i >> 6] >> (i & 63)) & 1;
    return l + 2 * h;
}

inline void plane_set_trit(u64 *lo, u64 *hi, int i, int v) {
    u64 bit = u64(1) << (i & 63);
    int j = i >> 6;
    lo[j] &= ~bit;
    hi[j] &= ~bit;
    if (v == 1) lo[j] |= bit;
    else if (v == 2) hi[j] |= bit;
}

inline void plane_shl1(u64 *lo, u64 *hi, int words) {
    u64 cl = 0, ch = 0;
    for (int j = 0; j < words; ++j) {
        u64 nl = lo[j] >> 63, nh = hi[j] >> 63;
        lo[j] = (lo[j] << 1) | cl;
        hi[j] = (hi[j] << 1) | ch;
        cl = nl;
        ch = nh;
    }
}

inline void plane_shr1(u64 *lo, u64 *hi, int words) {
    for (int j = 0; j < words - 1; ++j) {
        lo[j] = (lo[j] >> 1) | (lo[j + 1] << 63);
        hi[j] = (hi[j] >> 1) | (hi[j + 1] << 63);
    }
    lo[words - 1] >>= 1;
    hi[words - 1] >>= 1;
}

int plane_top(const u64 *lo, const u64 *hi, int words) {
    for (int j = words - 1; j >= 0; --j) {
        u64 v = lo[j] | hi[j];
        if (v) return j * 64 + 63 - std::countl_zero(v);
    }
    return -1;
}

// ---------------------------------------------------------------------------
// Setup-time dense polynomials over F_3 (trit-per-byte); used for the
// modulus search only, where clarity beats speed.
// ---------------------------------------------------------------------------

using TPoly = std::vector<u8>; // coefficient i at index i

int tp_deg(const TPoly &p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i]) return i;
    return -1;
}

TPoly tp_mul(const TPoly &a, const TPoly &b) {
    int da = tp_deg(a), db = tp_deg(b);
    if (da < 0 || db < 0) return {};
    TPoly r(da + db + 1, 0);
    for (int i = 0; i <= da; ++i) {
        if (!a[i]) continue;
        for (int j = 0; j <= db; ++j) r[i + j] = static_cast<u8>((r[i + j] + a[i] * b[j]) % 3);
    }
    return r;
}

void tp_mod(TPoly &a, const TPoly &f) {
    int df = tp_deg(f);
    int lc_inv = (f[df] == 1) ? 1 : 2;
    for (int d = tp_deg(a); d >= df; --d) {
        int c = a[d];
        if (c) {
            int factor = (c * lc_inv) % 3;
            for (int j = 0; j <= df; ++j) {
                int v = a[d - df + j] + 3 - (factor * f[j]) % 3;
                a[d - df + j] = static_cast<u8>(v % 3);
            }
        }
    }
    a.resize(std::max(df, 1));
}

TPoly tp_gcd(TPoly a, TPoly b) {
    while (tp_deg(b) >= 0) {
        tp_mod(a, b);
        std::swap(a, b);
    }
    return a;
}

// Rabin's criterion over F_3.
bool rabin3(const TPoly &f, int n) {
    if (n == 1) return true;
    if (f[0] == 0) return false;
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

    TPoly h = {0, 1}; // x
    std::size_t next_cp = 0;
    for (int k = 1; k <= n; ++k) {
        TPoly h2 = tp_mul(h, h);
        tp_mod(h2, f);
        TPoly h3 = tp_mul(h2, h);
        tp_mod(h3, f);
        h = h3;
        if (next_cp < checkpoints.size() && k == checkpoints[next_cp]) {
            ++next_cp;
            TPoly g = h;
            if (g.size() < 2) g.resize(2, 0);
            g[1] = static_cast<u8>((g[1] + 2) % 3); // h - x
            if (tp_deg(tp_gcd(g, f)) > 0) return false;
        }
    }
    TPoly x = {0, 1};
    x.resize(h.size(), 0);
    TPoly hh = h;
    hh.resize(x.size(), 0);
    return hh == x;
}

// Minimal-weight, lexicographically smallest irreducible of degree n.
// Within a weight class, candidates are produced in ascending order of the
// base-3 encoding: the highest chosen position iterates smallest first, then
// its coefficient, then the lower positions recursively.
TPoly find_modulus3(int n) {
    if (n == 1) return TPoly{0, 1}; // t itself: prime field F_3
    TPoly f(n + 1, 0);
    f[n] = 1;
    TPoly result;
    for (int w = 2; w <= n + 1 && result.empty(); ++w) {
        int m = w - 2; // middle coefficients
        if (m > n - 1) break;
        std::function<bool(int, int)> rec = [&](int max_pos, int m_left) -> bool {
            if (m_left == 0) {
                for (int c0 = 1; c0 <= 2; ++c0) {
                    f[0] = static_cast<u8>(c0);
                    if (rabin3(f, n)) return true;
                }
                f[0] = 0;
                return false;
            }
            for (int k = m_left; k <= max_pos; ++k) {
                for (int b = 1; b <= 2; ++b) {
                    f[k] = static_cast<u8>(b);
                    if (rec(k - 1, m_left - 1)) return true;
                }
                f[k] = 0;
            }
            return false;
        };
        if (rec(n - 1, m)) result = f;
    }
    if (result.empty())
        throw Error("no irreducible polynomial found (degree " + std::to_string(n) + ")");
    return result;
}

// ---------------------------------------------------------------------------
// Small unsigned bignum for square-root exponents (3^n scale).
// ---------------------------------------------------------------------------

using Nat = std::vector<u64>;

void nat_norm(Nat &a) {
    while (a.size() > 1 && a.back() == 0) a.pop_back();
}

Nat nat_pow3(int n) {
    Nat a{1};
    for (int i = 0; i < n; ++i) {
        u64 carry = 0;
        for (auto &w : a) {
            unsigned __int128 v = static_cast<unsigned __int128>(w) * 3 + carry;
            w = static_cast<u64>(v);
            carry = static_cast<u64>(v >> 64);
        }
        if (carry) a.push_back(carry);
    }
    return a;
}

void nat_add_small(Nat &a, u64 v) {
    for (auto &w : a) {
        w += v;
        if (w >= v) return;
        v = 1;
    }
    a.push_back(1);
}

void nat_sub_small(Nat &a, u64 v) {
    for (auto &w : a) {
        u64 old = w;
        w -= v;
        if (old >= v) break;
        v = 1;
    }
    nat_norm(a);
}

u64 nat_div_small(Nat &a, u64 d) {
    unsigned __int128 rem = 0;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
        unsigned __int128 cur = (rem << 64) | a[i];
        a[i] = static_cast<u64>(cur / d);
        rem = cur % d;
    }
    nat_norm(a);
    return static_cast<u64>(rem);
}

bool nat_is_zero(const Nat &a) {
    for (u64 w : a)
        if (w) return false;
    return true;
}

int nat_bits(const Nat &a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i]) return 64 * i + 64 - std::countl_zero(a[i]);
    return 0;
}

bool nat_bit(const Nat &a, int i) {
    int j = i >> 6;
    if (j >= static_cast<int>(a.size())) return false;
    return (a[j] >> (i & 63)) & 1;
}

Gf3El gf3_pow(const FieldCtx3 &F, const Gf3El &a, const Nat &e) {
    Gf3El r = gf3_one();
    for (int i = nat_bits(e) - 1; i >= 0; --i) {
        r = gf3_mul(F, r, r);
        if (nat_bit(e, i)) r = gf3_mul(F, r, a);
    }
    return r;
}

// Lexicographic comparison from coefficient n-1 down; the canonical
// square root is the smaller of the pair {r, -r}.
bool lex_less(const FieldCtx3 &F, const Gf3El &a, const Gf3El &b) {
    for (int i = F.n - 1; i >= 0; --i) {
        int ta = gf3_trit(a, i), tb = gf3_trit(b, i);
        if (ta != tb) return ta < tb;
    }
    return false;
}

// Apply the linear table map sum_i c_i * table[i].
Gf3El table_apply(const FieldCtx3 &F, const std::vector<Gf3El> &table, const Gf3El &c) {
    Gf3El acc;
    for (int j = 0; j < F.words; ++j) {
        u64 ones = c.lo[j], twos = c.hi[j];
        while (ones) {
            int i = std::countr_zero(ones);
            ones &= ones - 1;
            acc = gf3_add(acc, table[64 * j + i]);
        }
        while (twos) {
            int i = std::countr_zero(twos);
            twos &= twos - 1;
            acc = gf3_sub(acc, table[64 * j + i]);
        }
    }
    return acc;
}

} // namespace

Gf3El gf3_zero() { return Gf3El{}; }

Gf3El gf3_one() {
    Gf3El r;
    r.lo[0] = 1;
    return r;
}

Gf3El gf3_small(int v) {
    v %= 3;
    if (v < 0) v += 3;
    Gf3El r;
    if (v == 1) r.lo[0] = 1;
    else if (v == 2) r.hi[0] = 1;
    return r;
}

Gf3El gf3_basis(const FieldCtx3 &F, int i) {
    if (i < 0 || i >= F.n) throw Error("basis index out of range");
    Gf3El r;
    r.lo[i >> 6] = u64(1) << (i & 63);
    return r;
}

int gf3_trit(const Gf3El &a, int i) { return plane_trit(a.lo.data(), a.hi.data(), i); }

Gf3El gf3_add(const Gf3El &a, const Gf3El &b) {
    Gf3El r;
    plane_add(r.lo.data(), r.hi.data(), a.lo.data(), a.hi.data(), b.lo.data(), b.hi.data(), kW);
    return r;
}

Gf3El gf3_neg(const Gf3El &a) {
    Gf3El r;
    r.lo = a.hi;
    r.hi = a.lo;
    return r;
}

Gf3El gf3_sub(const Gf3El &a, const Gf3El &b) { return gf3_add(a, gf3_neg(b)); }

Gf3El gf3_mul(const FieldCtx3 &F, const Gf3El &a, const Gf3El &b) {
    const int dw = 2 * F.words;
    u64 acclo[kDW] = {}, acchi[kDW] = {};
    u64 slo[kDW] = {}, shi[kDW] = {};
    std::memcpy(slo, a.lo.data(), F.words * sizeof(u64));
    std::memcpy(shi, a.hi.data(), F.words * sizeof(u64));
    for (int i = 0; i < F.n; ++i) {
        int c = gf3_trit(b, i);
        if (c == 1) plane_add(acclo, acchi, acclo, acchi, slo, shi, dw);
        else if (c == 2) plane_add(acclo, acchi, acclo, acchi, shi, slo, dw);
        plane_shl1(slo, shi, dw);
    }
    // reduce: clear trits 2n-2 .. n against a sliding copy of the modulus
    if (F.n >= 2) {
        u64 mlo[kDW] = {}, mhi[kDW] = {};
        std::memcpy(mlo, F.mod_lo.data(), kMW * sizeof(u64));
        std::memcpy(mhi, F.mod_hi.data(), kMW * sizeof(u64));
        for (int s = 0; s < F.n - 2; ++s) plane_shl1(mlo, mhi, dw);
        for (int d = 2 * F.n - 2; d >= F.n; --d) {
            int c = plane_trit(acclo, acchi, d);
            if (c == 1) plane_add(acclo, acchi, acclo, acchi, mhi, mlo, dw); // -modulus
            else if (c == 2) plane_add(acclo, acchi, acclo, acchi, mlo, mhi, dw); // -2m = +m
            plane_shr1(mlo, mhi, dw);
        }
    }
    Gf3El r;
    std::memcpy(r.lo.data(), acclo, F.words * sizeof(u64));
    std::memcpy(r.hi.data(), acchi, F.words * sizeof(u64));
    return r;
}

Gf3El gf3_inv(const FieldCtx3 &F, const Gf3El &a) {
    if (a.is_zero()) throw ZeroInversion();
    u64 ulo[kMW] = {}, uhi[kMW] = {}, vlo[kMW] = {}, vhi[kMW] = {};
    u64 g1lo[kMW] = {}, g1hi[kMW] = {}, g2lo[kMW] = {}, g2hi[kMW] = {};
    std::memcpy(ulo, a.lo.data(), kW * sizeof(u64));
    std::memcpy(uhi, a.hi.data(), kW * sizeof(u64));
    std::memcpy(vlo, F.mod_lo.data(), kMW * sizeof(u64));
    std::memcpy(vhi, F.mod_hi.data(), kMW * sizeof(u64));
    g1lo[0] = 1;
    int du = plane_top(ulo, uhi, kMW), dv = F.n;
    while (du != 0) {
        if (du < 0) throw Error("gf3_inv: operand shares a factor with the modulus");
        if (du < dv) {
            std::swap_ranges(ulo, ulo + kMW, vlo);
            std::swap_ranges(uhi, uhi + kMW, vhi);
            std::swap_ranges(g1lo, g1lo + kMW, g2lo);
            std::swap_ranges(g1hi, g1hi + kMW, g2hi);
            std::swap(du, dv);
        }
        int cu = plane_trit(ulo, uhi, du);
        int cv = plane_trit(vlo, vhi, dv);
        // factor f with u -= f * v * t^(du-dv) cancelling the leading trit
        int f = (cu * ((cv == 1) ? 1 : 2)) % 3;
        int shift = du - dv;
        u64 tlo[kMW] = {}, thi[kMW] = {};
        if (f == 1) { // u += -v<<s, g1 += -g2<<s
            std::memcpy(tlo, vhi, kMW * sizeof(u64));
            std::memcpy(thi, vlo, kMW * sizeof(u64));
        } else {
            std::memcpy(tlo, vlo, kMW * sizeof(u64));
            std::memcpy(thi, vhi, kMW * sizeof(u64));
        }
        for (int s = 0; s < shift; ++s) plane_shl1(tlo, thi, kMW);
        plane_add(ulo, uhi, ulo, uhi, tlo, thi, kMW);
        if (f == 1) {
            std::memcpy(tlo, g2hi, kMW * sizeof(u64));
            std::memcpy(thi, g2lo, kMW * sizeof(u64));
        } else {
            std::memcpy(tlo, g2lo, kMW * sizeof(u64));
            std::memcpy(thi, g2hi, kMW * sizeof(u64));
        }
        for (int s = 0; s < shift; ++s) plane_shl1(tlo, thi, kMW);
        plane_add(g1lo, g1hi, g1lo, g1hi, tlo, thi, kMW);
        du = plane_top(ulo, uhi, kMW);
    }
    // u is a nonzero constant c; reduce g1 mod modulus, then scale by c^-1
    int dg = plane_top(g1lo, g1hi, kMW);
    while (dg >= F.n) {
        int c = plane_trit(g1lo, g1hi, dg);
        u64 tlo[kMW] = {}, thi[kMW] = {};
        if (c == 1) {
            std::memcpy(tlo, F.mod_hi.data(), kMW * sizeof(u64));
            std::memcpy(thi, F.mod_lo.data(), kMW * sizeof(u64));
        } else {
            std::memcpy(tlo, F.mod_lo.data(), kMW * sizeof(u64));
            std::memcpy(thi, F.mod_hi.data(), kMW * sizeof(u64));
        }
        for (int s = 0; s < dg - F.n; ++s) plane_shl1(tlo, thi, kMW);
        plane_add(g1lo, g1hi, g1lo, g1hi, tlo, thi, kMW);
        dg = plane_top(g1lo, g1hi, kMW);
    }
    Gf3El r;
    std::memcpy(r.lo.data(), g1lo, kW * sizeof(u64));
    std::memcpy(r.hi.data(), g1hi, kW * sizeof(u64));
    int c = plane_trit(ulo, uhi, 0);
    if (c == 2) r = gf3_neg(r); // 2^-1 = 2 = -1
    return r;
}

Gf3El gf3_cube(const FieldCtx3 &F, const Gf3El &a) { return table_apply(F, F.cube_table, a); }

Gf3El gf3_cuberoot(const FieldCtx3 &F, const Gf3El &a) {
    return table_apply(F, F.cuberoot_table, a);
}

int gf3_trace(const FieldCtx3 &F, const Gf3El &a) {
    int s = 0;
    for (int j = 0; j < F.words; ++j) {
        s += std::popcount(a.lo[j] & F.tr1_mask[j]);
        s += 2 * std::popcount(a.hi[j] & F.tr1_mask[j]);
        s += 2 * std::popcount(a.lo[j] & F.tr2_mask[j]);
        s += std::popcount(a.hi[j] & F.tr2_mask[j]); // 2*2 = 1 (mod 3)
    }
    return s % 3;
}

bool gf3_is_square(const FieldCtx3 &F, const Gf3El &a) {
    if (a.is_zero()) return true;
    Nat e = nat_pow3(F.n);
    nat_sub_small(e, 1);
    nat_div_small(e, 2);
    return gf3_pow(F, a, e) == gf3_one();
}

Gf3El gf3_sqrt(const FieldCtx3 &F, const Gf3El &a) {
    if (a.is_zero()) return a;
    Gf3El r;
    if (F.n & 1) {
        // 3^n = 3 (mod 4): candidate root a^((3^n+1)/4)
        Nat e = nat_pow3(F.n);
        nat_add_small(e, 1);
        nat_div_small(e, 4);
        r = gf3_pow(F, a, e);
        if (!(gf3_mul(F, r, r) == a)) throw NonResidue();
    } else {
        if (!gf3_is_square(F, a)) throw NonResidue();
        // Tonelli-Shanks with the precomputed deterministic non-residue
        Nat q(F.ts_q);
        Nat e(q);
        nat_add_small(e, 1);
        nat_div_small(e, 2);
        r = gf3_pow(F, a, e);       // a^((q+1)/2)
        Gf3El t = gf3_pow(F, a, q); // a^q
        Gf3El c = gf3_pow(F, F.ts_nonresidue, q);
        int m = F.ts_s;
        while (!(t == gf3_one())) {
            int i = 0;
            Gf3El t2 = t;
            while (!(t2 == gf3_one())) {
                t2 = gf3_mul(F, t2, t2);
                ++i;
                if (i == m) throw NonResidue(); // unreachable after the Euler check
            }
            Gf3El b = c;
            for (int k = 0; k < m - i - 1; ++k) b = gf3_mul(F, b, b);
            r = gf3_mul(F, r, b);
            c = gf3_mul(F, b, b);
            t = gf3_mul(F, t, c);
            m = i;
        }
    }
    Gf3El nr = gf3_neg(r);
    return lex_less(F, r, nr) ? r : nr;
}

Gf3El gf3_solve_cubic(const FieldCtx3 &F, const Gf3El &beta) {
    if (gf3_trace(F, beta) != 0) throw NoSolution();
    return table_apply(F, F.as_table, beta);
}

std::uint64_t gf3_to_index(const FieldCtx3 &F, const Gf3El &a) {
    if (F.n > 40) throw Error("gf3_to_index requires n <= 40");
    u64 v = 0;
    for (int i = F.n - 1; i >= 0; --i) v = v * 3 + static_cast<u64>(gf3_trit(a, i));
    return v;
}

Gf3El gf3_from_index(const FieldCtx3 &F, std::uint64_t idx) {
    if (F.n > 40) throw Error("gf3_from_index requires n <= 40");
    Gf3El r;
    for (int i = 0; i < F.n && idx; ++i) {
        plane_set_trit(r.lo.data(), r.hi.data(), i, static_cast<int>(idx % 3));
        idx /= 3;
    }
    if (idx) throw Error("index out of range");
    return r;
}

Gf3El gf3_random(const FieldCtx3 &F, SplitMix64 &rng) {
    Gf3El r;
    for (int i = 0; i < F.n; ++i)
        plane_set_trit(r.lo.data(), r.hi.data(), i, rng.next_trit());
    return r;
}

Gf3El gf3_random_nonzero(const FieldCtx3 &F, SplitMix64 &rng) {
    for (;;) {
        Gf3El r = gf3_random(F, rng);
        if (!r.is_zero()) return r;
    }
}

std::string gf3_to_trits(const FieldCtx3 &F, const Gf3El &a) {
    std::string s(F.n, '0');
    for (int i = 0; i < F.n; ++i) s[F.n - 1 - i] = static_cast<char>('0' + gf3_trit(a, i));
    return s;
}

Gf3El gf3_from_trits(const FieldCtx3 &F, const std::string &trits) {
    if (trits.empty()) throw ParseError("empty trit string");
    if (static_cast<int>(trits.size()) > F.n) throw ParseError("trit string too long");
    Gf3El r;
    int m = static_cast<int>(trits.size());
    for (int i = 0; i < m; ++i) {
        char c = trits[m - 1 - i];
        if (c < '0' || c > '2') throw ParseError(std::string("invalid trit character '") + c + "'");
        plane_set_trit(r.lo.data(), r.hi.data(), i, c - '0');
    }
    return r;
}

std::string gf3_modulus_trits(const FieldCtx3 &F) {
    std::string s(F.n + 1, '0');
    for (int i = 0; i <= F.n; ++i) s[F.n - i] = static_cast<char>('0' + F.modulus[i]);
    return s;
}

namespace {

void build_tables3(FieldCtx3 &F) {
    const int n = F.n;
    F.words = (n + 63) / 64;
    // plane form of the modulus
    F.mod_lo = {};
    F.mod_hi = {};
    for (int i = 0; i <= n; ++i)
        plane_set_trit(F.mod_lo.data(), F.mod_hi.data(), i, F.modulus[i]);

    // cube_table[i] = t^(3i) mod modulus, by repeated multiplication by t
    F.cube_table.assign(n, Gf3El{});
    {
        u64 elo[kMW] = {}, ehi[kMW] = {};
        elo[0] = 1; // t^0
        for (int i = 0; i < n; ++i) {
            Gf3El e;
            std::memcpy(e.lo.data(), elo, kW * sizeof(u64));
            std::memcpy(e.hi.data(), ehi, kW * sizeof(u64));
            F.cube_table[i] = e;
            for (int s = 0; s < 3; ++s) {
                plane_shl1(elo, ehi, kMW);
                int c = plane_trit(elo, ehi, n);
                if (c) {
                    u64 tlo[kMW], thi[kMW];
                    if (c == 1) {
                        std::memcpy(tlo, F.mod_hi.data(), kMW * sizeof(u64));
                        std::memcpy(thi, F.mod_lo.data(), kMW * sizeof(u64));
                    } else {
                        std::memcpy(tlo, F.mod_lo.data(), kMW * sizeof(u64));
                        std::memcpy(thi, F.mod_hi.data(), kMW * sizeof(u64));
                    }
                    plane_add(elo, ehi, elo, ehi, tlo, thi, kMW);
                }
            }
        }
    }

    // cuberoot_table[i] = c^i with c = t^(3^(n-1)) obtained by iterating the cube map
    F.cuberoot_table.assign(n, Gf3El{});
    {
        Gf3El c = (n >= 2) ? gf3_basis(F, 1) : gf3_one();
        if (n >= 2)
            for (int k = 0; k < n - 1; ++k) c = gf3_cube(F, c);
        Gf3El e = gf3_one();
        for (int i = 0; i < n; ++i) {
            F.cuberoot_table[i] = e;
            e = gf3_mul(F, e, c);
        }
        if (n >= 2 && !(gf3_cube(F, F.cuberoot_table[1]) == gf3_basis(F, 1)))
            throw Error("cube-root table self-check failed");
    }

    // trace masks
    F.tr1_mask = {};
    F.tr2_mask = {};
    for (int i = 0; i < n; ++i) {
        Gf3El y = gf3_basis(F, i);
        Gf3El s = y;
        for (int k = 1; k < n; ++k) {
            y = gf3_cube(F, y);
            s = gf3_add(s, y);
        }
        if (s == gf3_one()) F.tr1_mask[i >> 6] |= u64(1) << (i & 63);
        else if (s == gf3_neg(gf3_one())) F.tr2_mask[i >> 6] |= u64(1) << (i & 63);
        else if (!s.is_zero())
            throw Error("trace power sum is not constant; modulus not irreducible?");
    }
}

void pick_delta(FieldCtx3 &F) {
    const int n = F.n;
    if (n % 3 == 1) {
        F.delta = gf3_one();
    } else if (n % 3 == 2) {
        F.delta = gf3_neg(gf3_one());
    } else {
        // first basis element with nonzero trace, scaled to trace 1
        int found = -1, tr = 0;
        for (int i = 0; i < n; ++i) {
            Gf3El b = gf3_basis(F, i);
            tr = gf3_trace(F, b);
            if (tr != 0) {
                found = i;
                break;
            }
        }
        if (found < 0) throw Error("no basis element of nonzero trace");
        Gf3El b = gf3_basis(F, found);
        F.delta = (tr == 1) ? b : gf3_neg(b);
    }
    if (gf3_trace(F, F.delta) != 1) throw Error("delta trace check failed");
}

void build_solver_table(FieldCtx3 &F) {
    const int n = F.n;
    // as_table[k] from the delta-power suffix sums: with
    // d_i = sum_{j>i} delta^(3^j), the map X(b) = sum d_i b^(3^i) satisfies
    // X^3 - X + b = delta*Tr(b), so it solves the cubic on the trace-zero set.
    std::vector<Gf3El> dpow(n);
    dpow[0] = F.delta;
    for (int j = 1; j < n; ++j) dpow[j] = gf3_cube(F, dpow[j - 1]);
    std::vector<Gf3El> suffix(std::max(n - 1, 1));
    if (n >= 2) {
        suffix[n - 2] = dpow[n - 1];
        for (int i = n - 3; i >= 0; --i) suffix[i] = gf3_add(suffix[i + 1], dpow[i + 1]);
    }
    F.as_table.assign(n, Gf3El{});
    for (int k = 0; k < n; ++k) {
        Gf3El acc;
        Gf3El y = gf3_basis(F, k);
        for (int i = 0; i <= n - 2; ++i) {
            acc = gf3_add(acc, gf3_mul(F, suffix[i], y));
            y = gf3_cube(F, y);
        }
        F.as_table[k] = acc;
    }
}

void build_tonelli(FieldCtx3 &F) {
    if (F.n & 1) return;
    Nat q = nat_pow3(F.n);
    nat_sub_small(q, 1);
    int s = 0;
    while (!nat_is_zero(q) && !nat_bit(q, 0)) {
        nat_div_small(q, 2);
        ++s;
    }
    F.ts_s = s;
    F.ts_q = q;
    // deterministic non-residue: first element in encoding order
    for (u64 enc = 2;; ++enc) {
        Gf3El cand;
        u64 v = enc;
        for (int i = 0; i < F.n && v; ++i) {
            plane_set_trit(cand.lo.data(), cand.hi.data(), i, static_cast<int>(v % 3));
            v /= 3;
        }
        if (v) throw Error("no quadratic non-residue found");
        if (!gf3_is_square(F, cand)) {
            F.ts_nonresidue = cand;
            return;
        }
    }
}

} // namespace

FieldCtx3 setup_gf3(int n) {
    if (n < 1) throw Error("degree must be positive");
    if (n > kGf3MaxDegree)
        throw DegreeTooLarge("n = " + std::to_string(n) + " exceeds the GF(3^n) cap of " +
                             std::to_string(kGf3MaxDegree));
    FieldCtx3 F;
    F.n = n;
    F.modulus = find_modulus3(n);
    F.modulus.resize(n + 1, 0);
    build_tables3(F);
    pick_delta(F);
    build_solver_table(F);
    build_tonelli(F);
    return F;
}

std::string fieldctx3_to_record(const FieldCtx3 &F) {
    std::ostringstream os;
    os << "p=3\n";
    os << "n=" << F.n << "\n";
    os << "modulus=" << gf3_modulus_trits(F) << "\n";
    os << "delta=" << gf3_to_trits(F, F.delta) << "\n";
    return os.str();
}

FieldCtx3 fieldctx3_from_record(const std::string &record) {
    std::istringstream is(record);
    std::string line, modulus_str, delta_str;
    int p = 0, n = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("malformed context line: " + line);
        std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "p") p = std::stoi(value);
        else if (key == "n") n = std::stoi(value);
        else if (key == "modulus") modulus_str = value;
        else if (key == "delta") delta_str = value;
        else throw ParseError("unknown context field: " + key);
    }
    if (p != 3) throw ParseError("context record is not a GF(3^n) record");
    if (n < 1 || n > kGf3MaxDegree) throw ParseError("context degree out of range");
    if (static_cast<int>(modulus_str.size()) != n + 1)
        throw ParseError("modulus trit string must have n+1 digits");
    FieldCtx3 F;
    F.n = n;
    F.modulus.assign(n + 1, 0);
    for (int i = 0; i <= n; ++i) {
        char c = modulus_str[n - i];
        if (c < '0' || c > '2') throw ParseError("invalid modulus digit");
        F.modulus[i] = static_cast<u8>(c - '0');
    }
    if (F.modulus[n] != 1) throw ParseError("modulus must be monic of degree n");
    TPoly f(F.modulus.begin(), F.modulus.end());
    if (!rabin3(f, n)) throw ParseError("modulus is not irreducible");
    build_tables3(F);
    F.delta = gf3_from_trits(F, delta_str);
    if (gf3_trace(F, F.delta) != 1) throw ParseError("delta does not have trace 1");
    build_solver_table(F);
    build_tonelli(F);
    return F;
}

} // namespace kzero
