#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kzero/errors.hpp"
#include "kzero/rng.hpp"

namespace kzero {

// Arithmetic in F(2^n) in polynomial basis. Elements are packed coefficient
// bit-vectors (bit i = coefficient of t^i), kept in canonical reduced form
// (degree < n) by every operation. The context carries the solver table for
// u^2 + u = c, which is what makes point-halving cheap: solving reduces to
// an average of n/2 word-wide XORs.

inline constexpr int kGf2MaxDegree = 256;
inline constexpr int kGf2Words = kGf2MaxDegree / 64;
inline constexpr int kGf2ModWords = kGf2Words + 1; // modulus has degree n, may need bit 256

struct Gf2El {
    std::array<std::uint64_t, kGf2Words> w{};

    bool operator==(const Gf2El &) const = default;

    bool is_zero() const {
        return (w[0] | w[1] | w[2] | w[3]) == 0;
    }
};

using Gf2Mod = std::array<std::uint64_t, kGf2ModWords>;

// Immutable field descriptor. Safe to share across threads once built; all
// operations below are pure functions of (ctx, inputs).
struct FieldCtx2 {
    int n = 0;
    int words = 0;                 // active element words, ceil(n/64)
    Gf2Mod modulus{};              // irreducible of degree exactly n
    Gf2El delta;                   // fixed element with Tr(delta) = 1
    std::vector<Gf2El> ht_table;   // ht_table[i] solves u^2+u = t^i + Tr(t^i)*delta
    Gf2El sqrt_t;                  // t^(2^(n-1))
    std::array<std::uint64_t, kGf2Words> trace_mask{}; // Tr(x) = parity(x & mask)
};

// Deterministic setup: minimal-weight (trinomial before pentanomial),
// lexicographically smallest irreducible modulus; delta is t^i for the
// smallest i with Tr(t^i) = 1; solver table built from the delta-power
// prefix sums of the explicit linear solution.
FieldCtx2 setup_gf2(int n);

Gf2El gf2_zero();
Gf2El gf2_one();
Gf2El gf2_basis(const FieldCtx2 &F, int i); // t^i, 0 <= i < n

Gf2El gf2_add(const Gf2El &a, const Gf2El &b);
Gf2El gf2_mul(const FieldCtx2 &F, const Gf2El &a, const Gf2El &b);
Gf2El gf2_square(const FieldCtx2 &F, const Gf2El &a);
Gf2El gf2_sqrt(const FieldCtx2 &F, const Gf2El &a);
Gf2El gf2_inv(const FieldCtx2 &F, const Gf2El &a); // throws ZeroInversion
int gf2_trace(const FieldCtx2 &F, const Gf2El &a); // 0 or 1

// Canonical solution of u^2 + u = c for Tr(c) = 0; the solution set is
// {result, result+1}. Throws NoSolution when Tr(c) = 1.
Gf2El gf2_solve_quadratic(const FieldCtx2 &F, const Gf2El &c);

// Exhaustive-iteration encoding (valid for n <= 64): the packed bit-vector
// viewed as an integer.
std::uint64_t gf2_to_index(const FieldCtx2 &F, const Gf2El &a);
Gf2El gf2_from_index(const FieldCtx2 &F, std::uint64_t idx);

Gf2El gf2_random(const FieldCtx2 &F, SplitMix64 &rng);
Gf2El gf2_random_nonzero(const FieldCtx2 &F, SplitMix64 &rng);

// Element I/O: lowercase hex, no leading zeros, bit i = coefficient of t^i.
std::string gf2_to_hex(const FieldCtx2 &F, const Gf2El &a);
Gf2El gf2_from_hex(const FieldCtx2 &F, const std::string &hex); // throws ParseError
std::string gf2_modulus_hex(const FieldCtx2 &F);

// Context record: text lines p=2, n, modulus (hex), delta (hex).
// Parsing validates irreducibility and the trace of delta, then rebuilds
// the derived tables deterministically.
std::string fieldctx2_to_record(const FieldCtx2 &F);
FieldCtx2 fieldctx2_from_record(const std::string &record);

} // namespace kzero
