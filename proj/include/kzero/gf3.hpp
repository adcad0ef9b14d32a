#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kzero/errors.hpp"
#include "kzero/rng.hpp"

namespace kzero {

// Arithmetic in F(3^n) in polynomial basis. Coefficients live in two parallel
// bit planes (trit i = lo bit + 2*hi bit, planes disjoint), which gives
// carry-free word-level addition mod 3. The context carries the solver table
// for u^3 - u = c used by point-thirding, plus linear tables for the cube map
// and its inverse.

inline constexpr int kGf3MaxDegree = 128;
inline constexpr int kGf3Words = kGf3MaxDegree / 64;

struct Gf3El {
    std::array<std::uint64_t, kGf3Words> lo{};
    std::array<std::uint64_t, kGf3Words> hi{};

    bool operator==(const Gf3El &) const = default;

    bool is_zero() const { return (lo[0] | lo[1] | hi[0] | hi[1]) == 0; }
};

struct FieldCtx3 {
    int n = 0;
    int words = 0;                    // active plane words, ceil(n/64)
    std::vector<std::uint8_t> modulus; // trits, degree n (modulus[n] = 1)
    std::array<std::uint64_t, kGf3Words + 1> mod_lo{}, mod_hi{}; // plane form
    Gf3El delta;                      // Tr(delta) = 1
    std::vector<Gf3El> as_table;      // as_table[i] solves u^3-u+t^i = 0 on the trace-zero set
    std::vector<Gf3El> cube_table;    // t^(3i) mod modulus
    std::vector<Gf3El> cuberoot_table;// (t^i)^(3^(n-1))
    std::array<std::uint64_t, kGf3Words> tr1_mask{}; // basis elements with Tr = 1
    std::array<std::uint64_t, kGf3Words> tr2_mask{}; // basis elements with Tr = 2
    // Tonelli-Shanks data, present only for even n (3^n - 1 = 2^s * q).
    Gf3El ts_nonresidue;
    int ts_s = 0;
    std::vector<std::uint64_t> ts_q;  // odd part, little-endian words
};

// Deterministic setup: minimal-weight lexicographically smallest irreducible
// modulus; delta = 1 for n = 1 (mod 3), -1 for n = 2 (mod 3), otherwise the
// first basis element with nonzero trace scaled to trace 1.
FieldCtx3 setup_gf3(int n);

Gf3El gf3_zero();
Gf3El gf3_one();
Gf3El gf3_small(int v); // v mod 3 as a field element
Gf3El gf3_basis(const FieldCtx3 &F, int i);

int gf3_trit(const Gf3El &a, int i);

Gf3El gf3_add(const Gf3El &a, const Gf3El &b);
Gf3El gf3_neg(const Gf3El &a);
Gf3El gf3_sub(const Gf3El &a, const Gf3El &b);
Gf3El gf3_mul(const FieldCtx3 &F, const Gf3El &a, const Gf3El &b);
Gf3El gf3_inv(const FieldCtx3 &F, const Gf3El &a); // throws ZeroInversion

Gf3El gf3_cube(const FieldCtx3 &F, const Gf3El &a);     // Frobenius
Gf3El gf3_cuberoot(const FieldCtx3 &F, const Gf3El &a); // inverse Frobenius

int gf3_trace(const FieldCtx3 &F, const Gf3El &a); // 0, 1 or 2

bool gf3_is_square(const FieldCtx3 &F, const Gf3El &a);

// Canonical square root: of the two roots +-r, returns the one whose trit
// vector is lexicographically smaller reading from coefficient n-1 down.
// Throws NonResidue when a is not a square.
Gf3El gf3_sqrt(const FieldCtx3 &F, const Gf3El &a);

// Canonical solution of u^3 - u + beta = 0 for Tr(beta) = 0; the solution
// set is {result, result+1, result-1}. Throws NoSolution otherwise.
Gf3El gf3_solve_cubic(const FieldCtx3 &F, const Gf3El &beta);

std::uint64_t gf3_to_index(const FieldCtx3 &F, const Gf3El &a); // base-3 value, n <= 40
Gf3El gf3_from_index(const FieldCtx3 &F, std::uint64_t idx);

Gf3El gf3_random(const FieldCtx3 &F, SplitMix64 &rng);
Gf3El gf3_random_nonzero(const FieldCtx3 &F, SplitMix64 &rng);

// Element I/O: trit strings, digits c_{n-1}..c_0 over {0,1,2}, fixed width n.
std::string gf3_to_trits(const FieldCtx3 &F, const Gf3El &a);
Gf3El gf3_from_trits(const FieldCtx3 &F, const std::string &trits);
std::string gf3_modulus_trits(const FieldCtx3 &F);

// Context record: text lines p=3, n, modulus, delta (trit strings).
std::string fieldctx3_to_record(const FieldCtx3 &F);
FieldCtx3 fieldctx3_from_record(const std::string &record);

} // namespace kzero
