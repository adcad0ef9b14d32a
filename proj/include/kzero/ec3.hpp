#pragma once

#include <cstdint>

#include "kzero/gf3.hpp"

namespace kzero {

// The curve family E(a): y^2 = x^3 + x^2 - a over F(3^n), a != 0.
// Group orders are always divisible by 3; the Sylow 3-subgroup is determined
// by repeated deterministic point-thirding from the 3-torsion seed point
// (a^(1/3), a^(1/3)).

struct Point3 {
    bool infinity = true;
    Gf3El x, y;

    bool operator==(const Point3 &) const = default;

    static Point3 identity() { return {}; }
    static Point3 affine(const Gf3El &x, const Gf3El &y) { return {false, x, y}; }
};

struct SylowResult3 {
    int h = 0; // ord_3(#E)
    Point3 generator;

    bool operator==(const SylowResult3 &) const = default;
};

bool ec3_on_curve(const FieldCtx3 &F, const Gf3El &a, const Point3 &P);

Point3 ec3_neg(const Point3 &P);
Point3 ec3_add(const FieldCtx3 &F, const Gf3El &a, const Point3 &P, const Point3 &Q);
Point3 ec3_double(const FieldCtx3 &F, const Gf3El &a, const Point3 &P);
Point3 ec3_triple(const FieldCtx3 &F, const Gf3El &a, const Point3 &P); // double then add
Point3 ec3_pow3(const FieldCtx3 &F, const Gf3El &a, const Point3 &P, int k); // [3^k]P

// Deterministic thirding. The thirding condition is Tr(a*y/x^3) = 0;
// on success [3]*result is Q or -Q (the sign comes from the canonical
// square root; both choices generate the same subgroup). Throws
// NotThirdable / DegeneratePoint.
Point3 ec3_third(const FieldCtx3 &F, const Gf3El &a, const Point3 &Q);

SylowResult3 ec3_sylow(const FieldCtx3 &F, const Gf3El &a);

// True iff K(a) = 0. Uses h = n for n >= 2; at n = 1 the Hasse interval
// contains both 3 and 6, so the decision falls back to the naive order.
bool ec3_is_zero(const FieldCtx3 &F, const Gf3El &a);

// Randomized baseline, mirroring the binary case with p = 3 (a true zero is
// certified with probability 2/3 per sample). n = 1 routes to the naive
// order oracle.
bool ec3_lisonek_test(const FieldCtx3 &F, const Gf3El &a, std::uint64_t seed);

Point3 ec3_random_point(const FieldCtx3 &F, const Gf3El &a, SplitMix64 &rng);

} // namespace kzero
