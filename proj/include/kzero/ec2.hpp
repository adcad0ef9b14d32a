#pragma once

#include <cstdint>

#include "kzero/gf2.hpp"

namespace kzero {

// The curve family E(a): y^2 + xy = x^3 + a over F(2^n), a != 0.
// Group orders are always divisible by 4; the Sylow 2-subgroup is determined
// by repeated deterministic point-halving from the order-4 seed point
// (a^(1/4), lambda = 0).

// lambda-representation (x, lambda) with lambda = x + y/x; the affine point
// is (x, x*(x+lambda)). Requires x != 0, so the 2-torsion point (0, sqrt(a))
// and the identity are carried by Ec2Point instead.
struct PointLambda {
    Gf2El x, lambda;
    bool operator==(const PointLambda &) const = default;
};

struct Ec2Point {
    bool infinity = true;
    Gf2El x, y;

    bool operator==(const Ec2Point &) const = default;

    static Ec2Point identity() { return {}; }
    static Ec2Point affine(const Gf2El &x, const Gf2El &y) { return {false, x, y}; }
};

struct SylowResult2 {
    int h = 0; // ord_2(#E)
    Ec2Point generator;

    bool operator==(const SylowResult2 &) const = default;
};

bool ec2_on_curve(const FieldCtx2 &F, const Gf2El &a, const Ec2Point &P);
Ec2Point lambda_to_affine(const FieldCtx2 &F, const PointLambda &P);
PointLambda affine_to_lambda(const FieldCtx2 &F, const Ec2Point &P); // x != 0 required

Ec2Point ec2_neg(const Ec2Point &P);
Ec2Point ec2_add(const FieldCtx2 &F, const Gf2El &a, const Ec2Point &P, const Ec2Point &Q);
Ec2Point ec2_double(const FieldCtx2 &F, const Gf2El &a, const Ec2Point &P);

// Doubling straight from the lambda-representation: xi = lambda^2 + lambda,
// eta = x^2 + xi*(lambda+1). Returns the affine result; xi = 0 is the
// 2-torsion point (0, sqrt(a)).
Ec2Point ec2_double(const FieldCtx2 &F, const Gf2El &a, const PointLambda &P);

// Deterministic halving: solve u^2+u = x, t = x*(x+lambda+u), new point
// (sqrt(t), u+1). Throws NotHalvable when Tr(x) = 1.
PointLambda ec2_halve(const FieldCtx2 &F, const Gf2El &a, const PointLambda &P);

Ec2Point ec2_pow2(const FieldCtx2 &F, const Gf2El &a, const Ec2Point &P, int k); // [2^k]P

// Height of the Sylow 2-subgroup tree plus a generator, by halving from the
// order-4 seed until the trace condition fails.
SylowResult2 ec2_sylow(const FieldCtx2 &F, const Gf2El &a);

// True iff K(a) = 0, i.e. the Sylow height equals n (n >= 2).
bool ec2_is_zero(const FieldCtx2 &F, const Gf2El &a);

// Randomized baseline: sample a point, compute [2^n]P by doubling. True
// certifies a zero; false is either a non-zero or an unlucky draw (a true
// zero is certified with probability 1/2 per sample).
bool ec2_lisonek_test(const FieldCtx2 &F, const Gf2El &a, std::uint64_t seed);

Ec2Point ec2_random_point(const FieldCtx2 &F, const Gf2El &a, SplitMix64 &rng);

} // namespace kzero
