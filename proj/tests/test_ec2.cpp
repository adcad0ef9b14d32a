#include <doctest.h>

#include <cstdint>
#include <set>
#include <vector>

#include "kzero/ec2.hpp"
#include "kzero/oracle.hpp"

using namespace kzero;

namespace {

using u64 = std::uint64_t;

// Brute-force point list by scanning every (x, y) pair against the curve
// equation; the ground truth for the small-field group structure.
std::vector<Ec2Point> enumerate_points(const FieldCtx2 &F, const Gf2El &a) {
    std::vector<Ec2Point> pts{Ec2Point::identity()};
    const u64 N = u64(1) << F.n;
    for (u64 xi = 0; xi < N; ++xi)
        for (u64 yi = 0; yi < N; ++yi) {
            Ec2Point P = Ec2Point::affine(gf2_from_index(F, xi), gf2_from_index(F, yi));
            if (ec2_on_curve(F, a, P)) pts.push_back(P);
        }
    return pts;
}

int point_order(const FieldCtx2 &F, const Gf2El &a, const Ec2Point &P) {
    Ec2Point Q = P;
    int k = 1;
    while (!Q.infinity) {
        Q = ec2_add(F, a, Q, P);
        ++k;
        REQUIRE(k <= 1 << (F.n + 2));
    }
    return k;
}

// random on-curve point in lambda representation with halvable x
PointLambda random_halvable(const FieldCtx2 &F, const Gf2El &a, SplitMix64 &rng) {
    for (;;) {
        Ec2Point P = ec2_random_point(F, a, rng);
        if (P.x.is_zero()) continue;
        if (gf2_trace(F, P.x) != 0) continue;
        return affine_to_lambda(F, P);
    }
}

} // namespace

TEST_SUITE("ec2") {

TEST_CASE("group law against brute force on F_2 and F_4") {
    auto F1 = setup_gf2(1);
    Gf2El one1 = gf2_one();
    auto pts = enumerate_points(F1, one1);
    CHECK(pts.size() == 4); // O, (0,1), (1,0), (1,1)
    // closure and the identity/negation laws
    for (const auto &P : pts) {
        CHECK(ec2_add(F1, one1, P, Ec2Point::identity()) == P);
        CHECK(ec2_add(F1, one1, P, ec2_neg(P)).infinity);
        for (const auto &Q : pts) CHECK(ec2_on_curve(F1, one1, ec2_add(F1, one1, P, Q)));
    }

    auto F2 = setup_gf2(2);
    Gf2El one2 = gf2_one();
    auto pts2 = enumerate_points(F2, one2);
    CHECK(pts2.size() == 8);
    // cyclic of order 8: exactly 4 points of order 8, 2 of order 4
    int ord8 = 0, ord4 = 0;
    for (const auto &P : pts2) {
        if (P.infinity) continue;
        int o = point_order(F2, one2, P);
        if (o == 8) ++ord8;
        if (o == 4) ++ord4;
    }
    CHECK(ord8 == 4);
    CHECK(ord4 == 2);
}

TEST_CASE("doubling from the lambda representation: worked examples") {
    // F_2, a=1: [2](1, lambda=0) = (0, 1), the unique 2-torsion point (0, sqrt(a))
    auto F1 = setup_gf2(1);
    Ec2Point d = ec2_double(F1, gf2_one(), PointLambda{gf2_one(), gf2_zero()});
    CHECK(!d.infinity);
    CHECK(d.x.is_zero());
    CHECK(d.y == gf2_one());

    // F_4, a=1: [2](w^2, lambda=w) = (1, 1), lambda-rep (1, 0)
    auto F2 = setup_gf2(2);
    auto w = gf2_from_index(F2, 2), w2 = gf2_from_index(F2, 3);
    Ec2Point d2 = ec2_double(F2, gf2_one(), PointLambda{w2, w});
    CHECK(d2 == Ec2Point::affine(gf2_one(), gf2_one()));
    CHECK(affine_to_lambda(F2, d2) == PointLambda{gf2_one(), gf2_zero()});
}

TEST_CASE("halving: worked example, precondition, exact round-trip") {
    // F_4, a=1, P = (x=1, lambda=0): lhat = w^2, t = w, x' = w^2, lambda' = w
    auto F = setup_gf2(2);
    Gf2El a = gf2_one();
    auto w = gf2_from_index(F, 2), w2 = gf2_from_index(F, 3);
    PointLambda H = ec2_halve(F, a, PointLambda{gf2_one(), gf2_zero()});
    CHECK(H.x == w2);
    CHECK(H.lambda == w);
    Ec2Point Haff = lambda_to_affine(F, H);
    CHECK(Haff == Ec2Point::affine(w2, w2));
    CHECK(ec2_on_curve(F, a, Haff));

    // F_2, a=1: Tr(1) = 1, not halvable
    auto F1 = setup_gf2(1);
    CHECK_THROWS_AS(ec2_halve(F1, gf2_one(), PointLambda{gf2_one(), gf2_zero()}), NotHalvable);

    for (int n : {11, 47}) {
        auto G = setup_gf2(n);
        SplitMix64 rng(21);
        Gf2El aa = gf2_random_nonzero(G, rng);
        for (int it = 0; it < 500; ++it) {
            PointLambda P = random_halvable(G, aa, rng);
            PointLambda Ph = ec2_halve(G, aa, P);
            Ec2Point back = ec2_double(G, aa, Ph);
            // the halving convention returns the half whose double is P exactly
            CHECK(back == lambda_to_affine(G, P));
        }
    }
}

TEST_CASE("two halves share their double (translate by the 2-torsion point)") {
    for (int n : {5, 11}) {
        auto F = setup_gf2(n);
        SplitMix64 rng(31);
        Gf2El a = gf2_random_nonzero(F, rng);
        Ec2Point T = Ec2Point::affine(gf2_zero(), gf2_sqrt(F, a));
        for (int it = 0; it < 200; ++it) {
            Ec2Point P = ec2_random_point(F, a, rng);
            if (P.x.is_zero()) continue;
            Ec2Point Pt = ec2_add(F, a, P, T);
            if (Pt.infinity || Pt.x.is_zero()) continue;
            Ec2Point d1 = ec2_double(F, a, affine_to_lambda(F, P));
            Ec2Point d2 = ec2_double(F, a, affine_to_lambda(F, Pt));
            CHECK(d1.x == d2.x);
        }
    }
}

TEST_CASE("sylow: frozen small cases") {
    auto F1 = setup_gf2(1);
    auto r1 = ec2_sylow(F1, gf2_one());
    CHECK(r1.h == 2); // #E = 4, loop never entered (Tr(1) = 1)
    CHECK(ec2_on_curve(F1, gf2_one(), r1.generator));

    auto F2 = setup_gf2(2);
    auto rw = ec2_sylow(F2, gf2_from_index(F2, 2));
    CHECK(rw.h == 2); // #E = 4
    auto r1f4 = ec2_sylow(F2, gf2_one());
    CHECK(r1f4.h == 3); // #E = 8: one halving, then Tr(w^2) = 1
    CHECK_THROWS_AS(ec2_sylow(F2, gf2_zero()), ZeroArgument);
}

TEST_CASE("sylow equals the naive order valuation, exhaustively") {
    for (int n = 1; n <= 8; ++n) {
        auto F = setup_gf2(n);
        for (u64 i = 1; i < (u64(1) << n); ++i) {
            Gf2El a = gf2_from_index(F, i);
            CHECK(ec2_sylow(F, a).h == sylow_order_naive(F, a));
        }
    }
}

TEST_CASE("generator has order exactly 2^h, exhaustively") {
    for (int n = 1; n <= 10; ++n) {
        auto F = setup_gf2(n);
        for (u64 i = 1; i < (u64(1) << n); ++i) {
            Gf2El a = gf2_from_index(F, i);
            auto r = ec2_sylow(F, a);
            CHECK(ec2_on_curve(F, a, r.generator));
            Ec2Point q = ec2_pow2(F, a, r.generator, r.h - 1);
            CHECK(!q.infinity);
            CHECK(ec2_double(F, a, q).infinity);
        }
    }
}

TEST_CASE("halvability of the seed is divisibility by 8: Tr(a)=0 iff h >= 3") {
    for (int n = 1; n <= 8; ++n) {
        auto F = setup_gf2(n);
        for (u64 i = 1; i < (u64(1) << n); ++i) {
            Gf2El a = gf2_from_index(F, i);
            CHECK((gf2_trace(F, a) == 0) == (ec2_sylow(F, a).h >= 3));
        }
    }
}

TEST_CASE("sylow is deterministic, bit for bit") {
    auto F = setup_gf2(47);
    SplitMix64 rng(55);
    for (int it = 0; it < 30; ++it) {
        Gf2El a = gf2_random_nonzero(F, rng);
        auto r1 = ec2_sylow(F, a);
        auto r2 = ec2_sylow(F, a);
        CHECK(r1 == r2);
    }
}

TEST_CASE("is_zero: F_4 cases, F_16 count, errors") {
    auto F2 = setup_gf2(2);
    CHECK(ec2_is_zero(F2, gf2_from_index(F2, 2)));  // K(w) = 0
    CHECK(!ec2_is_zero(F2, gf2_one()));             // K(1) = 4
    CHECK_THROWS_AS(ec2_is_zero(F2, gf2_zero()), ZeroArgument);

    auto F1 = setup_gf2(1);
    CHECK_THROWS_AS(ec2_is_zero(F1, gf2_one()), UnsupportedDegree);

    auto F4 = setup_gf2(4);
    int zeros = 0;
    for (u64 i = 1; i < 16; ++i)
        if (ec2_is_zero(F4, gf2_from_index(F4, i))) ++zeros;
    CHECK(zeros == 5);
}

TEST_CASE("random point sampler stays on the curve") {
    auto F = setup_gf2(47);
    SplitMix64 rng(17);
    Gf2El a = gf2_random_nonzero(F, rng);
    for (int it = 0; it < 200; ++it) CHECK(ec2_on_curve(F, a, ec2_random_point(F, a, rng)));
}

TEST_CASE("randomized baseline on F_4") {
    auto F = setup_gf2(2);
    Gf2El w = gf2_from_index(F, 2);

    // a = 1 is not a zero (#E = 8): never certified, for any seed
    for (u64 seed = 0; seed < 200; ++seed) CHECK(!ec2_lisonek_test(F, gf2_one(), seed));

    // a = w is a zero: certified with frequency about 1/2
    int hits = 0;
    for (u64 seed = 0; seed < 400; ++seed) hits += ec2_lisonek_test(F, w, seed);
    CHECK(hits > 140);
    CHECK(hits < 260);

    // inconclusive branch: a seed whose draw is the 2-torsion point
    bool exercised = false;
    for (u64 seed = 0; seed < 400 && !exercised; ++seed) {
        SplitMix64 rng(seed);
        if (ec2_random_point(F, w, rng).x.is_zero()) {
            CHECK(!ec2_lisonek_test(F, w, seed));
            exercised = true;
        }
    }
    CHECK(exercised);

    CHECK_THROWS_AS(ec2_lisonek_test(F, gf2_zero(), 1), ZeroArgument);
}

TEST_CASE("randomized baseline certifies only true zeros (n = 3..6, all seeds x elements)") {
    for (int n = 3; n <= 6; ++n) {
        auto F = setup_gf2(n);
        for (u64 i = 1; i < (u64(1) << n); ++i) {
            Gf2El a = gf2_from_index(F, i);
            bool truth = ec2_is_zero(F, a);
            int certs = 0;
            for (u64 seed = 0; seed < 20; ++seed) {
                bool c = ec2_lisonek_test(F, a, seed);
                if (c) CHECK(truth); // one-sided: true certifies a zero
                certs += c;
            }
            if (truth) CHECK(certs > 0);
        }
    }
}

} // TEST_SUITE
