#include "kzero/oracle.hpp"

namespace kzero {

namespace {

// x * t for single-word fields (the WHT index loop lives at n <= 28).
Gf2El mul_by_t(const FieldCtx2 &F, const Gf2El &x) {
    Gf2El r = x;
    std::uint64_t w = r.w[0] << 1;
    if ((w >> F.n) & 1) w ^= F.modulus[0];
    r.w[0] = w;
    return r;
}

} // namespace

std::int64_t kloosterman_naive(const FieldCtx2 &F, const Gf2El &a) {
    const std::uint64_t N = std::uint64_t(1) << F.n;
    std::int64_t sum = 1;
    for (std::uint64_t i = 1; i < N; ++i) {
        Gf2El x = gf2_from_index(F, i);
        Gf2El v = gf2_add(gf2_inv(F, x), gf2_mul(F, a, x));
        sum += gf2_trace(F, v) ? -1 : 1;
    }
    return sum;
}

std::int64_t kloosterman_naive(const FieldCtx3 &F, const Gf3El &a) {
    std::uint64_t N = 1;
    for (int i = 0; i < F.n; ++i) N *= 3;
    std::int64_t cnt[3] = {0, 0, 0};
    for (std::uint64_t i = 1; i < N; ++i) {
        Gf3El x = gf3_from_index(F, i);
        Gf3El v = gf3_add(gf3_inv(F, x), gf3_mul(F, a, x));
        ++cnt[gf3_trace(F, v)];
    }
    if (cnt[1] != cnt[2])
        throw Error("ternary Kloosterman sum is not real (N1 != N2)");
    return 1 + cnt[0] - cnt[1];
}

std::int64_t curve_order_naive(const FieldCtx2 &F, const Gf2El &a) {
    if (a.is_zero()) throw ZeroArgument();
    // identity + the single x = 0 point (0, sqrt(a)); for x != 0 substitute
    // y = x*z: two points iff Tr(x + a/x^2) = 0.
    const std::uint64_t N = std::uint64_t(1) << F.n;
    std::int64_t order = 2;
    for (std::uint64_t i = 1; i < N; ++i) {
        Gf2El x = gf2_from_index(F, i);
        Gf2El c = gf2_add(x, gf2_mul(F, a, gf2_square(F, gf2_inv(F, x))));
        if (gf2_trace(F, c) == 0) order += 2;
    }
    return order;
}

std::int64_t curve_order_naive(const FieldCtx3 &F, const Gf3El &a) {
    if (a.is_zero()) throw ZeroArgument();
    std::uint64_t N = 1;
    for (int i = 0; i < F.n; ++i) N *= 3;
    // histogram of squares, then count y solutions of y^2 = x^3 + x^2 - a
    std::vector<std::uint8_t> sq(N, 0);
    for (std::uint64_t i = 0; i < N; ++i) {
        Gf3El y = gf3_from_index(F, i);
        ++sq[gf3_to_index(F, gf3_mul(F, y, y))];
    }
    std::int64_t order = 1;
    for (std::uint64_t i = 0; i < N; ++i) {
        Gf3El x = gf3_from_index(F, i);
        Gf3El rhs = gf3_sub(gf3_add(gf3_cube(F, x), gf3_mul(F, x, x)), a);
        order += sq[gf3_to_index(F, rhs)];
    }
    return order;
}

int sylow_order_naive(const FieldCtx2 &F, const Gf2El &a) {
    std::int64_t m = curve_order_naive(F, a);
    int h = 0;
    while (m % 2 == 0) {
        m /= 2;
        ++h;
    }
    return h;
}

int sylow_order_naive(const FieldCtx3 &F, const Gf3El &a) {
    std::int64_t m = curve_order_naive(F, a);
    int h = 0;
    while (m % 3 == 0) {
        m /= 3;
        ++h;
    }
    return h;
}

std::vector<Gf2El> wht_all_zeros(const FieldCtx2 &F, int max_degree) {
    if (F.n > max_degree)
        throw DegreeTooLarge("wht_all_zeros called with n = " + std::to_string(F.n) +
                             " above the cap " + std::to_string(max_degree));
    const std::size_t N = std::size_t(1) << F.n;
    std::vector<std::int32_t> f(N);
    f[0] = 1;
    for (std::size_t i = 1; i < N; ++i) {
        Gf2El x = gf2_from_index(F, i);
        f[i] = gf2_trace(F, gf2_inv(F, x)) ? -1 : 1;
    }
    for (std::size_t len = 1; len < N; len <<= 1) {
        for (std::size_t i = 0; i < N; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                std::int32_t u = f[j], v = f[j + len];
                f[j] = u + v;
                f[j + len] = u - v;
            }
        }
    }
    std::vector<Gf2El> zeros;
    for (std::size_t ai = 1; ai < N; ++ai) {
        Gf2El a = gf2_from_index(F, ai);
        std::size_t idx = 0;
        Gf2El m = a;
        for (int i = 0; i < F.n; ++i) {
            if (gf2_trace(F, m)) idx |= std::size_t(1) << i;
            m = mul_by_t(F, m);
        }
        if (f[idx] == 0) zeros.push_back(a);
    }
    return zeros;
}

} // namespace kzero
