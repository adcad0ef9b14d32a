#pragma once

#include <cstdint>
#include <vector>

#include "kzero/gf2.hpp"
#include "kzero/gf3.hpp"

namespace kzero {

// Brute-force reference implementations: ground truth for every fast-path
// result at desk scale. Everything here is O(p^n) or worse per call.

// K(a) = 1 + sum_{x != 0} zeta^Tr(1/x + a*x), an exact integer. a = 0 is
// allowed (K(0) = 0 for p = 2, used by the column-4 identity).
std::int64_t kloosterman_naive(const FieldCtx2 &F, const Gf2El &a);
std::int64_t kloosterman_naive(const FieldCtx3 &F, const Gf3El &a);

// #E(a) including the identity, by solution counting over all x.
// Equals p^n + K(a). Throws ZeroArgument.
std::int64_t curve_order_naive(const FieldCtx2 &F, const Gf2El &a);
std::int64_t curve_order_naive(const FieldCtx3 &F, const Gf3El &a);

int sylow_order_naive(const FieldCtx2 &F, const Gf2El &a); // ord_2(#E)
int sylow_order_naive(const FieldCtx3 &F, const Gf3El &a); // ord_3(#E)

// Every Kloosterman zero of F(2^n) at once: fast Walsh-Hadamard transform of
// the sign vector of x -> Tr(1/x), with the x = 0 slot set to +1 so the
// transform value in direction a is exactly K(a). The direction index of a
// is the bit vector (Tr(a*t^i))_i. Result sorted by element encoding.
// Throws DegreeTooLarge when n exceeds max_degree (memory cap).
std::vector<Gf2El> wht_all_zeros(const FieldCtx2 &F, int max_degree = 28);

} // namespace kzero
