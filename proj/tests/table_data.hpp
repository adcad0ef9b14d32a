#pragma once

#include <cstdint>
#include <vector>

// Reference distribution of Sylow-height divisibility counts:
// row n (1-based), cell k-1 holds #{a in F(p^n)^x : p^k | #E(a)}, k = 1..n.
// Every cell is independently recomputable from the brute-force oracles;
// the acceptance suite cross-checks the fast walks against both.

inline const std::vector<std::vector<std::int64_t>> kTable2adic = {
    {1},
    {3, 3},
    {7, 7, 3},
    {15, 15, 7, 5},
    {31, 31, 15, 5, 5},
    {63, 63, 31, 15, 12, 12},
    {127, 127, 63, 35, 14, 14, 14},
    {255, 255, 127, 55, 21, 16, 16, 16},
    {511, 511, 255, 135, 63, 18, 18, 18, 18},
    {1023, 1023, 511, 255, 125, 65, 60, 60, 60, 60},
    {2047, 2047, 1023, 495, 253, 132, 55, 55, 55, 55, 55},
    {4095, 4095, 2047, 1055, 495, 252, 84, 72, 72, 72, 72, 72},
    {8191, 8191, 4095, 2015, 1027, 481, 247, 52, 52, 52, 52, 52, 52},
};

inline const std::vector<std::vector<std::int64_t>> kTable3adic = {
    {2},
    {8, 2},
    {26, 8, 3},
    {80, 26, 4, 4},
    {242, 80, 35, 15, 15},
    {728, 242, 83, 24, 24, 24},
    {2186, 728, 266, 77, 21, 21, 21},
    {6560, 2186, 692, 252, 48, 48, 48, 48},
    {19682, 6560, 2168, 741, 270, 108, 108, 108, 108},
    {59048, 19682, 6605, 2065, 575, 100, 100, 100, 100, 100},
    {177146, 59048, 19547, 6369, 2596, 924, 264, 264, 264, 264, 264},
};
