#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kzero/errors.hpp"

namespace kzero {

// Divisibility counts and height statistics of the Sylow p-subgroup trees,
// computed by exhaustive or sampled runs of the halving/thirding walks.

struct DivisibilityRow {
    int p = 0;
    int n = 0;
    // counts[k-1] = #{a in F(p^n)^x : p^k divides #E(a)}, k = 1..n.
    // Heights are clamped to n (relevant only for p = 2, n = 2, where the
    // element a = 1 has #E = 8).
    std::vector<std::int64_t> counts;

    bool operator==(const DivisibilityRow &) const = default;
};

// Exhaustive scan caps: p = 2 up to n = 24, p = 3 up to n = 13.
DivisibilityRow divisibility_table(int p, int n, int workers = 1);

// (2^n - (-1+i)^n - (-1-i)^n)/4: the number of a in F(2^n) (a = 0 included)
// with 16 | #E(a).
std::int64_t column4_closed_form(int n);

// #{a in F(p^n)^x : K(a) = 0}.
std::int64_t zero_count(int p, int n, int workers = 1);

struct HeightStats {
    double mean = 0;
    double variance = 0; // population variance of the sample
};

// Sampled mean/variance of the tree height h over uniform nonzero a.
HeightStats height_stats(int p, int n, std::int64_t samples, std::uint64_t seed);

struct ExactHeightStats {
    std::int64_t height_sum = 0; // row sum of the divisibility table
    std::int64_t population = 0; // p^n - 1
    double mean = 0;
    double variance = 0;
};

// Exact statistics from the divisibility-table row sums.
ExactHeightStats exact_height_stats(int p, int n, int workers = 1);

// CSV schema: header p,n,k,count, one row per (n,k), n = 1..n_max.
std::string table_csv(int p, int n_max, int workers = 1);
// JSON mirror of the same cells.
std::string table_json(int p, int n_max, int workers = 1);

} // namespace kzero
