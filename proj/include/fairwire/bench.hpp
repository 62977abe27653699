#pragma once

#include "fairwire/rational.hpp"

#include <cstdint>
#include <vector>

namespace fairwire {

struct BenchRow {
    int n = 0;
    Rational epsilon;
    std::uint64_t seed = 0;
    std::int64_t value_sum_rounded = 0;   // v_N of the rounded run
    std::size_t cells = 0;                // allocated table cells
    std::size_t cell_bound = 0;           // n * (floor(n^2/eps) + 1)
    std::uint64_t updates = 0;            // cell-update operations
    std::uint64_t update_bound = 0;       // n * (v_N + 1)^2
    double millis = 0.0;
    Rational value;                       // packing value, original scale
};

/// One rounded-solve timing on a seeded random tree with integer item values
/// in [1, value_max].
BenchRow run_bench_case(int n, const Rational& epsilon, std::int64_t value_max,
                        std::uint64_t seed);

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, const Rational& epsilon,
                                std::int64_t value_max, std::uint64_t seed);

}  // namespace fairwire
