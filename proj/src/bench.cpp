#include "fairwire/bench.hpp"

#include "fairwire/geoknapsack.hpp"
#include "fairwire/instances.hpp"

#include <chrono>

namespace fairwire {

BenchRow run_bench_case(int n, const Rational& epsilon, std::int64_t value_max,
                        std::uint64_t seed) {
    const Instance instance = gen_random_tree(n, seed, 1, 10, SupplyMode::of_fraction({1, 2}));
    const std::vector<Rational> values = gen_random_values(n, seed ^ 0x9e3779b97f4a7c15ull, value_max);
    const KnapsackInput input = KnapsackInput::from_instance(instance, values);

    const auto start = std::chrono::steady_clock::now();
    const FptasResult result = solve_fptas(input, epsilon);
    const auto stop = std::chrono::steady_clock::now();

    BenchRow row;
    row.n = n;
    row.epsilon = epsilon;
    row.seed = seed;
    row.value_sum_rounded = result.rounded_value_sum;
    row.cells = result.table_cells;
    row.cell_bound = static_cast<std::size_t>(n) *
                     static_cast<std::size_t>(floor_to_int64(Rational(n) * Rational(n) / epsilon) + 1);
    row.updates = result.table_updates;
    const std::uint64_t width = static_cast<std::uint64_t>(result.rounded_value_sum) + 1;
    row.update_bound = static_cast<std::uint64_t>(n) * width * width;
    row.millis =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(stop - start).count();
    row.value = result.packing.total_value;
    return row;
}

std::vector<BenchRow> run_bench(const std::vector<int>& sizes, const Rational& epsilon,
                                std::int64_t value_max, std::uint64_t seed) {
    std::vector<BenchRow> rows;
    rows.reserve(sizes.size());
    for (int n : sizes) rows.push_back(run_bench_case(n, epsilon, value_max, seed));
    return rows;
}

}  // namespace fairwire
