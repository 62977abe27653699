#include "fairwire/leximin.hpp"

#include "fairwire/errors.hpp"
#include "fairwire/instances.hpp"

#include <doctest.h>

#include <cmath>

using namespace fairwire;

namespace {

Instance three_agent_instance() {
    return Instance::make({2, 2, 2}, 4, {{kStation, 1}, {1, 2}, {kStation, 3}});
}

void check_report_consistency(const Instance& inst, const SolveReport& report) {
    CHECK(verify_plan(inst, report.plan).ok());
    CHECK(utilities_of(inst, report.plan).values == report.utilities.values);
    Rational previous = 0;
    for (const auto& stage : report.stages) {
        CHECK(stage.optimum >= previous);
        previous = stage.optimum;
    }
}

// No feasible configuration may price above the stage threshold once the
// stage has been certified (scaled by the oracle's factor in rounding mode).
void check_pricing_soundness(const Instance& inst, const SolveReport& report) {
    const std::vector<Configuration> all = enumerate_feasible(inst, 12);
    for (const auto& stage : report.stages) {
        Rational best = 0;
        for (const auto& config : all) {
            Rational value = 0;
            for (int id : config.members)
                value += stage.final_weights[static_cast<std::size_t>(id - 1)];
            if (value > best) best = value;
        }
        CHECK(best <= stage.final_threshold / report.alpha);
    }
}

}  // namespace

TEST_CASE("worked example: exact solves reach (1/2, 1/2, 1)") {
    const Instance inst = three_agent_instance();
    const std::vector<Rational> expected{Rational(1, 2), Rational(1, 2), Rational(1)};

    const SolveReport priced = solve_leximin(inst, Rational(0), OracleMode::exact);
    CHECK(priced.utilities.sorted() == expected);
    CHECK(priced.alpha == 1);
    check_report_consistency(inst, priced);
    check_pricing_soundness(inst, priced);

    const SolveReport full = solve_leximin_exact(inst);
    CHECK(full.utilities.sorted() == expected);
    check_report_consistency(inst, full);
    CHECK(leximin_compare(priced.utilities, full.utilities) == LeximinOrder::equivalent);

    // agent 1 rides along in both halves
    CHECK(full.utilities.values[0] == Rational(1));
}

TEST_CASE("tiny instances with known optima") {
    const Instance single = Instance::make({1}, 1, {{kStation, 1}});
    const SolveReport single_report = solve_leximin_exact(single);
    CHECK(single_report.utilities.values == std::vector<Rational>{Rational(1)});
    REQUIRE(single_report.plan.entries.size() == 1);
    CHECK(single_report.plan.entries[0].config == Configuration::of({1}));
    CHECK(single_report.plan.entries[0].time == 1);

    const Instance pair = Instance::make({3, 3}, 3, {{kStation, 1}, {kStation, 2}});
    CHECK(solve_leximin_exact(pair).utilities.sorted() ==
          std::vector<Rational>{Rational(1, 2), Rational(1, 2)});

    const Instance star4 =
        Instance::make({2, 2, 2, 2}, 4,
                       {{kStation, 1}, {kStation, 2}, {kStation, 3}, {kStation, 4}});
    const SolveReport star_report = solve_leximin(star4, Rational(0), OracleMode::exact);
    CHECK(star_report.utilities.sorted() ==
          std::vector<Rational>(4, Rational(1, 2)));
    check_report_consistency(star4, star_report);

    const Instance triple =
        Instance::make({2, 2, 2}, 3, {{kStation, 1}, {kStation, 2}, {kStation, 3}});
    CHECK(solve_leximin_exact(triple).utilities.sorted() ==
          std::vector<Rational>(3, Rational(1, 3)));
}

TEST_CASE("a fully supplied tree connects everyone all the time") {
    const Instance inst = gen_random_tree(6, 42, 1, 5, SupplyMode::of_fraction(Rational(1)));
    REQUIRE_FALSE(inst.oversubscribed());
    const SolveReport report = solve_leximin(inst, Rational(0), OracleMode::exact);
    CHECK(report.utilities.values == std::vector<Rational>(6, Rational(1)));
    check_report_consistency(inst, report);
}

TEST_CASE("zero supply still yields a valid all-zero plan") {
    const Instance inst = Instance::make({2, 1}, 0, {{kStation, 1}, {1, 2}});
    const SolveReport report = solve_leximin(inst, Rational(0), OracleMode::exact);
    CHECK(report.utilities.values == std::vector<Rational>(2, Rational(0)));
    check_report_consistency(inst, report);
}

TEST_CASE("column generation agrees with the full pool on random trees") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const int n = 2 + static_cast<int>(seed % 6);
        const Instance inst = gen_random_tree(n, seed * 53 + 11, 1, 6);
        const SolveReport priced = solve_leximin(inst, Rational(0), OracleMode::exact);
        const SolveReport full = solve_leximin_exact(inst);
        CAPTURE(seed);
        CHECK(leximin_compare(priced.utilities, full.utilities) == LeximinOrder::equivalent);
        check_report_consistency(inst, priced);
        check_report_consistency(inst, full);
        check_pricing_soundness(inst, priced);
    }
}

TEST_CASE("rounding-oracle mode stays within its advertised factor") {
    const Rational eps(1, 10);
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const int n = 2 + static_cast<int>(seed % 5);
        const Instance inst = gen_random_tree(n, seed * 97 + 3, 1, 6);
        const SolveReport approx = solve_leximin(inst, eps, OracleMode::fptas);
        const SolveReport exact = solve_leximin_exact(inst);
        CHECK(approx.alpha == Rational(9, 10));
        check_report_consistency(inst, approx);
        const auto approx_sorted = approx.utilities.sorted();
        const auto exact_sorted = exact.utilities.sorted();
        for (std::size_t i = 0; i < approx_sorted.size(); ++i) {
            CAPTURE(seed);
            CHECK(approx_sorted[i] >= (Rational(1) - eps) * exact_sorted[i]);
        }
    }
    CHECK_THROWS_AS(solve_leximin(three_agent_instance(), Rational(2), OracleMode::fptas),
                    InputError);
}

TEST_CASE("egalitarian mode reports the max-min value") {
    const PartitionInstance yes = gen_partition_reduction({2, 2, 2, 2});
    const SolveReport yes_report = solve_egalitarian(yes.instance, Rational(0), OracleMode::exact);
    CHECK(yes_report.utilities.min() == Rational(1, 2));
    REQUIRE(yes_report.stages.size() == 1);
    CHECK(yes_report.stages[0].optimum == Rational(1, 2));
    CHECK(verify_plan(yes.instance, yes_report.plan).ok());

    const PartitionInstance no = gen_partition_reduction({2, 2, 2});
    CHECK(solve_egalitarian(no.instance, Rational(0), OracleMode::exact).utilities.min() ==
          Rational(1, 3));

    const Instance single = Instance::make({1}, 1, {{kStation, 1}});
    CHECK(solve_egalitarian(single, Rational(0), OracleMode::exact).utilities.min() == 1);
}

TEST_CASE("egalitarian value equals the smallest exact leximin utility") {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const int n = 2 + static_cast<int>(seed % 6);
        const Instance inst = gen_random_tree(n, seed * 71 + 29, 1, 6);
        const SolveReport egal = solve_egalitarian(inst, Rational(0), OracleMode::exact);
        const SolveReport full = solve_leximin_exact(inst);
        CHECK(egal.stages[0].optimum == full.utilities.sorted().front());
    }
}

TEST_CASE("enumeration refuses oversized instances") {
    const Instance big = gen_random_tree(13, 1, 1, 3);
    CHECK_THROWS_AS(solve_leximin_exact(big), InputError);
    CHECK_NOTHROW(enumerate_feasible(big, 13));
}

TEST_CASE("floating mode tracks the exact answer") {
    const Instance inst = three_agent_instance();
    const SolveReport floating =
        solve_leximin(inst, Rational(0), OracleMode::exact, NumericMode::floating);
    CHECK(verify_plan(inst, floating.plan).ok());  // times renormalized to sum exactly 1
    const SolveReport exact = solve_leximin_exact(inst);
    const auto fs = floating.utilities.sorted();
    const auto es = exact.utilities.sorted();
    for (std::size_t i = 0; i < fs.size(); ++i)
        CHECK(std::abs(to_double(fs[i] - es[i])) < 1e-6);
}
