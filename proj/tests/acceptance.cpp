// Acceptance suite: runs every gate criterion and prints one line per result.
// Usage: fairwire_acceptance <path-to-cli-binary>

#include "fairwire/bench.hpp"
#include "fairwire/geoknapsack.hpp"
#include "fairwire/instances.hpp"
#include "fairwire/leximin.hpp"
#include "fairwire/lpcore.hpp"
#include "fairwire/model.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace fairwire;
namespace fs = std::filesystem;

namespace {

struct Check {
    std::vector<std::string> failures;
    std::size_t assertions = 0;

    void require(bool ok, const std::string& message) {
        ++assertions;
        if (!ok) failures.push_back(message);
    }
};

std::string cli_path;
fs::path work_dir;

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const fs::path out_file = work_dir / "cli_output.txt";
    const std::string command = cli_path + " " + args + " > " + out_file.string() + " 2>&1";
    const int raw = std::system(command.c_str());
    CliResult result;
    result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(out_file);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    result.output = buffer.str();
    return result;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// ---------------------------------------------------------------------------

Instance three_agent_instance() {
    return Instance::make({2, 2, 2}, 4, {{kStation, 1}, {1, 2}, {kStation, 3}});
}

void criterion_worked_example(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const Instance inst = three_agent_instance();

    const SolveReport report = solve_leximin(inst, Rational(0), OracleMode::exact);
    const std::vector<Rational> expected{Rational(1, 2), Rational(1, 2), Rational(1)};
    c.require(report.utilities.sorted() == expected, "sorted utilities differ from (1/2,1/2,1)");
    c.require(verify_plan(inst, report.plan).ok(), "solver plan fails verification");
    c.require(report.alpha == 1, "exact mode must claim factor 1");

    // the hand-written two-configuration plan reproduces utilities (1, 1/2, 1/2)
    AllocationPlan manual;
    manual.entries.push_back({Configuration::of({1, 2}), Rational(1, 2)});
    manual.entries.push_back({Configuration::of({1, 3}), Rational(1, 2)});
    c.require(verify_plan(inst, manual).ok(), "half/half plan fails verification");
    c.require(utilities_of(inst, manual).values ==
                  std::vector<Rational>{Rational(1), Rational(1, 2), Rational(1, 2)},
              "half/half plan utilities are not (1, 1/2, 1/2)");

    const double elapsed = seconds_since(start);
    c.require(elapsed < 1.0, "worked example took " + std::to_string(elapsed) + "s (budget 1s)");
}

void criterion_table_vs_bruteforce(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    int mismatches = 0;
    for (std::uint64_t trial = 0; trial < 500; ++trial) {
        const int n = 1 + static_cast<int>(trial % 12);
        const Instance inst = gen_random_tree(n, trial * 1009 + 7, 1, 8);
        std::mt19937_64 rng(trial * 31 + 5);
        std::vector<Rational> values;
        for (int i = 0; i < n; ++i) values.emplace_back(static_cast<int>(rng() % 21));
        const KnapsackInput input = KnapsackInput::from_instance(inst, values);

        const ExactSolveResult exact = solve_exact_integer(input, renumber(input.tree));
        const Packing brute = solve_bruteforce(input);
        if (exact.packing.total_value != brute.total_value ||
            exact.packing.total_size != brute.total_size)
            ++mismatches;
    }
    c.require(mismatches == 0,
              std::to_string(mismatches) + "/500 trials disagreed with enumeration");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 60.0, "took " + std::to_string(elapsed) + "s (budget 60s)");
}

void criterion_rounding_guarantee(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Rational> epsilons{Rational(1, 2), Rational(1, 4), Rational(1, 10)};
    int value_violations = 0;
    int bound_violations = 0;
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(trial % 10);
        const Instance inst = gen_random_tree(n, trial * 523 + 1, 1, 8);
        std::mt19937_64 rng(trial * 17 + 3);
        std::vector<Rational> values;
        for (int i = 0; i < n; ++i)
            values.emplace_back(static_cast<int>(rng() % 41), 1 + static_cast<int>(rng() % 5));
        const KnapsackInput input = KnapsackInput::from_instance(inst, values);
        const Packing best = solve_bruteforce(input);
        for (const Rational& eps : epsilons) {
            const FptasResult approx = solve_fptas(input, eps);
            if (approx.packing.total_value < (Rational(1) - eps) * best.total_value)
                ++value_violations;
            const std::size_t cell_bound =
                static_cast<std::size_t>(n) *
                static_cast<std::size_t>(floor_to_int64(Rational(n) * Rational(n) / eps) + 1);
            if (approx.table_cells > cell_bound) ++bound_violations;
        }
    }
    c.require(value_violations == 0,
              std::to_string(value_violations) + " trials fell below (1-eps) * OPT");
    c.require(bound_violations == 0,
              std::to_string(bound_violations) + " trials exceeded the cell bound");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 120.0, "took " + std::to_string(elapsed) + "s (budget 120s)");
}

std::vector<Instance> leximin_test_instances() {
    std::vector<Instance> out;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(trial % 7);  // up to 8 agents
        out.push_back(gen_random_tree(n, trial * 7919 + 13, 1, 6));
    }
    return out;
}

std::vector<SolveReport> exact_leximin_reports;  // shared between criteria 4 and 5

void criterion_leximin_equivalence(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Instance> instances = leximin_test_instances();
    exact_leximin_reports.clear();
    int mismatches = 0;
    for (const Instance& inst : instances) {
        const SolveReport priced = solve_leximin(inst, Rational(0), OracleMode::exact);
        const SolveReport full = solve_leximin_exact(inst);
        exact_leximin_reports.push_back(full);
        if (leximin_compare(priced.utilities, full.utilities) != LeximinOrder::equivalent)
            ++mismatches;
        if (!verify_plan(inst, priced.plan).ok() || !verify_plan(inst, full.plan).ok())
            ++mismatches;
    }
    c.require(mismatches == 0,
              std::to_string(mismatches) + "/100 instances were not leximin-equivalent");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 600.0, "took " + std::to_string(elapsed) + "s (budget 600s)");
}

void criterion_leximin_approximation(Check& c) {
    const Rational eps(1, 10);
    const std::vector<Instance> instances = leximin_test_instances();
    int violations = 0;
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const SolveReport approx = solve_leximin(instances[k], eps, OracleMode::fptas);
        if (!verify_plan(instances[k], approx.plan).ok()) ++violations;
        const std::vector<Rational> approx_sorted = approx.utilities.sorted();
        const std::vector<Rational> exact_sorted =
            exact_leximin_reports[k].utilities.sorted();
        for (std::size_t i = 0; i < approx_sorted.size(); ++i)
            if (approx_sorted[i] < (Rational(1) - eps) * exact_sorted[i]) {
                ++violations;
                break;
            }
    }
    c.require(violations == 0,
              std::to_string(violations) + "/100 instances broke the 0.9 entrywise bound");
}

bool has_equal_sum_bipartition(const std::vector<std::int64_t>& demands) {
    std::int64_t total = 0;
    for (std::int64_t d : demands) total += d;
    if (total % 2 != 0) return false;
    const std::int64_t half = total / 2;
    std::vector<char> reachable(static_cast<std::size_t>(half) + 1, 0);
    reachable[0] = 1;
    for (std::int64_t d : demands)
        for (std::int64_t s = half; s >= d; --s)
            if (reachable[static_cast<std::size_t>(s - d)]) reachable[static_cast<std::size_t>(s)] = 1;
    return reachable[static_cast<std::size_t>(half)];
}

void criterion_partition_equivalence(Check& c) {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(20250810);
    int mismatches = 0, yes_cases = 0, no_cases = 0;
    for (int sampled = 0; sampled < 200;) {
        const int n = 2 + static_cast<int>(rng() % 9);  // up to 10 agents
        std::vector<std::int64_t> demands;
        for (int i = 0; i < n; ++i) demands.push_back(1 + static_cast<std::int64_t>(rng() % 8));
        std::int64_t total = 0;
        for (std::int64_t d : demands) total += d;
        if (total % 2 != 0) continue;  // only even sums are informative here
        ++sampled;

        const bool expected = has_equal_sum_bipartition(demands);
        (expected ? yes_cases : no_cases) += 1;
        const PartitionInstance generated = gen_partition_reduction(demands);
        const SolveReport report =
            solve_egalitarian(generated.instance, Rational(0), OracleMode::exact);
        const bool reached_half = report.utilities.min() >= Rational(1, 2);
        if (reached_half != expected) ++mismatches;
    }
    c.require(mismatches == 0, std::to_string(mismatches) + "/200 cases broke the equivalence");
    c.require(yes_cases > 0 && no_cases > 0, "sampling failed to cover both outcomes");
    const double elapsed = seconds_since(start);
    c.require(elapsed < 300.0, "took " + std::to_string(elapsed) + "s (budget 300s)");
}

void criterion_scaling(Check& c) {
    const std::vector<int> sizes{25, 50, 100};
    const Rational eps(1, 10);
    const std::vector<BenchRow> rows = run_bench(sizes, eps, 100, 424242);
    for (const BenchRow& row : rows) {
        c.require(row.updates <= row.update_bound,
                  "n=" + std::to_string(row.n) + ": updates exceed the per-cell work bound");
        c.require(row.cells <= row.cell_bound,
                  "n=" + std::to_string(row.n) + ": cells exceed the table bound");
    }
    c.require(rows.back().millis < 300000.0,
              "n=100 rounded solve took " + std::to_string(rows.back().millis) + "ms (budget 5min)");
    for (std::size_t k = 1; k < rows.size(); ++k) {
        const double measured_growth =
            static_cast<double>(rows[k].updates) / static_cast<double>(rows[k - 1].updates);
        const double bound_growth = static_cast<double>(rows[k].update_bound) /
                                    static_cast<double>(rows[k - 1].update_bound);
        c.require(measured_growth <= bound_growth,
                  "work grew faster than the bound between n=" + std::to_string(rows[k - 1].n) +
                      " and n=" + std::to_string(rows[k].n));
    }
}

void criterion_verifier(Check& c) {
    // Library-level: plans from every solver mode must verify.
    const Instance inst = three_agent_instance();
    for (const OracleMode mode : {OracleMode::exact, OracleMode::fptas}) {
        const Rational eps = mode == OracleMode::fptas ? Rational(1, 10) : Rational(0);
        c.require(verify_plan(inst, solve_leximin(inst, eps, mode).plan).ok(),
                  "leximin plan failed verification");
        c.require(verify_plan(inst, solve_egalitarian(inst, eps, mode).plan).ok(),
                  "egalitarian plan failed verification");
    }

    // CLI-level: solve then verify through the binary.
    const fs::path inst_path = work_dir / "worked.json";
    InstanceFile file;
    file.instance = inst;
    file.epsilon = Rational(1, 10);
    write_text_file(inst_path, serialize_instance(file));

    const fs::path plan_path = work_dir / "plan.json";
    for (const std::string& flags :
         {std::string("--mode leximin --oracle exact"),
          std::string("--mode leximin --oracle fptas"),
          std::string("--mode egalitarian --oracle exact"),
          std::string("--mode egalitarian --oracle fptas")}) {
        const CliResult solved = run_cli("solve -i " + inst_path.string() + " -o " +
                                         plan_path.string() + " " + flags + " --format json");
        c.require(solved.exit_code == 0, "solve " + flags + " exited " +
                                             std::to_string(solved.exit_code));
        const CliResult verified =
            run_cli("verify -i " + inst_path.string() + " -p " + plan_path.string());
        c.require(verified.exit_code == 0,
                  "verify after solve " + flags + " exited " + std::to_string(verified.exit_code));
    }

    // Hand-crafted violations must map to the right class and exit code 1.
    const auto violating = [&](const std::string& body, const std::string& expect) {
        const fs::path bad_path = work_dir / "bad_plan.json";
        write_text_file(bad_path, body);
        const CliResult result = run_cli("verify -i " + inst_path.string() + " -p " +
                                         bad_path.string() + " --format json");
        c.require(result.exit_code == 1, expect + " plan exited " +
                                             std::to_string(result.exit_code) + " instead of 1");
        c.require(result.output.find("\"" + expect + "\"") != std::string::npos,
                  expect + " violation class missing from report: " + result.output);
    };
    violating(R"({"format":"fairwire-plan/1","entries":[)"
              R"({"members":[2,3],"time":"1/2"},{"members":[1],"time":"1/2"}]})",
              "geographic");
    violating(R"({"format":"fairwire-plan/1","entries":[)"
              R"({"members":[1,2,3],"time":"1"}]})",
              "demand");
    violating(R"({"format":"fairwire-plan/1","entries":[)"
              R"({"members":[1],"time":"0.9"}]})",
              "sum");

    // parse failures exit 2
    const fs::path broken = work_dir / "broken.json";
    write_text_file(broken, "{not json");
    c.require(run_cli("solve -i " + broken.string()).exit_code == 2,
              "malformed instance should exit 2");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: fairwire_acceptance <path-to-cli>\n";
        return 2;
    }
    cli_path = argv[1];
    work_dir = fs::temp_directory_path() /
               ("fairwire-acceptance-" + std::to_string(::getpid()));
    fs::create_directories(work_dir);

    struct Criterion {
        int id;
        const char* name;
        std::function<void(Check&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "worked example solves to (1/2, 1/2, 1) exactly", criterion_worked_example},
        {2, "table solve matches enumeration on 500 random trees", criterion_table_vs_bruteforce},
        {3, "rounded solve keeps (1-eps)*OPT and the table bound", criterion_rounding_guarantee},
        {4, "column generation is leximin-equivalent to the full pool",
         criterion_leximin_equivalence},
        {5, "rounding-oracle leximin stays entrywise above 0.9x exact",
         criterion_leximin_approximation},
        {6, "half-supply stars reach 1/2 exactly on bipartitionable demands",
         criterion_partition_equivalence},
        {7, "rounded solve scales within its work bound up to n=100", criterion_scaling},
        {8, "every emitted plan verifies; crafted violations classify", criterion_verifier},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check);
        } catch (const std::exception& e) {
            check.failures.push_back(std::string("exception: ") + e.what());
        }
        const double elapsed = seconds_since(start);
        if (check.failures.empty()) {
            std::printf("[PASS] criterion %d: %s (%.1fs, %zu checks)\n", criterion.id,
                        criterion.name, elapsed, check.assertions);
        } else {
            ++failed;
            std::printf("[FAIL] criterion %d: %s (%.1fs)\n", criterion.id, criterion.name,
                        elapsed);
            for (const std::string& failure : check.failures)
                std::printf("       - %s\n", failure.c_str());
        }
        std::fflush(stdout);
    }

    std::error_code ec;
    fs::remove_all(work_dir, ec);
    if (failed == 0) {
        std::printf("all %zu criteria passed\n", criteria.size());
        return 0;
    }
    std::printf("%d criteria failed\n", failed);
    return 1;
}
