// Command-line front end: solve, knapsack, verify, gen, bench.

#include "fairwire/bench.hpp"
#include "fairwire/errors.hpp"
#include "fairwire/geoknapsack.hpp"
#include "fairwire/instances.hpp"
#include "fairwire/leximin.hpp"
#include "fairwire/model.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;
using namespace fairwire;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct CliConfig {
    std::string input;
    std::string output;
    std::string eps_text;
    std::string mode = "leximin";
    std::string oracle = "exact";
    std::string format = "human";
    std::uint64_t seed = 1;

    // gen
    bool random = false;
    std::string partition_text;
    int n = 10;
    std::int64_t demand_min = 1;
    std::int64_t demand_max = 10;
    std::string supply_fraction_text;
    std::int64_t supply_value = -1;
    bool with_values = false;
    std::int64_t value_max = 100;

    // bench
    std::vector<int> bench_sizes;

    // verify
    std::string plan_path;

    bool json() const { return format == "json"; }
};

Rational resolve_epsilon(const CliConfig& config, const InstanceFile& file) {
    if (!config.eps_text.empty()) return parse_rational(config.eps_text);
    if (file.epsilon) return *file.epsilon;
    throw InputError("epsilon required: pass --eps or set \"epsilon\" in the instance file");
}

std::vector<std::string> rational_strings(const std::vector<Rational>& values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (const auto& v : values) out.push_back(format_rational(v));
    return out;
}

Json plan_to_json(const AllocationPlan& plan) {
    Json entries = Json::array();
    for (const auto& entry : plan.entries)
        entries.push_back(Json{{"members", entry.config.members},
                               {"time", format_rational(entry.time)}});
    return entries;
}

Json stages_to_json(const std::vector<StageRecord>& stages) {
    Json out = Json::array();
    for (const auto& stage : stages) {
        Json s;
        s["stage"] = stage.index;
        s["optimum"] = format_rational(stage.optimum);
        s["columns_added"] = stage.columns_added;
        s["lp_iterations"] = stage.lp_iterations;
        s["locked"] = stage.locked;
        out.push_back(std::move(s));
    }
    return out;
}

void print_report_human(const SolveReport& report, const std::string& mode) {
    std::cout << "mode: " << mode << "  alpha: " << format_rational(report.alpha) << "\n";
    std::cout << "utilities:";
    for (const auto& u : report.utilities.values) std::cout << " " << format_rational(u);
    std::cout << "\nsorted:   ";
    for (const auto& u : report.utilities.sorted()) std::cout << " " << format_rational(u);
    std::cout << "\n";
    if (mode == "egalitarian")
        std::cout << "egalitarian value r = " << format_rational(report.utilities.min()) << "\n";
    std::cout << "plan (" << report.plan.entries.size() << " configurations):\n";
    for (const auto& entry : report.plan.entries)
        std::cout << "  " << entry.config.to_string() << "  time " << format_rational(entry.time)
                  << "\n";
    std::cout << "stages:\n";
    for (const auto& stage : report.stages) {
        std::cout << "  stage " << stage.index << ": optimum "
                  << format_rational(stage.optimum) << ", columns added "
                  << stage.columns_added << ", LP iterations " << stage.lp_iterations
                  << ", locked {";
        for (std::size_t i = 0; i < stage.locked.size(); ++i)
            std::cout << (i ? "," : "") << stage.locked[i];
        std::cout << "}\n";
    }
}

int cmd_solve(const CliConfig& config) {
    const InstanceFile file = load_instance(config.input);
    const OracleMode oracle = config.oracle == "fptas" ? OracleMode::fptas : OracleMode::exact;
    Rational eps(0);
    if (oracle == OracleMode::fptas) eps = resolve_epsilon(config, file);

    SolveReport report;
    if (config.mode == "egalitarian")
        report = solve_egalitarian(file.instance, eps, oracle);
    else
        report = solve_leximin(file.instance, eps, oracle);

    if (!config.output.empty()) write_text_file(config.output, serialize_plan(report.plan));
    if (config.json()) {
        Json doc;
        doc["command"] = "solve";
        doc["mode"] = config.mode;
        doc["oracle"] = config.oracle;
        doc["epsilon"] = oracle == OracleMode::fptas ? Json(format_rational(eps)) : Json(nullptr);
        doc["alpha"] = format_rational(report.alpha);
        doc["utilities"] = rational_strings(report.utilities.values);
        doc["utilities_sorted"] = rational_strings(report.utilities.sorted());
        if (config.mode == "egalitarian")
            doc["egalitarian_value"] = format_rational(report.utilities.min());
        doc["plan"] = plan_to_json(report.plan);
        doc["stages"] = stages_to_json(report.stages);
        std::cout << doc.dump(2) << "\n";
    } else {
        print_report_human(report, config.mode);
        if (!config.output.empty()) std::cout << "plan written to " << config.output << "\n";
    }
    return kExitOk;
}

int cmd_knapsack(const CliConfig& config) {
    const InstanceFile file = load_instance(config.input);
    if (file.values.empty())
        throw InputError(config.input + ": knapsack mode needs per-agent \"value\" fields");
    const KnapsackInput input = KnapsackInput::from_instance(file.instance, file.values);

    Packing packing;
    std::string path;
    Rational eps(0);
    Rational theta(0);
    if (!config.eps_text.empty() || file.epsilon) {
        eps = resolve_epsilon(config, file);
        const FptasResult result = solve_fptas(input, eps);
        packing = result.packing;
        theta = result.theta;
        path = result.degenerate ? "degenerate" : "rounded";
    } else {
        if (!input.values_integral())
            throw InputError("values are not integers; pass --eps to run the rounding path");
        packing = solve_exact_integer(input, renumber(input.tree)).packing;
        path = "exact";
    }

    if (config.json()) {
        Json doc;
        doc["command"] = "knapsack";
        doc["path"] = path;
        doc["epsilon"] = path == "exact" ? Json(nullptr) : Json(format_rational(eps));
        doc["theta"] = path == "rounded" ? Json(format_rational(theta)) : Json(nullptr);
        doc["members"] = packing.members.members;
        doc["value"] = format_rational(packing.total_value);
        doc["size"] = packing.total_size;
        doc["capacity"] = input.capacity;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "path: " << path;
        if (path != "exact") std::cout << " (eps " << format_rational(eps) << ")";
        std::cout << "\npacking: " << packing.members.to_string() << "\nvalue: "
                  << format_rational(packing.total_value) << "\nsize: " << packing.total_size
                  << " / capacity " << input.capacity << "\n";
    }
    return kExitOk;
}

int cmd_verify(const CliConfig& config) {
    const InstanceFile file = load_instance(config.input);
    const AllocationPlan plan = load_plan(config.plan_path);
    const Verdict verdict = verify_plan(file.instance, plan);

    if (config.json()) {
        Json doc;
        doc["command"] = "verify";
        doc["ok"] = verdict.ok();
        Json violations = Json::array();
        for (const auto& v : verdict.violations)
            violations.push_back(Json{{"kind", to_string(v.kind)},
                                      {"entry", v.entry_index},
                                      {"detail", v.detail}});
        doc["violations"] = std::move(violations);
        std::cout << doc.dump(2) << "\n";
    } else if (verdict.ok()) {
        std::cout << "ok: plan is feasible and times sum to 1\n";
    } else {
        for (const auto& v : verdict.violations)
            std::cout << "violation [" << to_string(v.kind) << "] " << v.detail << "\n";
    }
    return verdict.ok() ? kExitOk : kExitVerification;
}

std::vector<std::int64_t> parse_demand_list(const std::string& text) {
    std::vector<std::int64_t> out;
    std::string token;
    for (char c : text + ",") {
        if (c == ',') {
            if (token.empty()) throw InputError("empty entry in demand list '" + text + "'");
            out.push_back(std::stoll(token));
            token.clear();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            token += c;
        } else {
            throw InputError("demand lists look like 2,2,2,2; got '" + text + "'");
        }
    }
    return out;
}

int cmd_gen(const CliConfig& config) {
    InstanceFile file;
    Json report;
    report["command"] = "gen";
    if (!config.partition_text.empty()) {
        const PartitionInstance generated = gen_partition_reduction(parse_demand_list(config.partition_text));
        file.instance = generated.instance;
        file.partition_trivial_no = generated.trivial_no;
        report["kind"] = "partition";
        report["trivial_no"] = generated.trivial_no;
    } else if (config.random) {
        SupplyMode supply;
        if (config.supply_value >= 0 && !config.supply_fraction_text.empty())
            throw InputError("--supply and --supply-fraction are mutually exclusive");
        if (config.supply_value >= 0)
            supply = SupplyMode::of_value(config.supply_value);
        else if (!config.supply_fraction_text.empty())
            supply = SupplyMode::of_fraction(parse_rational(config.supply_fraction_text));
        file.instance = gen_random_tree(config.n, config.seed, config.demand_min,
                                        config.demand_max, supply);
        if (config.with_values)
            file.values =
                gen_random_values(config.n, config.seed ^ 0x9e3779b97f4a7c15ull, config.value_max);
        report["kind"] = "random";
        report["seed"] = config.seed;
    } else {
        throw InputError("gen needs --random or --partition");
    }

    const std::string text = serialize_instance(file);
    if (config.output.empty() || config.output == "-") {
        std::cout << text;
        return kExitOk;
    }
    write_text_file(config.output, text);
    report["n"] = file.instance.agent_count();
    report["supply"] = file.instance.supply;
    report["output"] = config.output;
    if (config.json())
        std::cout << report.dump(2) << "\n";
    else
        std::cout << "wrote " << config.output << " (n=" << file.instance.agent_count()
                  << ", supply=" << file.instance.supply << ")\n";
    return kExitOk;
}

int cmd_bench(const CliConfig& config) {
    const Rational eps = config.eps_text.empty() ? Rational(1, 10)
                                                 : parse_rational(config.eps_text);
    std::vector<int> sizes = config.bench_sizes;
    if (sizes.empty()) sizes = {25, 50, 100};
    const std::vector<BenchRow> rows = run_bench(sizes, eps, config.value_max, config.seed);

    if (config.json()) {
        Json doc;
        doc["command"] = "bench";
        doc["epsilon"] = format_rational(eps);
        doc["seed"] = config.seed;
        doc["value_max"] = config.value_max;
        Json out = Json::array();
        for (const auto& row : rows) {
            Json r;
            r["n"] = row.n;
            r["value_sum_rounded"] = row.value_sum_rounded;
            r["cells"] = row.cells;
            r["cell_bound"] = row.cell_bound;
            r["updates"] = row.updates;
            r["update_bound"] = row.update_bound;
            r["millis"] = row.millis;
            r["value"] = format_rational(row.value);
            out.push_back(std::move(r));
        }
        doc["rows"] = std::move(out);
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "eps " << format_rational(eps) << ", seed " << config.seed << ", values <= "
                  << config.value_max << "\n";
        std::cout << "   n      v_N        cells   cell_bound       updates      update_bound    ms\n";
        for (const auto& row : rows) {
            std::printf("%4d %8lld %12zu %12zu %13llu %17llu %9.1f\n", row.n,
                        static_cast<long long>(row.value_sum_rounded), row.cells, row.cell_bound,
                        static_cast<unsigned long long>(row.updates),
                        static_cast<unsigned long long>(row.update_bound), row.millis);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fair division of electricity connection time on tree networks"};
    app.require_subcommand(1);
    CliConfig config;

    auto add_common = [&](CLI::App* cmd, bool with_input) {
        if (with_input)
            cmd->add_option("--input,-i", config.input, "instance file")->required();
        cmd->add_option("--output,-o", config.output, "output path");
        cmd->add_option("--format", config.format, "report format")
            ->check(CLI::IsMember({"human", "json"}));
    };

    CLI::App* solve = app.add_subcommand("solve", "compute a fair connection-time plan");
    add_common(solve, true);
    solve->add_option("--eps", config.eps_text, "accuracy parameter in (0,1)");
    solve->add_option("--mode", config.mode, "objective")
        ->check(CLI::IsMember({"leximin", "egalitarian"}));
    solve->add_option("--oracle", config.oracle, "pricing oracle")
        ->check(CLI::IsMember({"exact", "fptas"}));

    CLI::App* knapsack = app.add_subcommand("knapsack", "solve one weighted configuration problem");
    add_common(knapsack, true);
    knapsack->add_option("--eps", config.eps_text, "run the rounding path with this accuracy");

    CLI::App* verify = app.add_subcommand("verify", "check a plan against an instance");
    add_common(verify, true);
    verify->add_option("--plan,-p", config.plan_path, "plan file")->required();

    CLI::App* gen = app.add_subcommand("gen", "generate instance files");
    add_common(gen, false);
    gen->add_flag("--random", config.random, "random attachment tree");
    gen->add_option("--partition", config.partition_text,
                    "star instance from a demand list, e.g. 2,2,2,2");
    gen->add_option("--n", config.n, "agent count")->check(CLI::PositiveNumber);
    gen->add_option("--seed", config.seed, "RNG seed");
    gen->add_option("--demand-min", config.demand_min, "minimum demand");
    gen->add_option("--demand-max", config.demand_max, "maximum demand");
    gen->add_option("--supply-fraction", config.supply_fraction_text,
                    "supply = floor(fraction * total demand), default 1/2");
    gen->add_option("--supply", config.supply_value, "fixed supply value");
    gen->add_flag("--with-values", config.with_values, "attach random item values");
    gen->add_option("--value-max", config.value_max, "maximum item value");

    CLI::App* bench = app.add_subcommand("bench", "time the rounding solver across sizes");
    add_common(bench, false);
    bench->add_option("--n", config.bench_sizes, "sizes to run (repeatable)");
    bench->add_option("--eps", config.eps_text, "accuracy parameter, default 1/10");
    bench->add_option("--seed", config.seed, "RNG seed");
    bench->add_option("--value-max", config.value_max, "maximum item value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed()) return cmd_solve(config);
        if (knapsack->parsed()) return cmd_knapsack(config);
        if (verify->parsed()) return cmd_verify(config);
        if (gen->parsed()) return cmd_gen(config);
        if (bench->parsed()) return cmd_bench(config);
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const SolveError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
}
