#include "fairwire/leximin.hpp"

#include "fairwire/errors.hpp"
#include "fairwire/lpcore.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <utility>

namespace fairwire {

namespace {

struct Tolerances {
    Rational saturation;  // lock i when max u_i <= z_k + saturation
    Rational pricing;     // add a column when its value > threshold + pricing / alpha
};

Tolerances tolerances_for(NumericMode numerics) {
    if (numerics == NumericMode::exact) return {Rational(0), Rational(0)};
    return {Rational(1, 10'000'000), Rational(1, 10'000'000)};
}

struct Solver {
    const Instance& instance;
    OracleMode oracle;
    Rational epsilon;
    NumericMode numerics;
    bool pricing_enabled;
    Rational alpha;
    Tolerances tol;

    StageState state;
    std::set<Configuration> pool_index;

    int stage_columns_added = 0;
    int stage_lp_iterations = 0;

    Solver(const Instance& inst, OracleMode oracle_mode, Rational eps, NumericMode num,
           bool pricing)
        : instance(inst),
          oracle(oracle_mode),
          epsilon(std::move(eps)),
          numerics(num),
          pricing_enabled(pricing),
          tol(tolerances_for(num)) {
        if (pricing && oracle == OracleMode::fptas && (epsilon <= 0 || epsilon >= 1))
            throw InputError("epsilon must lie strictly between 0 and 1");
        alpha = (pricing && oracle == OracleMode::fptas) ? Rational(1) - epsilon : Rational(1);
        for (int i = 1; i <= instance.agent_count(); ++i) state.free.insert(i);
    }

    bool add_column(Configuration config) {
        if (!pool_index.insert(config).second) return false;
        state.pool.push_back(std::move(config));
        ++stage_columns_added;
        return true;
    }

    void seed_pool() {
        const int n = instance.agent_count();
        std::vector<Rational> weights(static_cast<std::size_t>(n), Rational(0));
        for (int i = 1; i <= n; ++i) {
            weights[static_cast<std::size_t>(i - 1)] = 1;
            add_column(weighted_utilitarian_oracle(instance, weights, epsilon, oracle));
            weights[static_cast<std::size_t>(i - 1)] = 0;
        }
        std::fill(weights.begin(), weights.end(), Rational(1));
        add_column(weighted_utilitarian_oracle(instance, weights, epsilon, oracle));
    }

    LpSolution solve(const LinearProgram& lp) const {
        LpSolution sol = numerics == NumericMode::exact ? solve_lp(lp) : solve_lp_float(lp);
        if (sol.status != LpStatus::optimal)
            throw SolveError(std::string("stage LP unexpectedly ") + to_string(sol.status));
        return sol;
    }

    // Master variables are one per pool column, plus a trailing z variable in
    // min-utility mode. Row 0 is the convexity row; row i is agent i's
    // coverage row. `objective_agent` < 0 means "maximize z".
    LinearProgram build_master(int objective_agent, const Rational& floor_level) const {
        const int n = instance.agent_count();
        const int cols = static_cast<int>(state.pool.size());
        const bool with_z = objective_agent < 0;
        LinearProgram lp;
        lp.num_vars = cols + (with_z ? 1 : 0);
        lp.objective.assign(static_cast<std::size_t>(lp.num_vars), Rational(0));
        if (with_z) lp.objective.back() = 1;

        std::vector<Rational> convexity(static_cast<std::size_t>(lp.num_vars), Rational(0));
        for (int j = 0; j < cols; ++j) convexity[static_cast<std::size_t>(j)] = 1;
        lp.add_row(std::move(convexity), Relation::eq, Rational(1));

        for (int i = 1; i <= n; ++i) {
            std::vector<Rational> row(static_cast<std::size_t>(lp.num_vars), Rational(0));
            for (int j = 0; j < cols; ++j)
                if (state.pool[static_cast<std::size_t>(j)].contains(i))
                    row[static_cast<std::size_t>(j)] = 1;
            if (objective_agent == i) lp.objective = row;
            if (auto it = state.fixed.find(i); it != state.fixed.end()) {
                lp.add_row(std::move(row), Relation::ge, it->second);
            } else if (with_z) {
                row.back() = -1;
                lp.add_row(std::move(row), Relation::ge, Rational(0));
            } else {
                lp.add_row(std::move(row), Relation::ge, floor_level);
            }
        }
        return lp;
    }

    struct MasterResult {
        Rational value;
        std::vector<Rational> times;  // aligned with state.pool
        std::vector<Rational> weights;
        Rational threshold;
        bool grew = false;
    };

    // Solves the restricted master, then alternates oracle pricing and
    // re-solves until no column prices in.
    MasterResult solve_master_with_pricing(int objective_agent, const Rational& floor_level) {
        MasterResult result;
        for (int round = 0;; ++round) {
            if (round > 100000) throw SolveError("pricing failed to converge");
            const LinearProgram lp = build_master(objective_agent, floor_level);
            LpSolution sol = solve(lp);
            stage_lp_iterations += sol.iterations;

            const int n = instance.agent_count();
            std::vector<Rational> weights(static_cast<std::size_t>(n), Rational(0));
            for (int i = 1; i <= n; ++i) {
                const Rational& dual = sol.duals[static_cast<std::size_t>(i)];
                if (dual < 0) weights[static_cast<std::size_t>(i - 1)] = -dual;
            }
            const Rational threshold = sol.duals[0];

            result.value = sol.objective;
            result.times.assign(sol.primal.begin(),
                                sol.primal.begin() + static_cast<long>(state.pool.size()));
            result.weights = weights;
            result.threshold = threshold;
            if (!pricing_enabled) return result;

            std::vector<Rational> oracle_weights = weights;
            if (objective_agent >= 1)
                oracle_weights[static_cast<std::size_t>(objective_agent - 1)] += 1;
            const Configuration candidate =
                weighted_utilitarian_oracle(instance, oracle_weights, epsilon, oracle);
            Rational candidate_value = 0;
            for (int id : candidate.members)
                candidate_value += oracle_weights[static_cast<std::size_t>(id - 1)];
            if (candidate_value <= threshold + tol.pricing / alpha) return result;
            if (!add_column(candidate)) return result;  // numerically stuck; keep certificate
            result.grew = true;
        }
    }

    SolveReport run(bool egalitarian_only) {
        if (pricing_enabled) seed_pool();
        if (state.pool.empty()) throw SolveError("empty configuration pool");
        SolveReport report;
        report.alpha = alpha;

        MasterResult master{};
        std::vector<Rational> final_times;
        while (!state.free.empty()) {
            ++state.stage;
            stage_columns_added = state.stage == 1 ? stage_columns_added : 0;
            stage_lp_iterations = 0;

            std::vector<int> locked_now;
            for (;;) {
                master = solve_master_with_pricing(-1, Rational(0));
                if (egalitarian_only) break;

                bool pool_grew = master.grew;
                for (int i : state.free) {
                    // Agents strictly above z_k in the current optimum cannot
                    // be saturated; skip their re-optimization.
                    Rational current = 0;
                    for (std::size_t j = 0; j < master.times.size(); ++j)
                        if (state.pool[j].contains(i)) current += master.times[j];
                    if (current > master.value + tol.saturation) continue;
                    MasterResult sat = solve_master_with_pricing(i, master.value);
                    pool_grew = pool_grew || sat.grew;
                    if (sat.value <= master.value + tol.saturation) locked_now.push_back(i);
                }
                if (!locked_now.empty()) break;
                if (pool_grew) continue;  // new columns may push z_k higher
                if (numerics == NumericMode::exact)
                    throw SolveError("no agent saturated at a certified stage optimum");
                // Float fallback: lock the least-raisable agent to make progress.
                int best_agent = 0;
                Rational best_value;
                for (int i : state.free) {
                    MasterResult sat = solve_master_with_pricing(i, master.value);
                    if (best_agent == 0 || sat.value < best_value) {
                        best_agent = i;
                        best_value = sat.value;
                    }
                }
                locked_now.push_back(best_agent);
                break;
            }

            StageRecord record;
            record.index = state.stage;
            record.optimum = master.value;
            record.columns_added = stage_columns_added;
            record.lp_iterations = stage_lp_iterations;
            record.final_weights = master.weights;
            record.final_threshold = master.threshold;

            if (egalitarian_only) {
                report.stages.push_back(std::move(record));
                final_times = master.times;
                break;
            }
            for (int i : locked_now) {
                state.fixed[i] = master.value;
                state.free.erase(i);
            }
            record.locked = std::move(locked_now);
            report.stages.push_back(std::move(record));
            final_times = master.times;
        }

        for (std::size_t j = 0; j < state.pool.size(); ++j) {
            if (j < final_times.size() && final_times[j] > 0)
                report.plan.entries.push_back({state.pool[j], final_times[j]});
        }
        if (numerics == NumericMode::floating) {
            // Double-derived times: renormalize so the plan sums to exactly 1.
            const Rational total = report.plan.total_time();
            if (total <= 0) throw SolveError("degenerate float plan");
            for (auto& entry : report.plan.entries) entry.time /= total;
        }
        report.utilities = utilities_of(instance, report.plan);

        if (numerics == NumericMode::exact && !egalitarian_only) {
            for (const auto& [agent, level] : state.fixed)
                if (report.utilities.values[static_cast<std::size_t>(agent - 1)] != level)
                    throw SolveError("final plan does not realize the locked levels");
        }
        return report;
    }
};

}  // namespace

SolveReport solve_leximin(const Instance& instance, const Rational& epsilon, OracleMode oracle,
                          NumericMode numerics) {
    Solver solver(instance, oracle, epsilon, numerics, /*pricing=*/true);
    return solver.run(/*egalitarian_only=*/false);
}

int default_enumeration_limit() {
    if (const char* env = std::getenv("FAIRWIRE_BRUTE_LIMIT")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed >= 1 && parsed <= 62) return static_cast<int>(parsed);
        throw InputError("FAIRWIRE_BRUTE_LIMIT must be an integer in 1..62");
    }
    return 12;
}

std::vector<Configuration> enumerate_feasible(const Instance& instance, int limit) {
    const int n = instance.agent_count();
    if (n > limit)
        throw InputError("exhaustive enumeration refused: " + std::to_string(n) +
                         " agents exceed limit " + std::to_string(limit));
    std::vector<Configuration> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<int> members;
        for (int i = 1; i <= n; ++i)
            if (mask >> (i - 1) & 1) members.push_back(i);
        Configuration config = Configuration::of(std::move(members));
        if (is_feasible(instance, config)) out.push_back(std::move(config));
    }
    return out;
}

SolveReport solve_leximin_exact(const Instance& instance, int limit) {
    Solver solver(instance, OracleMode::exact, Rational(0), NumericMode::exact,
                  /*pricing=*/false);
    solver.state.pool = enumerate_feasible(instance, limit);
    for (const auto& config : solver.state.pool) solver.pool_index.insert(config);
    SolveReport report = solver.run(/*egalitarian_only=*/false);
    report.alpha = 1;
    return report;
}

SolveReport solve_egalitarian(const Instance& instance, const Rational& epsilon,
                              OracleMode oracle, NumericMode numerics) {
    Solver solver(instance, oracle, epsilon, numerics, /*pricing=*/true);
    return solver.run(/*egalitarian_only=*/true);
}

}  // namespace fairwire
