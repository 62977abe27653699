#pragma once

#include "fairwire/geoknapsack.hpp"
#include "fairwire/model.hpp"

#include <map>
#include <set>
#include <vector>

namespace fairwire {

enum class NumericMode { exact, floating };

/// Working state of the sequential stage algorithm.
struct StageState {
    std::map<int, Rational> fixed;     // agent -> locked utility level
    std::set<int> free;                // agents still being raised
    std::vector<Configuration> pool;   // feasible configurations discovered so far
    int stage = 0;
};

struct StageRecord {
    int index = 0;
    Rational optimum;                 // certified stage level z_k
    int columns_added = 0;
    int lp_iterations = 0;
    std::vector<int> locked;
    // Duals of the stage-closing master solve, for pricing audits:
    // max over feasible C of sum_{i in C} weights[i] must not beat threshold
    // (by more than the oracle's approximation slack).
    std::vector<Rational> final_weights;
    Rational final_threshold;
};

struct SolveReport {
    AllocationPlan plan;
    UtilityVector utilities;
    Rational alpha;  // claimed approximation factor: 1 - epsilon, or 1 in exact mode
    std::vector<StageRecord> stages;
};

/// Sorted-utility-maximizing plan via stage LPs over a generated column pool.
/// Exact oracle mode enumerates inside the pricing oracle (alpha = 1); fptas
/// mode prices with the (1 - epsilon)-approximate solver.
SolveReport solve_leximin(const Instance& instance, const Rational& epsilon, OracleMode oracle,
                          NumericMode numerics = NumericMode::exact);

/// Enumeration cap for the exact full-pool solver; FAIRWIRE_BRUTE_LIMIT overrides.
int default_enumeration_limit();

/// All feasible configurations of the instance, in ascending mask order.
std::vector<Configuration> enumerate_feasible(const Instance& instance, int limit);

/// Exactly optimal solve: full configuration pool, no pricing.
SolveReport solve_leximin_exact(const Instance& instance,
                                int limit = default_enumeration_limit());

/// First stage only: maximizes the smallest utility and reports it.
SolveReport solve_egalitarian(const Instance& instance, const Rational& epsilon,
                              OracleMode oracle, NumericMode numerics = NumericMode::exact);

}  // namespace fairwire
