#pragma once

#include "fairwire/rational.hpp"

#include <optional>
#include <vector>

namespace fairwire {

enum class Relation { le, eq, ge };

/// maximize objective · x  subject to the rows and x >= 0
/// (plus optional per-variable upper bounds).
struct LinearProgram {
    struct Row {
        std::vector<Rational> coeffs;
        Relation rel = Relation::le;
        Rational rhs;
    };

    int num_vars = 0;
    std::vector<Rational> objective;
    std::vector<Row> rows;
    std::vector<std::optional<Rational>> upper_bounds;  // empty or size num_vars

    void add_row(std::vector<Rational> coeffs, Relation rel, Rational rhs);
};

enum class LpStatus { optimal, infeasible, unbounded, failed };

const char* to_string(LpStatus status);

/// Duals follow the standard convention for maximization: >= 0 on `le` rows,
/// <= 0 on `ge` rows, free on `eq` rows; one entry per declared row.
struct LpSolution {
    LpStatus status = LpStatus::failed;
    Rational objective;
    std::vector<Rational> primal;
    std::vector<Rational> duals;
    int iterations = 0;
};

/// Exact rational two-phase primal simplex with Bland's rule. Deterministic;
/// optimal results satisfy all constraints exactly.
LpSolution solve_lp(const LinearProgram& lp);

/// Same algorithm instantiated at double (tolerance 1e-9). Returned values
/// are exact conversions of the computed doubles; a final feasibility check
/// downgrades unreliable results to LpStatus::failed.
LpSolution solve_lp_float(const LinearProgram& lp);

}  // namespace fairwire
