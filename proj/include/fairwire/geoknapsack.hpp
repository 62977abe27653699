#pragma once

#include "fairwire/model.hpp"

#include <cstdint>
#include <vector>

namespace fairwire {

/// Knapsack over tree-connected item sets: a packing is legal when its total
/// size fits the capacity and the chosen items plus the station induce a
/// connected subgraph.
struct KnapsackInput {
    std::vector<std::int64_t> sizes;  // per item, >= 0
    std::vector<Rational> values;     // per item, >= 0; the exact DP needs integers
    std::int64_t capacity = 0;
    TreeGraph tree;

    static KnapsackInput make(std::vector<std::int64_t> sizes, std::vector<Rational> values,
                              std::int64_t capacity, TreeGraph tree);
    static KnapsackInput from_instance(const Instance& instance, std::vector<Rational> values);

    int item_count() const { return tree.n; }
    bool values_integral() const;
};

struct Packing {
    Configuration members;  // original item ids
    Rational total_value;   // with respect to the input's values
    std::int64_t total_size = 0;
};

/// Value-indexed table F(i,j): the minimum-size subset of renumbered items
/// 1..i with total value exactly j that stays connected through i's parent.
/// Cells hold the achieved size plus a choice record; packings are rebuilt by
/// backtracking. Rows are materialized only up to the achievable value sum;
/// cells beyond it are Absent.
class DpTable {
  public:
    DpTable(std::vector<std::int64_t> item_values, RenumberedTree numbering);

    int item_count() const { return static_cast<int>(rows_.size()); }
    std::int64_t value_sum() const { return value_sum_; }
    std::int64_t row_limit(int i) const;  // largest representable j in row i

    bool present(int i, std::int64_t j) const;
    std::int64_t size_at(int i, std::int64_t j) const;

    /// Members (new ids) of the recorded subset for a present cell.
    std::vector<int> reconstruct(int i, std::int64_t j) const;

    std::size_t cell_count() const { return cells_; }
    std::uint64_t update_count() const { return updates_; }

    const RenumberedTree& numbering() const { return numbering_; }
    std::int64_t item_value(int i) const;  // by new id

  private:
    friend DpTable build_dp_table(const KnapsackInput&, const RenumberedTree&);

    enum Tag : std::uint8_t {
        kAbsent = 0,
        kEmpty,        // {}
        kSingleton,    // {i}
        kSkip,         // F(i-1, j)
        kTakeSibling,  // F(i-1, j - v_i) ∪ {i}
        kTakeChild,    // F(c(i), j - v_i) ∪ {i}
        kTakeSplit,    // F(i-1, z) ∪ F(c(i), j - v_i - z) ∪ {i}
    };
    struct Cell {
        std::int64_t size = 0;
        std::int32_t split = 0;
        Tag tag = kAbsent;
    };

    const Cell& at(int i, std::int64_t j) const;

    std::vector<std::vector<Cell>> rows_;  // rows_[i-1], width row_limit(i)+1
    std::vector<std::int64_t> values_;     // values_[i-1] by new id
    RenumberedTree numbering_;
    std::int64_t value_sum_ = 0;
    std::size_t cells_ = 0;
    std::uint64_t updates_ = 0;
};

/// Fills the whole table. Requires integral values; throws SolveError if the
/// table would exceed the configured cell cap.
DpTable build_dp_table(const KnapsackInput& input, const RenumberedTree& numbering);

struct ExactSolveResult {
    Packing packing;
    std::int64_t achieved_value = 0;  // value of the packing in the input's (integer) scale
    DpTable table;
};

/// Exact maximum-value legal packing for integer item values; among those,
/// one of minimum total size.
ExactSolveResult solve_exact_integer(const KnapsackInput& input, const RenumberedTree& numbering);

struct RoundedInput {
    KnapsackInput input;  // integer values floor(v_i / theta)
    Rational theta;       // epsilon * v_max / n; 0 when degenerate
    bool degenerate = false;  // all values zero
};

RoundedInput round_values(const KnapsackInput& input, const Rational& epsilon);

struct FptasResult {
    Packing packing;           // total_value in the original value scale
    Rational theta;
    bool degenerate = false;
    std::size_t table_cells = 0;
    std::uint64_t table_updates = 0;
    std::int64_t rounded_value_sum = 0;
};

/// Guarantees total value >= (1 - epsilon) * optimum.
FptasResult solve_fptas(const KnapsackInput& input, const Rational& epsilon);

/// Enumeration cap for the testing oracle; FAIRWIRE_BRUTE_LIMIT overrides.
int default_brute_limit();

/// Exhaustive oracle: maximum value, then minimum size, then lexicographically
/// smallest member set. Refuses item counts above the limit.
Packing solve_bruteforce(const KnapsackInput& input, int limit = default_brute_limit());

enum class OracleMode { exact, fptas };

/// The pricing oracle: a feasible configuration (approximately) maximizing
/// the weighted number of connected agents. Exact mode enumerates; fptas mode
/// achieves factor 1 - epsilon.
Configuration weighted_utilitarian_oracle(const Instance& instance,
                                          const std::vector<Rational>& weights,
                                          const Rational& epsilon, OracleMode mode);

}  // namespace fairwire
