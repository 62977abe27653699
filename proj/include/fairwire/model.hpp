#pragma once

#include "fairwire/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fairwire {

/// Vertex id of the power station. Agents are 1..n.
inline constexpr int kStation = 0;

/// A tree over {station} ∪ {1..n}: n edges, connected, rooted at the station.
struct TreeGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adjacency;  // size n+1, neighbor lists sorted

    /// Validates vertex ids, edge count, connectivity and acyclicity.
    static TreeGraph make(int n, std::vector<std::pair<int, int>> edges);

    bool adjacent_to_station(int agent) const;
};

struct Instance {
    std::vector<std::int64_t> demands;  // demands[i-1] is agent i's demand, > 0
    std::int64_t supply = 0;
    TreeGraph tree;

    static Instance make(std::vector<std::int64_t> demands, std::int64_t supply,
                         std::vector<std::pair<int, int>> edges);

    int agent_count() const { return tree.n; }
    std::int64_t demand_of(int agent) const;
    std::int64_t total_demand() const;
    bool oversubscribed() const { return total_demand() > supply; }
};

/// A subset of agents. Feasibility is a property relative to an Instance.
struct Configuration {
    std::vector<int> members;  // sorted ascending, unique

    static Configuration of(std::vector<int> ids);
    bool contains(int agent) const;
    bool empty() const { return members.empty(); }
    std::size_t size() const { return members.size(); }

    auto operator<=>(const Configuration&) const = default;
    std::string to_string() const;  // "{1,2}" or "{}"
};

/// Sparse map configuration -> connection time; times are expected to sum to 1.
struct AllocationPlan {
    struct Entry {
        Configuration config;
        Rational time;
    };
    std::vector<Entry> entries;

    Rational total_time() const;
};

struct UtilityVector {
    std::vector<Rational> values;

    std::vector<Rational> sorted() const;  // non-decreasing
    Rational min() const;
};

enum class LeximinOrder { first_preferred, second_preferred, equivalent };

/// Compares sorted-vector lexicographically from the smallest entry up.
LeximinOrder leximin_compare(const UtilityVector& a, const UtilityVector& b);

/// True iff total demand fits the supply and C ∪ {station} induces a
/// connected subgraph. The empty configuration is feasible.
bool is_feasible(const Instance& instance, const Configuration& config);

/// u_i = total time of entries whose configuration contains agent i.
UtilityVector utilities_of(const Instance& instance, const AllocationPlan& plan);

enum class ViolationKind { unknown_agent, demand, geographic, time_range, sum };

std::string to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int entry_index;  // -1 for plan-level (sum) violations
    std::string detail;
};

struct Verdict {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Violations are data, not errors: malformed entries are reported, never thrown.
/// `sum_tolerance` relaxes the sum-to-one check for float-derived plans.
Verdict verify_plan(const Instance& instance, const AllocationPlan& plan,
                    const Rational& sum_tolerance = Rational(0));

/// Node renumbering of a station-rooted tree such that
///   1. nodes farther from the station get smaller numbers, and
///   2. siblings occupy consecutive numbers.
/// All arrays are indexed by new id; entry 0 is the station.
struct RenumberedTree {
    int n = 0;
    std::vector<int> old_to_new;    // old_to_new[0] == 0
    std::vector<int> new_to_old;    // inverse permutation
    std::vector<int> parent;        // parent[i] in new ids; 0 means station
    std::vector<int> highest_child; // 0 for leaves; otherwise the largest child id
    std::vector<char> first_child;  // i is the lowest-numbered child of its parent
    std::vector<char> leaf;

    int distance_from_station(int new_id) const;  // hop count, station = 0
};

/// Deterministic renumbering: BFS distance classes from the station, numbered
/// farthest-first; inside a class nodes are grouped by parent (parents taken
/// in their own new-number order), ties broken by ascending original id.
RenumberedTree renumber(const TreeGraph& tree);
RenumberedTree renumber(const Instance& instance);

}  // namespace fairwire
