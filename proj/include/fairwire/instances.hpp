#pragma once

#include "fairwire/model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace fairwire {

/// On-disk instance document. Rationals are serialized as strings ("1/2",
/// "0.25") so they survive the round trip exactly; demands and supply are
/// plain JSON integers.
struct InstanceFile {
    Instance instance;
    std::vector<std::string> names;    // per agent; "" when absent
    std::vector<Rational> values;      // per-item knapsack values; empty if absent
    std::optional<Rational> epsilon;   // default accuracy for rounding paths
    bool partition_trivial_no = false; // marks odd-sum reduction outputs
};

inline constexpr const char* kInstanceFormat = "fairwire-instance/1";
inline constexpr const char* kPlanFormat = "fairwire-plan/1";

InstanceFile parse_instance(const std::string& text);
InstanceFile load_instance(const std::filesystem::path& path);
std::string serialize_instance(const InstanceFile& file);

AllocationPlan parse_plan(const std::string& text);
AllocationPlan load_plan(const std::filesystem::path& path);
std::string serialize_plan(const AllocationPlan& plan);

void write_text_file(const std::filesystem::path& path, const std::string& text);

struct SupplyMode {
    enum class Kind { fraction, fixed };
    Kind kind = Kind::fraction;
    Rational fraction{1, 2};   // supply = floor(fraction * total demand)
    std::int64_t value = 0;

    static SupplyMode of_fraction(Rational f);
    static SupplyMode of_value(std::int64_t v);
};

/// Deterministic uniform-attachment random tree with uniform integer demands.
/// The same seed always produces the same instance.
Instance gen_random_tree(int n, std::uint64_t seed, std::int64_t demand_min,
                         std::int64_t demand_max, SupplyMode supply = {});

/// Deterministic integer item values in [1, value_max].
std::vector<Rational> gen_random_values(int n, std::uint64_t seed, std::int64_t value_max);

struct PartitionInstance {
    Instance instance;
    bool trivial_no = false;  // odd total demand: no equal-sum bipartition exists
};

/// Star instance with supply floor(total/2); the equal-sum bipartition
/// question for `demands` becomes "can every agent be connected half the time".
PartitionInstance gen_partition_reduction(const std::vector<std::int64_t>& demands);

}  // namespace fairwire
