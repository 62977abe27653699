#include "fairwire/instances.hpp"

#include "fairwire/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace fairwire {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw InputError(where + ": " + what);
}

std::int64_t require_int(const Json& j, const std::string& where) {
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<std::int64_t>();
}

Rational require_rational(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const InputError& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected an integer or a rational string like \"1/2\"");
}

void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (std::find_if(known.begin(), known.end(),
                         [&](const char* k) { return it.key() == k; }) == known.end())
            fail(where, "unknown field '" + it.key() + "'");
    }
}

int parse_endpoint(const Json& j, int n, const std::string& where) {
    if (j.is_string()) {
        if (j.get<std::string>() == "s") return kStation;
        fail(where, "only \"s\" is allowed as a non-numeric endpoint");
    }
    const std::int64_t id = require_int(j, where);
    if (id < 1 || id > n) fail(where, "agent id " + std::to_string(id) + " out of range 1.." +
                                          std::to_string(n));
    return static_cast<int>(id);
}

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("JSON parse error: ") + e.what());
    }
}

}  // namespace

InstanceFile parse_instance(const std::string& text) {
    const Json doc = parse_document(text);
    if (!doc.is_object()) throw InputError("instance document must be a JSON object");
    reject_unknown_keys(doc, {"format", "supply", "epsilon", "agents", "edges", "meta"},
                        "instance");

    if (!doc.contains("format") || !doc["format"].is_string() ||
        doc["format"].get<std::string>() != kInstanceFormat)
        throw InputError(std::string("instance: missing or unsupported format, expected \"") +
                         kInstanceFormat + "\"");
    if (!doc.contains("agents") || !doc["agents"].is_array() || doc["agents"].empty())
        throw InputError("instance: 'agents' must be a non-empty array");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw InputError("instance: 'edges' must be an array");
    if (!doc.contains("supply")) throw InputError("instance: missing 'supply'");

    const std::int64_t supply = require_int(doc["supply"], "supply");
    const int n = static_cast<int>(doc["agents"].size());

    std::vector<std::int64_t> demands(static_cast<std::size_t>(n), -1);
    std::vector<std::string> names(static_cast<std::size_t>(n));
    std::vector<Rational> values;
    bool any_value = false;
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    for (int k = 0; k < n; ++k) {
        const std::string where = "agents[" + std::to_string(k) + "]";
        const Json& a = doc["agents"][static_cast<std::size_t>(k)];
        if (!a.is_object()) fail(where, "expected an object");
        reject_unknown_keys(a, {"id", "demand", "name", "value"}, where);
        if (!a.contains("id") || !a.contains("demand")) fail(where, "needs 'id' and 'demand'");
        const std::int64_t id = require_int(a["id"], where + ".id");
        if (id < 1 || id > n)
            fail(where + ".id", "ids must cover 1.." + std::to_string(n) + " exactly");
        if (seen[static_cast<std::size_t>(id)]) fail(where + ".id", "duplicate agent id " +
                                                                        std::to_string(id));
        seen[static_cast<std::size_t>(id)] = 1;
        demands[static_cast<std::size_t>(id - 1)] = require_int(a["demand"], where + ".demand");
        if (a.contains("name")) {
            if (!a["name"].is_string()) fail(where + ".name", "expected a string");
            names[static_cast<std::size_t>(id - 1)] = a["name"].get<std::string>();
        }
        if (a.contains("value")) {
            if (!any_value) {
                values.assign(static_cast<std::size_t>(n), Rational(-1));
                any_value = true;
            }
            values[static_cast<std::size_t>(id - 1)] = require_rational(a["value"], where + ".value");
        }
    }
    if (any_value) {
        for (int i = 1; i <= n; ++i)
            if (values[static_cast<std::size_t>(i - 1)] < 0)
                throw InputError("agents: agent " + std::to_string(i) +
                                 " is missing 'value' while others define one");
    }

    std::vector<std::pair<int, int>> edges;
    for (std::size_t k = 0; k < doc["edges"].size(); ++k) {
        const std::string where = "edges[" + std::to_string(k) + "]";
        const Json& e = doc["edges"][k];
        if (!e.is_array() || e.size() != 2) fail(where, "expected a pair");
        edges.emplace_back(parse_endpoint(e[0], n, where), parse_endpoint(e[1], n, where));
    }

    InstanceFile file;
    file.instance = Instance::make(std::move(demands), supply, std::move(edges));
    file.names = std::move(names);
    file.values = std::move(values);

    if (doc.contains("epsilon")) file.epsilon = require_rational(doc["epsilon"], "epsilon");
    if (doc.contains("meta")) {
        const Json& meta = doc["meta"];
        if (!meta.is_object()) throw InputError("meta: expected an object");
        reject_unknown_keys(meta, {"partition_trivial_no"}, "meta");
        if (meta.contains("partition_trivial_no")) {
            if (!meta["partition_trivial_no"].is_boolean())
                throw InputError("meta.partition_trivial_no: expected a boolean");
            file.partition_trivial_no = meta["partition_trivial_no"].get<bool>();
        }
    }
    return file;
}

std::string serialize_instance(const InstanceFile& file) {
    const Instance& inst = file.instance;
    Json doc;
    doc["format"] = kInstanceFormat;
    doc["supply"] = inst.supply;
    if (file.epsilon) doc["epsilon"] = format_rational(*file.epsilon);
    Json agents = Json::array();
    for (int i = 1; i <= inst.agent_count(); ++i) {
        Json a;
        a["id"] = i;
        a["demand"] = inst.demands[static_cast<std::size_t>(i - 1)];
        if (!file.names.empty() && !file.names[static_cast<std::size_t>(i - 1)].empty())
            a["name"] = file.names[static_cast<std::size_t>(i - 1)];
        if (!file.values.empty())
            a["value"] = format_rational(file.values[static_cast<std::size_t>(i - 1)]);
        agents.push_back(std::move(a));
    }
    doc["agents"] = std::move(agents);
    Json edges = Json::array();
    for (const auto& [a, b] : inst.tree.edges) {
        Json e = Json::array();
        if (a == kStation) e.push_back("s"); else e.push_back(a);
        if (b == kStation) e.push_back("s"); else e.push_back(b);
        edges.push_back(std::move(e));
    }
    doc["edges"] = std::move(edges);
    if (file.partition_trivial_no) doc["meta"] = Json{{"partition_trivial_no", true}};
    return doc.dump(2) + "\n";
}

AllocationPlan parse_plan(const std::string& text) {
    const Json doc = parse_document(text);
    if (!doc.is_object()) throw InputError("plan document must be a JSON object");
    reject_unknown_keys(doc, {"format", "entries"}, "plan");
    if (!doc.contains("format") || !doc["format"].is_string() ||
        doc["format"].get<std::string>() != kPlanFormat)
        throw InputError(std::string("plan: missing or unsupported format, expected \"") +
                         kPlanFormat + "\"");
    if (!doc.contains("entries") || !doc["entries"].is_array())
        throw InputError("plan: 'entries' must be an array");

    AllocationPlan plan;
    for (std::size_t k = 0; k < doc["entries"].size(); ++k) {
        const std::string where = "entries[" + std::to_string(k) + "]";
        const Json& e = doc["entries"][k];
        if (!e.is_object()) fail(where, "expected an object");
        reject_unknown_keys(e, {"members", "time"}, where);
        if (!e.contains("members") || !e["members"].is_array()) fail(where, "needs 'members'");
        if (!e.contains("time")) fail(where, "needs 'time'");
        std::vector<int> members;
        for (const Json& m : e["members"]) {
            const std::int64_t id = require_int(m, where + ".members");
            if (id < 1) fail(where + ".members", "agent ids are positive");
            members.push_back(static_cast<int>(id));
        }
        plan.entries.push_back(
            {Configuration::of(std::move(members)), require_rational(e["time"], where + ".time")});
    }
    return plan;
}

std::string serialize_plan(const AllocationPlan& plan) {
    Json doc;
    doc["format"] = kPlanFormat;
    Json entries = Json::array();
    for (const auto& entry : plan.entries) {
        Json e;
        e["members"] = entry.config.members;
        e["time"] = format_rational(entry.time);
        entries.push_back(std::move(e));
    }
    doc["entries"] = std::move(entries);
    return doc.dump(2) + "\n";
}

namespace {

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

InstanceFile load_instance(const std::filesystem::path& path) {
    try {
        return parse_instance(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

AllocationPlan load_plan(const std::filesystem::path& path) {
    try {
        return parse_plan(read_text_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot open file for writing: " + path.string());
    out << text;
    if (!out) throw InputError("failed writing file: " + path.string());
}

SupplyMode SupplyMode::of_fraction(Rational f) {
    if (f <= 0) throw InputError("supply fraction must be positive");
    SupplyMode mode;
    mode.kind = Kind::fraction;
    mode.fraction = std::move(f);
    return mode;
}

SupplyMode SupplyMode::of_value(std::int64_t v) {
    if (v < 0) throw InputError("supply must be non-negative");
    SupplyMode mode;
    mode.kind = Kind::fixed;
    mode.value = v;
    return mode;
}

namespace {

// Rejection-sampled uniform draw; keeps generated files identical across
// standard library implementations.
std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t draw;
    do {
        draw = rng();
    } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
}

}  // namespace

Instance gen_random_tree(int n, std::uint64_t seed, std::int64_t demand_min,
                         std::int64_t demand_max, SupplyMode supply) {
    if (n < 1) throw InputError("n must be at least 1");
    if (demand_min < 1 || demand_min > demand_max)
        throw InputError("demand range must satisfy 1 <= min <= max");
    std::mt19937_64 rng(seed);
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= n; ++v) {
        // attach to a uniformly chosen earlier vertex; 0 is the station
        const int target = static_cast<int>(uniform_int(rng, 0, v - 1));
        edges.emplace_back(target, v);
    }
    std::vector<std::int64_t> demands;
    demands.reserve(static_cast<std::size_t>(n));
    for (int v = 1; v <= n; ++v) demands.push_back(uniform_int(rng, demand_min, demand_max));

    const std::int64_t total = std::accumulate(demands.begin(), demands.end(), std::int64_t{0});
    std::int64_t s = 0;
    if (supply.kind == SupplyMode::Kind::fraction)
        s = floor_to_int64(supply.fraction * Rational(total));
    else
        s = supply.value;
    return Instance::make(std::move(demands), s, std::move(edges));
}

std::vector<Rational> gen_random_values(int n, std::uint64_t seed, std::int64_t value_max) {
    if (n < 1) throw InputError("n must be at least 1");
    if (value_max < 1) throw InputError("value_max must be at least 1");
    std::mt19937_64 rng(seed);
    std::vector<Rational> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) values.emplace_back(uniform_int(rng, 1, value_max));
    return values;
}

PartitionInstance gen_partition_reduction(const std::vector<std::int64_t>& demands) {
    if (demands.empty()) throw InputError("demand list must be non-empty");
    for (std::size_t i = 0; i < demands.size(); ++i)
        if (demands[i] <= 0)
            throw InputError("demand " + std::to_string(i + 1) + " must be positive");
    const std::int64_t total = std::accumulate(demands.begin(), demands.end(), std::int64_t{0});
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v <= static_cast<int>(demands.size()); ++v) edges.emplace_back(kStation, v);
    PartitionInstance out;
    out.trivial_no = total % 2 != 0;
    out.instance = Instance::make(demands, total / 2, std::move(edges));
    return out;
}

}  // namespace fairwire
