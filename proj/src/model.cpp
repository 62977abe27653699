#include "fairwire/model.hpp"

#include "fairwire/errors.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

namespace fairwire {

TreeGraph TreeGraph::make(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1) throw InputError("agent count must be at least 1");
    if (static_cast<int>(edges.size()) != n)
        throw InputError("a tree on " + std::to_string(n + 1) + " vertices needs exactly " +
                         std::to_string(n) + " edges, got " + std::to_string(edges.size()));
    TreeGraph g;
    g.n = n;
    g.adjacency.assign(static_cast<std::size_t>(n) + 1, {});
    for (auto& [a, b] : edges) {
        if (a < 0 || a > n || b < 0 || b > n)
            throw InputError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                             ") has a vertex outside {s} ∪ {1.." + std::to_string(n) + "}");
        if (a == b) throw InputError("self-loop at vertex " + std::to_string(a));
        g.adjacency[static_cast<std::size_t>(a)].push_back(b);
        g.adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    g.edges = std::move(edges);

    // n edges + connected => acyclic; duplicate edges would break connectivity.
    std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
    std::queue<int> queue;
    queue.push(kStation);
    seen[kStation] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : g.adjacency[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                queue.push(w);
            }
        }
    }
    if (reached != n + 1) throw InputError("not a tree: graph is disconnected or has a cycle");
    for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
    return g;
}

bool TreeGraph::adjacent_to_station(int agent) const {
    const auto& adj = adjacency[kStation];
    return std::binary_search(adj.begin(), adj.end(), agent);
}

Instance Instance::make(std::vector<std::int64_t> demands, std::int64_t supply,
                        std::vector<std::pair<int, int>> edges) {
    Instance instance;
    instance.tree = TreeGraph::make(static_cast<int>(demands.size()), std::move(edges));
    for (std::size_t i = 0; i < demands.size(); ++i)
        if (demands[i] <= 0)
            throw InputError("demand of agent " + std::to_string(i + 1) + " must be positive");
    if (supply < 0) throw InputError("supply must be non-negative");
    instance.demands = std::move(demands);
    instance.supply = supply;
    return instance;
}

std::int64_t Instance::demand_of(int agent) const {
    if (agent < 1 || agent > agent_count())
        throw InputError("unknown agent id " + std::to_string(agent));
    return demands[static_cast<std::size_t>(agent - 1)];
}

std::int64_t Instance::total_demand() const {
    return std::accumulate(demands.begin(), demands.end(), std::int64_t{0});
}

Configuration Configuration::of(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return Configuration{std::move(ids)};
}

bool Configuration::contains(int agent) const {
    return std::binary_search(members.begin(), members.end(), agent);
}

std::string Configuration::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(members[i]);
    }
    return out + "}";
}

Rational AllocationPlan::total_time() const {
    Rational sum = 0;
    for (const auto& entry : entries) sum += entry.time;
    return sum;
}

std::vector<Rational> UtilityVector::sorted() const {
    std::vector<Rational> out = values;
    std::sort(out.begin(), out.end());
    return out;
}

Rational UtilityVector::min() const {
    if (values.empty()) throw InputError("empty utility vector");
    return *std::min_element(values.begin(), values.end());
}

LeximinOrder leximin_compare(const UtilityVector& a, const UtilityVector& b) {
    if (a.values.size() != b.values.size())
        throw InputError("leximin comparison of vectors with different lengths");
    const std::vector<Rational> sa = a.sorted();
    const std::vector<Rational> sb = b.sorted();
    for (std::size_t i = 0; i < sa.size(); ++i) {
        if (sa[i] > sb[i]) return LeximinOrder::first_preferred;
        if (sa[i] < sb[i]) return LeximinOrder::second_preferred;
    }
    return LeximinOrder::equivalent;
}

namespace {

// Connectivity of config ∪ {station} in the induced subgraph.
bool connected_with_station(const TreeGraph& tree, const Configuration& config) {
    if (config.empty()) return true;  // {s} alone is connected
    std::vector<char> in_set(static_cast<std::size_t>(tree.n) + 1, 0);
    in_set[kStation] = 1;
    for (int id : config.members) in_set[static_cast<std::size_t>(id)] = 1;
    std::vector<char> seen(static_cast<std::size_t>(tree.n) + 1, 0);
    std::queue<int> queue;
    queue.push(kStation);
    seen[kStation] = 1;
    std::size_t reached = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : tree.adjacency[static_cast<std::size_t>(v)]) {
            if (in_set[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                queue.push(w);
            }
        }
    }
    return reached == config.size() + 1;
}

}  // namespace

bool is_feasible(const Instance& instance, const Configuration& config) {
    std::int64_t total = 0;
    for (int id : config.members) total += instance.demand_of(id);
    if (total > instance.supply) return false;
    return connected_with_station(instance.tree, config);
}

UtilityVector utilities_of(const Instance& instance, const AllocationPlan& plan) {
    UtilityVector utilities;
    utilities.values.assign(static_cast<std::size_t>(instance.agent_count()), Rational(0));
    for (const auto& entry : plan.entries) {
        for (int id : entry.config.members) {
            if (id < 1 || id > instance.agent_count())
                throw InputError("plan references unknown agent id " + std::to_string(id));
            utilities.values[static_cast<std::size_t>(id - 1)] += entry.time;
        }
    }
    return utilities;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::unknown_agent: return "unknown_agent";
        case ViolationKind::demand: return "demand";
        case ViolationKind::geographic: return "geographic";
        case ViolationKind::time_range: return "time_range";
        case ViolationKind::sum: return "sum";
    }
    return "?";
}

Verdict verify_plan(const Instance& instance, const AllocationPlan& plan,
                    const Rational& sum_tolerance) {
    Verdict verdict;
    for (std::size_t idx = 0; idx < plan.entries.size(); ++idx) {
        const auto& entry = plan.entries[idx];
        const int i = static_cast<int>(idx);

        bool ids_ok = true;
        std::int64_t total = 0;
        for (int id : entry.config.members) {
            if (id < 1 || id > instance.agent_count()) {
                verdict.violations.push_back({ViolationKind::unknown_agent, i,
                                              "entry " + std::to_string(idx) +
                                                  " references unknown agent " +
                                                  std::to_string(id)});
                ids_ok = false;
            } else {
                total += instance.demand_of(id);
            }
        }
        if (ids_ok) {
            if (total > instance.supply)
                verdict.violations.push_back(
                    {ViolationKind::demand, i,
                     "entry " + std::to_string(idx) + " " + entry.config.to_string() +
                         ": demand " + std::to_string(total) + " exceeds supply " +
                         std::to_string(instance.supply)});
            if (!connected_with_station(instance.tree, entry.config))
                verdict.violations.push_back(
                    {ViolationKind::geographic, i,
                     "entry " + std::to_string(idx) + " " + entry.config.to_string() +
                         ": not connected to the station"});
        }
        if (entry.time < 0 || entry.time > 1)
            verdict.violations.push_back({ViolationKind::time_range, i,
                                          "entry " + std::to_string(idx) + ": time " +
                                              format_rational(entry.time) + " outside [0,1]"});
    }
    const Rational sum = plan.total_time();
    if (abs(sum - 1) > sum_tolerance)
        verdict.violations.push_back(
            {ViolationKind::sum, -1, "times sum to " + format_rational(sum) + ", expected 1"});
    return verdict;
}

int RenumberedTree::distance_from_station(int new_id) const {
    int d = 0;
    for (int v = new_id; v != kStation; v = parent[static_cast<std::size_t>(v)]) ++d;
    return d;
}

RenumberedTree renumber(const TreeGraph& tree) {
    const int n = tree.n;
    std::vector<int> dist(static_cast<std::size_t>(n) + 1, -1);
    std::vector<int> parent_old(static_cast<std::size_t>(n) + 1, -1);
    std::queue<int> queue;
    queue.push(kStation);
    dist[kStation] = 0;
    int max_dist = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop();
        for (int w : tree.adjacency[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(w)] == -1) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                parent_old[static_cast<std::size_t>(w)] = v;
                max_dist = std::max(max_dist, dist[static_cast<std::size_t>(w)]);
                queue.push(w);
            }
        }
    }

    // Order each distance class: children grouped under parents in the
    // parents' own class order; inside a group ascending original id.
    std::vector<std::vector<int>> class_order(static_cast<std::size_t>(max_dist) + 1);
    std::vector<int> station_children;
    for (int v = 1; v <= n; ++v)
        if (dist[static_cast<std::size_t>(v)] == 1) station_children.push_back(v);
    std::sort(station_children.begin(), station_children.end());
    if (max_dist >= 1) class_order[1] = station_children;
    for (int level = 2; level <= max_dist; ++level) {
        for (int p : class_order[static_cast<std::size_t>(level - 1)]) {
            std::vector<int> kids;
            for (int w : tree.adjacency[static_cast<std::size_t>(p)])
                if (parent_old[static_cast<std::size_t>(w)] == p) kids.push_back(w);
            std::sort(kids.begin(), kids.end());
            class_order[static_cast<std::size_t>(level)].insert(
                class_order[static_cast<std::size_t>(level)].end(), kids.begin(), kids.end());
        }
    }

    RenumberedTree out;
    out.n = n;
    out.old_to_new.assign(static_cast<std::size_t>(n) + 1, 0);
    out.new_to_old.assign(static_cast<std::size_t>(n) + 1, 0);
    int counter = 1;
    for (int level = max_dist; level >= 1; --level) {
        for (int old_id : class_order[static_cast<std::size_t>(level)]) {
            out.old_to_new[static_cast<std::size_t>(old_id)] = counter;
            out.new_to_old[static_cast<std::size_t>(counter)] = old_id;
            ++counter;
        }
    }

    out.parent.assign(static_cast<std::size_t>(n) + 1, 0);
    out.highest_child.assign(static_cast<std::size_t>(n) + 1, 0);
    out.first_child.assign(static_cast<std::size_t>(n) + 1, 0);
    out.leaf.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i) {
        const int old_id = out.new_to_old[static_cast<std::size_t>(i)];
        const int p_old = parent_old[static_cast<std::size_t>(old_id)];
        out.parent[static_cast<std::size_t>(i)] =
            p_old == kStation ? kStation : out.old_to_new[static_cast<std::size_t>(p_old)];
    }
    for (int i = 1; i <= n; ++i) {
        const int p = out.parent[static_cast<std::size_t>(i)];
        if (p != kStation)
            out.highest_child[static_cast<std::size_t>(p)] =
                std::max(out.highest_child[static_cast<std::size_t>(p)], i);
        out.first_child[static_cast<std::size_t>(i)] =
            (i == 1 || out.parent[static_cast<std::size_t>(i - 1)] != p) ? 1 : 0;
    }
    for (int i = 1; i <= n; ++i)
        out.leaf[static_cast<std::size_t>(i)] = out.highest_child[static_cast<std::size_t>(i)] == 0;
    return out;
}

RenumberedTree renumber(const Instance& instance) { return renumber(instance.tree); }

}  // namespace fairwire
