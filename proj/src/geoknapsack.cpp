#include "fairwire/geoknapsack.hpp"

#include "fairwire/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

namespace fairwire {

namespace {

// Hard guard against pathological epsilon blowing up the value-indexed table.
constexpr std::size_t kMaxTableCells = 20'000'000;

}  // namespace

KnapsackInput KnapsackInput::make(std::vector<std::int64_t> sizes, std::vector<Rational> values,
                                  std::int64_t capacity, TreeGraph tree) {
    if (sizes.size() != static_cast<std::size_t>(tree.n) || values.size() != sizes.size())
        throw InputError("knapsack input lengths do not match the item count");
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 0)
            throw InputError("size of item " + std::to_string(i + 1) + " must be non-negative");
        if (values[i] < 0)
            throw InputError("value of item " + std::to_string(i + 1) + " must be non-negative");
    }
    if (capacity < 0) throw InputError("capacity must be non-negative");
    KnapsackInput input;
    input.sizes = std::move(sizes);
    input.values = std::move(values);
    input.capacity = capacity;
    input.tree = std::move(tree);
    return input;
}

KnapsackInput KnapsackInput::from_instance(const Instance& instance,
                                           std::vector<Rational> values) {
    return make(instance.demands, std::move(values), instance.supply, instance.tree);
}

bool KnapsackInput::values_integral() const {
    return std::all_of(values.begin(), values.end(),
                       [](const Rational& v) { return denominator(v) == 1; });
}

DpTable::DpTable(std::vector<std::int64_t> item_values, RenumberedTree numbering)
    : values_(std::move(item_values)), numbering_(std::move(numbering)) {
    rows_.resize(values_.size());
    for (std::int64_t v : values_) value_sum_ += v;
}

std::int64_t DpTable::row_limit(int i) const {
    return static_cast<std::int64_t>(rows_[static_cast<std::size_t>(i - 1)].size()) - 1;
}

const DpTable::Cell& DpTable::at(int i, std::int64_t j) const {
    static const Cell absent{};
    const auto& row = rows_[static_cast<std::size_t>(i - 1)];
    if (j < 0 || j >= static_cast<std::int64_t>(row.size())) return absent;
    return row[static_cast<std::size_t>(j)];
}

bool DpTable::present(int i, std::int64_t j) const { return at(i, j).tag != kAbsent; }

std::int64_t DpTable::size_at(int i, std::int64_t j) const {
    const Cell& cell = at(i, j);
    if (cell.tag == kAbsent) throw InputError("absent table cell");
    return cell.size;
}

std::int64_t DpTable::item_value(int i) const {
    return values_[static_cast<std::size_t>(i - 1)];
}

std::vector<int> DpTable::reconstruct(int i, std::int64_t j) const {
    std::vector<int> members;
    std::vector<std::pair<int, std::int64_t>> stack{{i, j}};
    while (!stack.empty()) {
        auto [ci, cj] = stack.back();
        stack.pop_back();
        const Cell& cell = at(ci, cj);
        const std::int64_t v = item_value(ci);
        switch (cell.tag) {
            case kAbsent: throw SolveError("backtracking reached an absent cell");
            case kEmpty: break;
            case kSingleton: members.push_back(ci); break;
            case kSkip: stack.emplace_back(ci - 1, cj); break;
            case kTakeSibling:
                members.push_back(ci);
                stack.emplace_back(ci - 1, cj - v);
                break;
            case kTakeChild:
                members.push_back(ci);
                stack.emplace_back(numbering_.highest_child[static_cast<std::size_t>(ci)], cj - v);
                break;
            case kTakeSplit:
                members.push_back(ci);
                stack.emplace_back(ci - 1, cell.split);
                stack.emplace_back(numbering_.highest_child[static_cast<std::size_t>(ci)],
                                   cj - v - cell.split);
                break;
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

namespace {

void check_numbering(const KnapsackInput& input, const RenumberedTree& numbering) {
    if (numbering.n != input.tree.n)
        throw InputError("renumbering does not match the input tree size");
    for (int i = 1; i <= numbering.n; ++i) {
        const int old_id = numbering.new_to_old[static_cast<std::size_t>(i)];
        const int p = numbering.parent[static_cast<std::size_t>(i)];
        const int p_old = p == kStation ? kStation : numbering.new_to_old[static_cast<std::size_t>(p)];
        const auto& adj = input.tree.adjacency[static_cast<std::size_t>(old_id)];
        if (!std::binary_search(adj.begin(), adj.end(), p_old))
            throw InputError("renumbering is inconsistent with the input tree");
    }
}

std::vector<std::int64_t> integral_values_by_new_id(const KnapsackInput& input,
                                                    const RenumberedTree& numbering) {
    std::vector<std::int64_t> values(static_cast<std::size_t>(input.item_count()));
    for (int i = 1; i <= input.item_count(); ++i) {
        const Rational& v =
            input.values[static_cast<std::size_t>(numbering.new_to_old[static_cast<std::size_t>(i)] - 1)];
        if (denominator(v) != 1)
            throw InputError("exact solve requires integer item values, got " +
                             format_rational(v));
        values[static_cast<std::size_t>(i - 1)] = to_int64(numerator(v));
    }
    return values;
}

}  // namespace

DpTable build_dp_table(const KnapsackInput& input, const RenumberedTree& numbering) {
    check_numbering(input, numbering);
    const int n = input.item_count();
    DpTable table(integral_values_by_new_id(input, numbering), numbering);

    std::vector<std::int64_t> sizes(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 1; i <= n; ++i)
        sizes[static_cast<std::size_t>(i)] =
            input.sizes[static_cast<std::size_t>(numbering.new_to_old[static_cast<std::size_t>(i)] - 1)];

    const auto& num = table.numbering_;
    auto& rows = table.rows_;
    using Cell = DpTable::Cell;

    for (int i = 1; i <= n; ++i) {
        const std::int64_t v = table.item_value(i);
        const bool leaf = num.leaf[static_cast<std::size_t>(i)];
        const bool first = num.first_child[static_cast<std::size_t>(i)];
        const int child = num.highest_child[static_cast<std::size_t>(i)];
        const std::int64_t prev_limit = i > 1 ? table.row_limit(i - 1) : 0;
        const std::int64_t child_limit = leaf ? 0 : table.row_limit(child);

        std::int64_t limit = v;
        if (!first) limit += prev_limit;
        if (!leaf) limit += child_limit;
        table.cells_ += static_cast<std::size_t>(limit) + 1;
        if (table.cells_ > kMaxTableCells)
            throw SolveError("value-indexed table would exceed " +
                             std::to_string(kMaxTableCells) +
                             " cells; use a coarser epsilon or smaller values");
        auto& row = rows[static_cast<std::size_t>(i - 1)];
        row.assign(static_cast<std::size_t>(limit) + 1, Cell{});

        row[0] = Cell{0, 0, DpTable::kEmpty};
        ++table.updates_;
        if (leaf && first) {
            // The only non-empty packing of [i] connected through p(i) is {i}.
            if (v > 0) {
                row[static_cast<std::size_t>(v)] = Cell{sizes[static_cast<std::size_t>(i)], 0,
                                                        DpTable::kSingleton};
                ++table.updates_;
            }
            continue;
        }

        const auto* prev = i > 1 ? &rows[static_cast<std::size_t>(i - 2)] : nullptr;
        const auto* sub = leaf ? nullptr : &rows[static_cast<std::size_t>(child - 1)];

        for (std::int64_t j = 1; j <= limit; ++j) {
            Cell best{};  // kAbsent
            // Without i: only meaningful when i has previous siblings.
            if (!first && j <= prev_limit) {
                const Cell& c = (*prev)[static_cast<std::size_t>(j)];
                if (c.tag != DpTable::kAbsent) best = Cell{c.size, 0, DpTable::kSkip};
            }
            // With i: the value below i must be exactly j - v_i.
            if (v <= j) {
                const std::int64_t want = j - v;
                if (leaf) {
                    if (want <= prev_limit) {
                        const Cell& c = (*prev)[static_cast<std::size_t>(want)];
                        if (c.tag != DpTable::kAbsent) {
                            const std::int64_t size = c.size + sizes[static_cast<std::size_t>(i)];
                            if (best.tag == DpTable::kAbsent || size < best.size)
                                best = Cell{size, 0, DpTable::kTakeSibling};
                        }
                    }
                } else if (first) {
                    if (want <= child_limit) {
                        const Cell& c = (*sub)[static_cast<std::size_t>(want)];
                        if (c.tag != DpTable::kAbsent) {
                            const std::int64_t size = c.size + sizes[static_cast<std::size_t>(i)];
                            if (best.tag == DpTable::kAbsent || size < best.size)
                                best = Cell{size, 0, DpTable::kTakeChild};
                        }
                    }
                } else {
                    // Split `want` between previous siblings (z) and the subtree
                    // below i; both sides must be present.
                    const std::int64_t z_lo = std::max<std::int64_t>(0, want - child_limit);
                    const std::int64_t z_hi = std::min(want, prev_limit);
                    for (std::int64_t z = z_lo; z <= z_hi; ++z) {
                        ++table.updates_;
                        const Cell& cs = (*prev)[static_cast<std::size_t>(z)];
                        if (cs.tag == DpTable::kAbsent) continue;
                        const Cell& cc = (*sub)[static_cast<std::size_t>(want - z)];
                        if (cc.tag == DpTable::kAbsent) continue;
                        const std::int64_t size =
                            cs.size + cc.size + sizes[static_cast<std::size_t>(i)];
                        if (best.tag == DpTable::kAbsent || size < best.size)
                            best = Cell{size, static_cast<std::int32_t>(z), DpTable::kTakeSplit};
                    }
                }
            }
            ++table.updates_;
            row[static_cast<std::size_t>(j)] = best;
        }
    }
    return table;
}

ExactSolveResult solve_exact_integer(const KnapsackInput& input,
                                     const RenumberedTree& numbering) {
    DpTable table = build_dp_table(input, numbering);
    const int n = input.item_count();

    std::int64_t best_j = 0;
    for (std::int64_t j = table.row_limit(n); j >= 0; --j) {
        if (table.present(n, j) && table.size_at(n, j) <= input.capacity) {
            best_j = j;
            break;
        }
    }

    const std::vector<int> new_ids = table.reconstruct(n, best_j);
    std::vector<int> members;
    members.reserve(new_ids.size());
    for (int id : new_ids)
        members.push_back(numbering.new_to_old[static_cast<std::size_t>(id)]);

    Packing packing;
    packing.members = Configuration::of(std::move(members));
    packing.total_size = table.size_at(n, best_j);
    packing.total_value = 0;
    for (int id : packing.members.members)
        packing.total_value += input.values[static_cast<std::size_t>(id - 1)];

    return ExactSolveResult{std::move(packing), best_j, std::move(table)};
}

RoundedInput round_values(const KnapsackInput& input, const Rational& epsilon) {
    if (epsilon <= 0 || epsilon >= 1)
        throw InputError("epsilon must lie strictly between 0 and 1");
    RoundedInput out;
    const Rational v_max = *std::max_element(input.values.begin(), input.values.end());
    std::vector<Rational> rounded(input.values.size());
    if (v_max == 0) {
        out.degenerate = true;
        out.theta = 0;
        std::fill(rounded.begin(), rounded.end(), Rational(0));
    } else {
        out.theta = epsilon * v_max / input.item_count();
        for (std::size_t i = 0; i < input.values.size(); ++i)
            rounded[i] = Rational(floor_rational(input.values[i] / out.theta));
    }
    out.input = KnapsackInput::make(input.sizes, std::move(rounded), input.capacity, input.tree);
    return out;
}

namespace {

// Deterministic maximal-by-inclusion legal packing: scan outward from the
// station, adding every node whose parent made it in and whose size still fits.
Packing greedy_maximal_packing(const KnapsackInput& input) {
    std::vector<char> taken(static_cast<std::size_t>(input.tree.n) + 1, 0);
    taken[kStation] = 1;
    std::int64_t remaining = input.capacity;
    std::int64_t total_size = 0;
    std::vector<int> members;
    std::queue<int> queue;
    queue.push(kStation);
    while (!queue.empty()) {
        const int v = queue.front();
        queue.pop();
        for (int w : input.tree.adjacency[static_cast<std::size_t>(v)]) {
            if (taken[static_cast<std::size_t>(w)]) continue;
            const std::int64_t size = input.sizes[static_cast<std::size_t>(w - 1)];
            if (size > remaining) continue;
            taken[static_cast<std::size_t>(w)] = 1;
            remaining -= size;
            total_size += size;
            members.push_back(w);
            queue.push(w);
        }
    }
    Packing packing;
    packing.members = Configuration::of(std::move(members));
    packing.total_size = total_size;
    packing.total_value = 0;
    for (int id : packing.members.members)
        packing.total_value += input.values[static_cast<std::size_t>(id - 1)];
    return packing;
}

}  // namespace

FptasResult solve_fptas(const KnapsackInput& input, const Rational& epsilon) {
    FptasResult out;
    RoundedInput rounded = round_values(input, epsilon);
    out.theta = rounded.theta;
    out.degenerate = rounded.degenerate;
    if (rounded.degenerate) {
        // All values are zero, so every legal packing is optimal.
        out.packing = greedy_maximal_packing(input);
        return out;
    }
    const RenumberedTree numbering = renumber(input.tree);
    ExactSolveResult exact = solve_exact_integer(rounded.input, numbering);
    out.table_cells = exact.table.cell_count();
    out.table_updates = exact.table.update_count();
    out.rounded_value_sum = exact.table.value_sum();
    out.packing = std::move(exact.packing);
    out.packing.total_value = 0;
    for (int id : out.packing.members.members)
        out.packing.total_value += input.values[static_cast<std::size_t>(id - 1)];
    return out;
}

int default_brute_limit() {
    if (const char* env = std::getenv("FAIRWIRE_BRUTE_LIMIT")) {
        char* end = nullptr;
        const long parsed = std::strtol(env, &end, 10);
        if (end && *end == '\0' && parsed >= 1 && parsed <= 62) return static_cast<int>(parsed);
        throw InputError("FAIRWIRE_BRUTE_LIMIT must be an integer in 1..62");
    }
    return 20;
}

Packing solve_bruteforce(const KnapsackInput& input, int limit) {
    const int n = input.item_count();
    if (n > limit)
        throw InputError("brute-force oracle refused: " + std::to_string(n) + " items exceed limit " +
                         std::to_string(limit));

    // Connectivity over masks: a set is legal iff walking up from every member
    // reaches the station through members only.
    std::vector<int> parent(static_cast<std::size_t>(n) + 1, kStation);
    {
        std::queue<int> queue;
        std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
        queue.push(kStation);
        seen[kStation] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            for (int w : input.tree.adjacency[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    parent[static_cast<std::size_t>(w)] = v;
                    queue.push(w);
                }
        }
    }

    const std::uint64_t total_masks = std::uint64_t{1} << n;
    bool have_best = false;
    std::uint64_t best_mask = 0;
    Rational best_value = 0;
    std::int64_t best_size = 0;
    std::vector<int> scratch, best_members;

    for (std::uint64_t mask = 0; mask < total_masks; ++mask) {
        std::int64_t size = 0;
        for (int i = 1; i <= n; ++i)
            if (mask >> (i - 1) & 1) size += input.sizes[static_cast<std::size_t>(i - 1)];
        if (size > input.capacity) continue;
        bool connected = true;
        for (int i = 1; i <= n && connected; ++i) {
            if (!(mask >> (i - 1) & 1)) continue;
            const int p = parent[static_cast<std::size_t>(i)];
            if (p != kStation && !(mask >> (p - 1) & 1)) connected = false;
        }
        if (!connected) continue;
        Rational value = 0;
        for (int i = 1; i <= n; ++i)
            if (mask >> (i - 1) & 1) value += input.values[static_cast<std::size_t>(i - 1)];

        bool better = false;
        if (!have_best || value > best_value ||
            (value == best_value && size < best_size)) {
            better = true;
        } else if (value == best_value && size == best_size) {
            scratch.clear();
            for (int i = 1; i <= n; ++i)
                if (mask >> (i - 1) & 1) scratch.push_back(i);
            better = std::lexicographical_compare(scratch.begin(), scratch.end(),
                                                  best_members.begin(), best_members.end());
        }
        if (better) {
            have_best = true;
            best_mask = mask;
            best_value = value;
            best_size = size;
            best_members.clear();
            for (int i = 1; i <= n; ++i)
                if (best_mask >> (i - 1) & 1) best_members.push_back(i);
        }
    }

    Packing packing;
    packing.members = Configuration::of(best_members);
    packing.total_value = best_value;
    packing.total_size = best_size;
    return packing;
}

Configuration weighted_utilitarian_oracle(const Instance& instance,
                                          const std::vector<Rational>& weights,
                                          const Rational& epsilon, OracleMode mode) {
    if (weights.size() != static_cast<std::size_t>(instance.agent_count()))
        throw InputError("weight vector length does not match the agent count");
    for (const Rational& w : weights)
        if (w < 0) throw InputError("oracle weights must be non-negative");
    const KnapsackInput input = KnapsackInput::from_instance(instance, weights);
    if (mode == OracleMode::exact) return solve_bruteforce(input).members;
    return solve_fptas(input, epsilon).packing.members;
}

}  // namespace fairwire
