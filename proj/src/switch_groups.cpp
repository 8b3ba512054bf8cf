#include "qmux/switch_groups.hpp"

#include "qmux/errors.hpp"
#include "qmux/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <numeric>

namespace qmux {

namespace {

void check_nk(int n, int k) {
    if (k < 1 || k > n) {
        throw ValidationError("qubits per switch must satisfy 1 <= k <= n (got k=" + std::to_string(k) +
                              ", n=" + std::to_string(n) + ")");
    }
}

/// m = ceil(n/k) groups, sizes floor(n/m) / ceil(n/m), larger groups first.
std::vector<int> balanced_sizes(int n, int k) {
    const int m = (n + k - 1) / k;
    const int q = n / m;
    const int r = n % m;
    std::vector<int> sizes(m, q);
    for (int i = 0; i < r; ++i) {
        ++sizes[i];
    }
    return sizes;
}

SwitchGrouping from_order(const std::vector<int>& order, int n, int k) {
    SwitchGrouping g;
    g.k = k;
    g.group_of.assign(n, -1);
    std::size_t pos = 0;
    for (const int size : balanced_sizes(n, k)) {
        std::vector<int> group(order.begin() + pos, order.begin() + pos + size);
        pos += size;
        const int id = static_cast<int>(g.groups.size());
        for (int q : group) {
            g.group_of[q] = id;
        }
        g.groups.push_back(std::move(group));
    }
    return g;
}

int intra_edges(const std::vector<std::vector<int>>& adj, const std::vector<int>& group_of) {
    int count = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        for (int v : adj[u]) {
            if (static_cast<std::size_t>(v) > u && group_of[u] == group_of[v]) {
                ++count;
            }
        }
    }
    return count;
}

bool group_connected(const std::vector<std::vector<int>>& adj, const std::vector<int>& group) {
    if (group.size() <= 1) {
        return true;
    }
    std::vector<char> in_group(adj.size(), 0);
    for (int q : group) {
        in_group[q] = 1;
    }
    std::vector<char> seen(adj.size(), 0);
    std::deque<int> queue{group[0]};
    seen[group[0]] = 1;
    std::size_t count = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : adj[u]) {
            if (in_group[v] && !seen[v]) {
                seen[v] = 1;
                ++count;
                queue.push_back(v);
            }
        }
    }
    return count == group.size();
}

int graph_diameter(const CouplingMap& map) {
    const auto dist = map.distances();
    int d = 1;
    for (int u = 0; u < map.n; ++u) {
        for (int v = 0; v < map.n; ++v) {
            d = std::max(d, dist[u][v]);
        }
    }
    return d;
}

} // namespace

void SwitchGrouping::validate(int n) const {
    std::vector<char> seen(n, 0);
    int total = 0;
    for (const auto& group : groups) {
        for (int q : group) {
            if (q < 0 || q >= n || seen[q]) {
                throw ValidationError("switch grouping is not a partition of the qubits");
            }
            seen[q] = 1;
            ++total;
        }
    }
    if (total != n) {
        throw ValidationError("switch grouping does not cover all qubits");
    }
    if (static_cast<int>(groups.size()) != (n + k - 1) / k) {
        throw ValidationError("switch grouping has wrong group count for k");
    }
}

GroupStrategy parse_strategy(const std::string& name) {
    if (name == "trivial") {
        return GroupStrategy::Trivial;
    }
    if (name == "random") {
        return GroupStrategy::Random;
    }
    if (name == "clustered") {
        return GroupStrategy::Clustered;
    }
    if (name == "dispersed") {
        return GroupStrategy::Dispersed;
    }
    throw ValidationError("unknown grouping strategy '" + name + "'");
}

std::string strategy_name(GroupStrategy s) {
    switch (s) {
    case GroupStrategy::Trivial:
        return "trivial";
    case GroupStrategy::Random:
        return "random";
    case GroupStrategy::Clustered:
        return "clustered";
    case GroupStrategy::Dispersed:
        return "dispersed";
    }
    return "?";
}

SwitchGrouping trivial_grouping(int n, int k) {
    check_nk(n, k);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    return from_order(order, n, k);
}

SwitchGrouping random_grouping(int n, int k, std::uint64_t seed) {
    check_nk(n, k);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(Rng::derive(seed, 0x67726f7570ULL));
    rng.shuffle(order);
    SwitchGrouping g = from_order(order, n, k);
    for (auto& group : g.groups) {
        std::sort(group.begin(), group.end());
    }
    return g;
}

SwitchGrouping clustered_grouping(const CouplingMap& map, int k, std::uint64_t seed) {
    check_nk(map.n, k);
    if (!map.connected()) {
        throw ValidationError("clustered_grouping requires a connected coupling map");
    }
    const auto adj = map.adjacency();
    SwitchGrouping g = trivial_grouping(map.n, k);
    Rng rng(Rng::derive(seed, 0x636c757374ULL));

    auto objective = [&](const std::vector<int>& group_of, const std::vector<std::vector<int>>& groups) {
        int connected = 0;
        for (const auto& group : groups) {
            connected += group_connected(adj, group) ? 1 : 0;
        }
        return std::pair<int, int>(connected, intra_edges(adj, group_of));
    };

    const int swap_cap = 50 * map.n;
    int swaps = 0;
    auto best = objective(g.group_of, g.groups);
    while (swaps < swap_cap) {
        std::pair<int, int> best_delta = best;
        std::vector<std::pair<int, int>> best_swaps;
        for (int u = 0; u < map.n; ++u) {
            for (int v = u + 1; v < map.n; ++v) {
                if (g.group_of[u] == g.group_of[v]) {
                    continue;
                }
                const int gu = g.group_of[u];
                const int gv = g.group_of[v];
                std::swap(*std::find(g.groups[gu].begin(), g.groups[gu].end(), u),
                          *std::find(g.groups[gv].begin(), g.groups[gv].end(), v));
                std::swap(g.group_of[u], g.group_of[v]);
                const auto score = objective(g.group_of, g.groups);
                std::swap(*std::find(g.groups[gu].begin(), g.groups[gu].end(), v),
                          *std::find(g.groups[gv].begin(), g.groups[gv].end(), u));
                std::swap(g.group_of[u], g.group_of[v]);
                if (score > best_delta) {
                    best_delta = score;
                    best_swaps = {{u, v}};
                } else if (score == best_delta && !best_swaps.empty()) {
                    best_swaps.emplace_back(u, v);
                }
            }
        }
        if (best_swaps.empty() || best_delta <= best) {
            break;
        }
        const auto [u, v] = best_swaps[rng.bounded(best_swaps.size())];
        const int gu = g.group_of[u];
        const int gv = g.group_of[v];
        std::swap(*std::find(g.groups[gu].begin(), g.groups[gu].end(), u),
                  *std::find(g.groups[gv].begin(), g.groups[gv].end(), v));
        std::swap(g.group_of[u], g.group_of[v]);
        best = best_delta;
        ++swaps;
    }
    for (auto& group : g.groups) {
        std::sort(group.begin(), group.end());
    }
    return g;
}

SwitchGrouping dispersed_grouping(const CouplingMap& map, int k) {
    check_nk(map.n, k);
    if (!map.connected()) {
        throw ValidationError("dispersed_grouping requires a connected coupling map");
    }
    const auto dist = map.distances();
    const auto sizes = balanced_sizes(map.n, k);

    std::vector<int> order(map.n);
    std::iota(order.begin(), order.end(), 0);
    const auto adj = map.adjacency();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return adj[a].size() != adj[b].size() ? adj[a].size() > adj[b].size() : a < b;
    });

    for (int d = std::max(1, graph_diameter(map)); d >= 1; --d) {
        SwitchGrouping g;
        g.k = k;
        g.group_of.assign(map.n, -1);
        g.groups.assign(sizes.size(), {});
        bool ok = true;
        for (const int q : order) {
            int chosen = -1;
            for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
                if (static_cast<int>(g.groups[gi].size()) >= sizes[gi]) {
                    continue;
                }
                bool admissible = true;
                for (int other : g.groups[gi]) {
                    if (dist[q][other] < d) {
                        admissible = false;
                        break;
                    }
                }
                if (!admissible) {
                    continue;
                }
                // least remaining capacity, ties to the lowest group id
                if (chosen < 0 || sizes[gi] - static_cast<int>(g.groups[gi].size()) <
                                      sizes[chosen] - static_cast<int>(g.groups[chosen].size())) {
                    chosen = static_cast<int>(gi);
                }
            }
            if (chosen < 0) {
                ok = false;
                break;
            }
            g.groups[chosen].push_back(q);
            g.group_of[q] = chosen;
        }
        if (ok) {
            g.reported_distance = d;
            for (auto& group : g.groups) {
                std::sort(group.begin(), group.end());
            }
            return g;
        }
    }
    throw PipelineError("dispersed_grouping: distance-1 coloring unexpectedly failed");
}

SwitchGrouping make_grouping(GroupStrategy strategy, const CouplingMap& map, int k, std::uint64_t seed) {
    switch (strategy) {
    case GroupStrategy::Trivial:
        return trivial_grouping(map.n, k);
    case GroupStrategy::Random:
        return random_grouping(map.n, k, seed);
    case GroupStrategy::Clustered:
        return clustered_grouping(map, k, seed);
    case GroupStrategy::Dispersed:
        return dispersed_grouping(map, k);
    }
    throw ValidationError("unknown grouping strategy");
}

std::string switch_grouping_to_json(const SwitchGrouping& grouping) {
    nlohmann::json j;
    j["k"] = grouping.k;
    j["groups"] = grouping.groups;
    return j.dump();
}

SwitchGrouping switch_grouping_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("switch grouping JSON: ") + e.what());
    }
    SwitchGrouping g;
    try {
        g.k = j.at("k").get<int>();
        g.groups = j.at("groups").get<std::vector<std::vector<int>>>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("switch grouping JSON: ") + e.what());
    }
    int n = 0;
    for (const auto& group : g.groups) {
        for (int q : group) {
            n = std::max(n, q + 1);
        }
    }
    g.group_of.assign(n, -1);
    for (std::size_t gi = 0; gi < g.groups.size(); ++gi) {
        for (int q : g.groups[gi]) {
            if (q < 0 || g.group_of[q] != -1) {
                throw ValidationError("switch grouping JSON is not a partition");
            }
            g.group_of[q] = static_cast<int>(gi);
        }
    }
    return g;
}

} // namespace qmux
