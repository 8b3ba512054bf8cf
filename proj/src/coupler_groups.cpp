#include "qmux/coupler_groups.hpp"

#include "qmux/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>

namespace qmux {

namespace {

/// BFS 2-coloring; empty result when the graph is not bipartite.
std::vector<int> bipartite_colors(const CouplingMap& map) {
    const auto adj = map.adjacency();
    std::vector<int> color(map.n, -1);
    for (int s = 0; s < map.n; ++s) {
        if (color[s] >= 0) {
            continue;
        }
        color[s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj[u]) {
                if (color[v] < 0) {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if (color[v] == color[u]) {
                    return {};
                }
            }
        }
    }
    return color;
}

void add_star(CouplerGrouping& grouping, std::vector<std::pair<int, int>> edges) {
    const int id = static_cast<int>(grouping.groups.size());
    for (const auto& e : edges) {
        grouping.group_of[e] = id;
    }
    grouping.groups.push_back(std::move(edges));
}

/// Stars around an explicit center set; centers must be pairwise nonadjacent
/// and every edge must touch at most one center. Returns false if violated.
bool group_by_centers(const CouplingMap& map, const std::vector<char>& is_center, CouplerGrouping& grouping,
                      std::vector<std::pair<int, int>>& leftovers) {
    std::vector<std::vector<std::pair<int, int>>> star(map.n);
    for (const auto& e : map.edges) {
        const bool ca = is_center[e.first];
        const bool cb = is_center[e.second];
        if (ca && cb) {
            return false;
        }
        if (ca) {
            star[e.first].push_back(e);
        } else if (cb) {
            star[e.second].push_back(e);
        } else {
            leftovers.push_back(e);
        }
    }
    for (int q = 0; q < map.n; ++q) {
        if (!star[q].empty()) {
            add_star(grouping, std::move(star[q]));
        }
    }
    return true;
}

/// Greedy max-degree star peeling over the given edge set.
void greedy_peel(int n, std::vector<std::pair<int, int>> edges, CouplerGrouping& grouping) {
    std::vector<int> deg(n, 0);
    for (const auto& [a, b] : edges) {
        ++deg[a];
        ++deg[b];
    }
    std::vector<char> removed(edges.size(), 0);
    std::size_t remaining = edges.size();
    while (remaining > 0) {
        int center = -1;
        for (int q = 0; q < n; ++q) {
            if (deg[q] > 0 && (center < 0 || deg[q] > deg[center])) {
                center = q;
            }
        }
        std::vector<std::pair<int, int>> star;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            if (!removed[i] && (edges[i].first == center || edges[i].second == center)) {
                removed[i] = 1;
                --remaining;
                --deg[edges[i].first];
                --deg[edges[i].second];
                star.push_back(edges[i]);
            }
        }
        add_star(grouping, std::move(star));
    }
}

} // namespace

CouplerGrouping group_couplers_alternating(const CouplingMap& map) {
    map.validate();
    CouplerGrouping grouping;
    if (map.edges.empty()) {
        return grouping;
    }

    if (map.kind == MapKind::SquareGrid) {
        // Checkerboard centers: the smaller color class; ties resolved to the
        // class containing qubit 0 (fixes the 12-group coloring on 5x5).
        const auto color = bipartite_colors(map);
        const int ones = static_cast<int>(std::count(color.begin(), color.end(), 1));
        const int zeros = map.n - ones;
        const int center_color = (ones < zeros) ? 1 : 0;
        std::vector<char> is_center(map.n, 0);
        for (int q = 0; q < map.n; ++q) {
            is_center[q] = color[q] == center_color;
        }
        std::vector<std::pair<int, int>> leftovers;
        if (group_by_centers(map, is_center, grouping, leftovers) && leftovers.empty()) {
            return grouping;
        }
        grouping = {};
    } else if (map.kind == MapKind::HeavyHex) {
        // Hexagon corners (degree-3 qubits) own their stars; the few boundary
        // edges with no corner endpoint are peeled greedily.
        std::vector<int> deg(map.n, 0);
        for (const auto& [a, b] : map.edges) {
            ++deg[a];
            ++deg[b];
        }
        std::vector<char> is_center(map.n, 0);
        for (int q = 0; q < map.n; ++q) {
            is_center[q] = deg[q] >= 3;
        }
        std::vector<std::pair<int, int>> leftovers;
        CouplerGrouping corner;
        if (group_by_centers(map, is_center, corner, leftovers)) {
            greedy_peel(map.n, std::move(leftovers), corner);
            return corner;
        }
    }

    greedy_peel(map.n, map.edges, grouping);
    grouping.fallback_used = true;
    return grouping;
}

ConflictCheck verify_conflict_free(const RoutedCircuit& routed, const CouplerGrouping& grouping) {
    const auto& circuit = routed.circuit;
    const auto dag = build_dag(circuit);
    const auto start = asap_starts(dag);

    struct Interval {
        std::int64_t start;
        std::int64_t finish;
        GateId id;
    };
    std::vector<std::vector<Interval>> per_group(grouping.groups.size());
    const auto& gs = circuit.gates();
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].kind.cls != GateClass::TwoPhysical) {
            continue;
        }
        std::pair<int, int> e{gs[i].qubits[0], gs[i].qubits[1]};
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
        const auto it = grouping.group_of.find(e);
        if (it == grouping.group_of.end()) {
            throw ValidationError("two-qubit gate on edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ") not covered by the coupler grouping");
        }
        per_group[it->second].push_back({start[i], start[i] + gs[i].duration_ns, gs[i].id});
    }

    ConflictCheck check;
    for (auto& intervals : per_group) {
        std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
            return a.start < b.start || (a.start == b.start && a.id < b.id);
        });
        for (std::size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i].start < intervals[i - 1].finish) {
                check.conflict_free = false;
                check.witness = {intervals[i - 1].id, intervals[i].id};
                return check;
            }
        }
    }
    return check;
}

std::string coupler_grouping_to_json(const CouplerGrouping& grouping) {
    nlohmann::json j;
    auto groups = nlohmann::json::array();
    for (const auto& group : grouping.groups) {
        auto g = nlohmann::json::array();
        for (const auto& [a, b] : group) {
            g.push_back({a, b});
        }
        groups.push_back(std::move(g));
    }
    j["groups"] = std::move(groups);
    return j.dump();
}

} // namespace qmux
