#include "qmux/hardware.hpp"

#include "qmux/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <limits>

namespace qmux {

bool CouplingMap::has_edge(int a, int b) const {
    if (a > b) {
        std::swap(a, b);
    }
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(a, b));
}

std::vector<std::vector<int>> CouplingMap::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

std::vector<std::vector<int>> CouplingMap::distances() const {
    const auto adj = adjacency();
    std::vector<std::vector<int>> dist(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        dist[s][s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adj[u]) {
                if (dist[s][v] < 0) {
                    dist[s][v] = dist[s][u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    return dist;
}

bool CouplingMap::connected() const {
    if (n == 0) {
        return true;
    }
    const auto adj = adjacency();
    std::vector<char> seen(n, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    int count = 1;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : adj[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                queue.push_back(v);
            }
        }
    }
    return count == n;
}

int CouplingMap::degree(int q) const {
    int d = 0;
    for (const auto& [a, b] : edges) {
        if (a == q || b == q) {
            ++d;
        }
    }
    return d;
}

void CouplingMap::validate() const {
    for (const auto& [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n) {
            throw ValidationError("coupling edge references qubit outside [0, n)");
        }
        if (a == b) {
            throw ValidationError("coupling edge is a self-loop");
        }
        if (a > b) {
            throw ValidationError("coupling edges must be normalized with a < b");
        }
    }
    if (!coords.empty() && static_cast<int>(coords.size()) != n) {
        throw ValidationError("coords must be empty or have one entry per qubit");
    }
}

CouplingMap square_grid(int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw ValidationError("square_grid: dimensions must be >= 1");
    }
    CouplingMap map;
    map.kind = MapKind::SquareGrid;
    map.n = rows * cols;
    map.coords.resize(map.n);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int q = r * cols + c;
            map.coords[q] = {static_cast<double>(c), static_cast<double>(r)};
            if (c + 1 < cols) {
                map.edges.emplace_back(q, q + 1);
            }
            if (r + 1 < rows) {
                map.edges.emplace_back(q, q + cols);
            }
        }
    }
    std::sort(map.edges.begin(), map.edges.end());
    return map;
}

CouplingMap heavy_hexagon_127() {
    // Row lengths 14,15,15,15,15,15,14 with four two-edge bridges between
    // consecutive rows; matches the published Eagle connectivity.
    CouplingMap map;
    map.kind = MapKind::HeavyHex;
    map.n = 127;
    map.coords.assign(127, {0.0, 0.0});

    struct Row {
        int first;
        int len;
        int col0; // column of the row's first qubit
    };
    const std::vector<Row> rows = {
        {0, 14, 0}, {18, 15, 0}, {37, 15, 0}, {56, 15, 0}, {75, 15, 0}, {94, 15, 0}, {113, 14, 1},
    };
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (int i = 0; i < rows[r].len; ++i) {
            map.coords[rows[r].first + i] = {static_cast<double>(rows[r].col0 + i), 2.0 * static_cast<double>(r)};
            if (i + 1 < rows[r].len) {
                map.edges.emplace_back(rows[r].first + i, rows[r].first + i + 1);
            }
        }
    }
    // Bridge qubits: {bridge, upper row qubit, lower row qubit} per published map.
    const std::vector<std::array<int, 3>> bridges = {
        {14, 0, 18},    {15, 4, 22},    {16, 8, 26},    {17, 12, 30},   // rows 0-1, columns 0,4,8,12
        {33, 20, 39},   {34, 24, 43},   {35, 28, 47},   {36, 32, 51},   // rows 1-2, columns 2,6,10,14
        {52, 37, 56},   {53, 41, 60},   {54, 45, 64},   {55, 49, 68},   // rows 2-3, columns 0,4,8,12
        {71, 58, 77},   {72, 62, 81},   {73, 66, 85},   {74, 70, 89},   // rows 3-4, columns 2,6,10,14
        {90, 75, 94},   {91, 79, 98},   {92, 83, 102},  {93, 87, 106},  // rows 4-5, columns 0,4,8,12
        {109, 96, 114}, {110, 100, 118}, {111, 104, 122}, {112, 108, 126}, // rows 5-6, columns 2,6,10,14
    };
    for (const auto& [b, up, down] : bridges) {
        map.coords[b] = {map.coords[up][0], map.coords[up][1] + 1.0};
        map.edges.emplace_back(std::min(b, up), std::max(b, up));
        map.edges.emplace_back(std::min(b, down), std::max(b, down));
    }
    std::sort(map.edges.begin(), map.edges.end());
    return map;
}

bool HardwareSpec::is_native(const GateKind& kind) const {
    switch (kind.cls) {
    case GateClass::SinglePhysical:
        return native_1q.count(kind.name) > 0;
    case GateClass::TwoPhysical:
        return native_2q.count(kind.name) > 0;
    case GateClass::Virtual:
        return virtual_gates.count(kind.name) > 0;
    case GateClass::SwitchMarker:
    case GateClass::SwitchDelay:
    case GateClass::Meta:
        return true;
    }
    return false;
}

std::int64_t HardwareSpec::duration_ns(const GateKind& kind) const {
    switch (kind.cls) {
    case GateClass::SinglePhysical: {
        const auto it = native_1q.find(kind.name);
        if (it == native_1q.end()) {
            throw ValidationError("gate " + kind.name + " is not native single-qubit on this spec");
        }
        return it->second;
    }
    case GateClass::TwoPhysical: {
        const auto it = native_2q.find(kind.name);
        if (it == native_2q.end()) {
            throw ValidationError("gate " + kind.name + " is not native two-qubit on this spec");
        }
        return it->second;
    }
    case GateClass::Virtual:
        if (virtual_gates.count(kind.name) == 0) {
            throw ValidationError("gate " + kind.name + " is not a virtual gate on this spec");
        }
        return 0;
    case GateClass::SwitchDelay:
        return t_sw_ns;
    case GateClass::SwitchMarker:
    case GateClass::Meta:
        return 0;
    }
    throw ValidationError("unknown gate class");
}

std::int64_t HardwareSpec::min_1q_ns() const {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (const auto& [name, ns] : native_1q) {
        m = std::min(m, ns);
    }
    return m;
}

std::int64_t HardwareSpec::min_2q_ns() const {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (const auto& [name, ns] : native_2q) {
        m = std::min(m, ns);
    }
    return m;
}

void HardwareSpec::validate() const {
    coupling.validate();
    if (native_1q.empty() || native_2q.empty()) {
        throw ValidationError("hardware spec needs at least one native 1q and 2q gate");
    }
    for (const auto& [name, ns] : native_1q) {
        if (ns < 0) {
            throw ValidationError("negative duration for " + name);
        }
    }
    for (const auto& [name, ns] : native_2q) {
        if (ns < 0) {
            throw ValidationError("negative duration for " + name);
        }
    }
    if (t_sw_ns < 0) {
        throw ValidationError("negative switch delay");
    }
    // Assumed timescale hierarchy. The second comparison is non-strict so that
    // t_2q/t_1q ratio studies can include ratio 1.
    if (!(t_sw_ns < min_1q_ns() && min_1q_ns() <= min_2q_ns())) {
        throw ValidationError("duration hierarchy violated: need t_sw < t_1q <= t_2q");
    }
}

HardwareSpec grid_spec(CouplingMap map) {
    HardwareSpec spec;
    spec.coupling = std::move(map);
    spec.native_1q = {{"RX", 20}, {"RY", 20}, {"H", 20}};
    spec.native_2q = {{"CZ", 200}, {"ISWAP", 200}};
    spec.virtual_gates = {"RZ"};
    spec.t_sw_ns = 10;
    return spec;
}

HardwareSpec eagle_spec() {
    HardwareSpec spec;
    spec.coupling = heavy_hexagon_127();
    spec.native_1q = {{"SX", 60}, {"X", 60}};
    spec.native_2q = {{"ECR", 660}};
    spec.virtual_gates = {"RZ"};
    spec.t_sw_ns = 10;
    return spec;
}

HardwareSpec hardware_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("hardware spec JSON: ") + e.what());
    }
    HardwareSpec spec;
    try {
        spec.coupling.n = j.at("n").get<int>();
        for (const auto& e : j.at("edges")) {
            int a = e.at(0).get<int>();
            int b = e.at(1).get<int>();
            if (a > b) {
                std::swap(a, b);
            }
            spec.coupling.edges.emplace_back(a, b);
        }
        std::sort(spec.coupling.edges.begin(), spec.coupling.edges.end());
        for (const auto& [name, g] : j.at("gates").items()) {
            const int arity = g.at("arity").get<int>();
            const std::int64_t ns = g.at("ns").get<std::int64_t>();
            if (arity == 1) {
                spec.native_1q[name] = ns;
            } else if (arity == 2) {
                spec.native_2q[name] = ns;
            } else {
                throw ValidationError("gate " + name + ": arity must be 1 or 2");
            }
        }
        for (const auto& v : j.at("virtual")) {
            spec.virtual_gates.insert(v.get<std::string>());
        }
        spec.t_sw_ns = j.at("t_sw_ns").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("hardware spec JSON: ") + e.what());
    }
    spec.validate();
    return spec;
}

std::string hardware_to_json(const HardwareSpec& spec) {
    nlohmann::json j;
    j["n"] = spec.coupling.n;
    auto edges = nlohmann::json::array();
    for (const auto& [a, b] : spec.coupling.edges) {
        edges.push_back({a, b});
    }
    j["edges"] = std::move(edges);
    nlohmann::json gates = nlohmann::json::object();
    for (const auto& [name, ns] : spec.native_1q) {
        gates[name] = {{"arity", 1}, {"ns", ns}};
    }
    for (const auto& [name, ns] : spec.native_2q) {
        gates[name] = {{"arity", 2}, {"ns", ns}};
    }
    j["gates"] = std::move(gates);
    j["virtual"] = spec.virtual_gates;
    j["t_sw_ns"] = spec.t_sw_ns;
    return j.dump(2);
}

} // namespace qmux
