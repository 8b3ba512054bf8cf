#pragma once

#include "qmux/circuit.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qmux {

enum class MapKind { SquareGrid, HeavyHex, General };

/// Qubit connectivity graph. Edges are undirected, stored with a < b.
struct CouplingMap {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::array<double, 2>> coords; ///< optional planar layout, empty or size n
    MapKind kind = MapKind::General;

    bool has_edge(int a, int b) const;
    std::vector<std::vector<int>> adjacency() const;
    /// All-pairs shortest-path distances by BFS; -1 for unreachable.
    std::vector<std::vector<int>> distances() const;
    bool connected() const;
    int degree(int q) const;

    void validate() const;
};

/// 4-neighbor lattice of rows x cols qubits, row-major indexing.
CouplingMap square_grid(int rows, int cols);

/// The 127-qubit heavy-hexagon layout of IBM Eagle processors, from an
/// embedded edge list (144 edges, max degree 3).
CouplingMap heavy_hexagon_127();

/// Native gate set with durations plus the switch delay.
struct HardwareSpec {
    CouplingMap coupling;
    std::map<std::string, std::int64_t> native_1q; ///< name -> ns
    std::map<std::string, std::int64_t> native_2q; ///< name -> ns
    std::set<std::string> virtual_gates;           ///< zero duration
    std::int64_t t_sw_ns = 10;

    bool is_native(const GateKind& kind) const;
    /// Duration for a native/virtual/meta kind; throws ValidationError otherwise.
    std::int64_t duration_ns(const GateKind& kind) const;
    std::int64_t min_1q_ns() const;
    std::int64_t min_2q_ns() const;

    /// Enforces t_sw < min t_1q <= min t_2q and nonnegative durations.
    void validate() const;
};

/// Flux-tunable square-grid platform: CZ/ISWAP at 200 ns, RX/RY/H at 20 ns,
/// virtual RZ, default switch delay 10 ns.
HardwareSpec grid_spec(CouplingMap map);

/// IBM Eagle (Brisbane gate times): SX/X at 60 ns, ECR at 660 ns, virtual RZ.
HardwareSpec eagle_spec();

/// JSON round-trip with fixed field names:
/// {"n":..,"edges":[[a,b],..],"gates":{"CZ":{"arity":2,"ns":200},..},
///  "virtual":["RZ"],"t_sw_ns":10}
HardwareSpec hardware_from_json(const std::string& text);
std::string hardware_to_json(const HardwareSpec& spec);

} // namespace qmux
