#pragma once

#include "qmux/hardware.hpp"
#include "qmux/routing.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qmux {

/// Partition of coupling-map edges onto shared coupler drive lines. Every
/// group is a star (all edges share a common center qubit), which makes the
/// grouping conflict-free for any legal schedule.
struct CouplerGrouping {
    std::vector<std::vector<std::pair<int, int>>> groups;
    std::map<std::pair<int, int>, int> group_of;
    /// Set when the general greedy fallback produced the partition, i.e. the
    /// group count carries no minimality guarantee.
    bool fallback_used = false;

    std::size_t size() const { return groups.size(); }
};

/// Star partition of couplers around alternating qubits. Square grids use the
/// smaller checkerboard color class as centers (12 groups on 5x5); the
/// heavy-hexagon preset uses the degree-3 hexagon corners plus a greedy peel
/// for boundary leftovers; general graphs fall back to greedy max-degree star
/// peeling with the fallback flag set.
CouplerGrouping group_couplers_alternating(const CouplingMap& map);

struct ConflictCheck {
    bool conflict_free = true;
    /// First overlapping same-group pair of two-qubit gates, by gate id.
    std::optional<std::pair<GateId, GateId>> witness;
};

/// True iff no two two-qubit gates in the same coupler group overlap in time
/// under ASAP scheduling of the routed circuit.
ConflictCheck verify_conflict_free(const RoutedCircuit& routed, const CouplerGrouping& grouping);

/// JSON export: {"groups":[[[a,b],...],...]}
std::string coupler_grouping_to_json(const CouplerGrouping& grouping);

} // namespace qmux
