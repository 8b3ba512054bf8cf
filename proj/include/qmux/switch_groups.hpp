#pragma once

#include "qmux/hardware.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qmux {

/// Partition of qubits onto single-qubit control switches with balanced group
/// sizes: m = ceil(n/k) groups sized floor(n/m) or ceil(n/m), which equals
/// the {k, k-1} rule whenever that rule is feasible.
struct SwitchGrouping {
    int k = 1;
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of; ///< qubit -> switch id
    /// dispersed strategy only: achieved minimum pairwise distance d.
    int reported_distance = 1;

    int m() const { return static_cast<int>(groups.size()); }
    void validate(int n) const;
};

enum class GroupStrategy { Trivial, Random, Clustered, Dispersed };

GroupStrategy parse_strategy(const std::string& name);
std::string strategy_name(GroupStrategy s);

/// Consecutive index blocks.
SwitchGrouping trivial_grouping(int n, int k);

/// Uniform shuffle, then consecutive blocks. Deterministic per seed.
SwitchGrouping random_grouping(int n, int k, std::uint64_t seed);

/// Starts from the trivial layout and applies best-improvement pairwise swaps
/// maximizing (number of connected groups, total intra-group edges), capped
/// at 50*n swaps. The seed breaks ties among equally improving swaps.
SwitchGrouping clustered_grouping(const CouplingMap& map, int k, std::uint64_t seed);

/// Greedy distance-d coloring with the maximal feasible d: qubits in
/// descending-degree order (ties by index) go to the admissible group with
/// the least remaining capacity; d decrements from the graph diameter until
/// the balanced partition succeeds (d = 1 always does).
SwitchGrouping dispersed_grouping(const CouplingMap& map, int k);

SwitchGrouping make_grouping(GroupStrategy strategy, const CouplingMap& map, int k, std::uint64_t seed);

/// JSON round-trip: {"k":..,"groups":[[..],..]}
std::string switch_grouping_to_json(const SwitchGrouping& grouping);
SwitchGrouping switch_grouping_from_json(const std::string& text);

} // namespace qmux
