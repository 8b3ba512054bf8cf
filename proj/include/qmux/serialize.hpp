#pragma once

#include "qmux/circuit.hpp"
#include "qmux/hardware.hpp"
#include "qmux/routing.hpp"
#include "qmux/switch_groups.hpp"

#include <cstdint>
#include <optional>

namespace qmux {

enum class OrderHeuristic {
    ByIndex,          ///< ascending qubit index
    DistanceToNext2q, ///< fewest gates until the qubit's next two-qubit gate
};

struct SerializerOptions {
    OrderHeuristic order = OrderHeuristic::DistanceToNext2q;
    /// Enables the two switch-delay omission rules: (a) drop SDEL when both
    /// switch qubits sit inside concurrent two-qubit gates for the whole
    /// switching window, (b) drop SDEL when the target qubit's preceding
    /// two-qubit gate already ends after the predecessor's finish plus t_sw.
    bool hide_delays = true;
    std::optional<std::int64_t> t_sw_override_ns;
};

struct SerializedCircuit {
    Circuit circuit; ///< routed gates plus SW/SDEL, original gate ids kept
    int inserted_sw = 0;
    int inserted_sdel = 0;
    std::int64_t duration_ns = 0;      ///< ASAP makespan of the serialized circuit
    std::int64_t base_duration_ns = 0; ///< ASAP makespan of the routed input
};

/// Serializes concurrent single-qubit gates that share a switch. Concurrency
/// is same ASAP start time in the routed circuit; within each layer the gates
/// of a switch group are chained in heuristic order with SW (zero duration)
/// and SDEL (t_sw) inserted between consecutive gates, and the switch token
/// moves across layers through plain SW gates. Virtual and meta gates pass
/// through untouched.
SerializedCircuit serialize(const RoutedCircuit& routed, const SwitchGrouping& grouping,
                            const HardwareSpec& spec, const SerializerOptions& opts = {});

/// Removes all SW/SDEL gates; inverts serialize up to statement order (the
/// per-qubit gate sequences match the routed input exactly).
Circuit strip_mux_gates(const SerializedCircuit& serialized);
Circuit strip_mux_gates(const Circuit& circuit);

} // namespace qmux
