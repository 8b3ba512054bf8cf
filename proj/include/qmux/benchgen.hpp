#pragma once

#include "qmux/circuit.hpp"
#include "qmux/hardware.hpp"

#include <cstdint>
#include <string>

namespace qmux {

struct RandomCircuitConfig {
    int n = 0;           ///< qubits; must not exceed the device size
    int num_gates = 0;   ///< total gates to draw
    double w1 = 0.7;     ///< single-qubit selection weight
    double w2 = 0.3;     ///< two-qubit selection weight; w1 + w2 == 1
    std::uint64_t seed = 0;
};

/// Draws gates one by one: class by (w1, w2), then a uniform native kind with
/// uniform qubits; two-qubit gates land on uniform coupling-map edges so the
/// circuits stay cheap to route. Rotation angles are uniform in [0, 2pi).
/// Deterministic per seed.
Circuit random_circuit(const RandomCircuitConfig& cfg, const HardwareSpec& spec);

/// Built-in benchmark constructions in frontend gates: ghz, qft, graphstate,
/// bv, wstate. The seed feeds the bv oracle bitstring and the graphstate
/// random connected graph; the other constructions ignore it.
Circuit algo_circuit(const std::string& name, int n, std::uint64_t seed);

} // namespace qmux
