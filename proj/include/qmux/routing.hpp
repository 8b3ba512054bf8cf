#pragma once

#include "qmux/circuit.hpp"
#include "qmux/hardware.hpp"

#include <cstdint>
#include <vector>

namespace qmux {

/// A circuit mapped onto physical qubits: every two-qubit gate acts on a
/// coupling-map edge and all kinds are native to the target spec.
struct RoutedCircuit {
    Circuit circuit;         ///< width = device qubit count, physical indices
    std::vector<int> layout; ///< final logical -> physical map
    int swap_count = 0;
    std::uint64_t seed = 0;
};

struct RouteOptions {
    /// Decompose inserted SWAPs into native two-qubit gates (3 per SWAP).
    /// Disable to keep SWAP markers visible for permutation checks.
    bool decompose_swaps = true;
};

/// Rewrites a frontend circuit into the spec's native gate set using fixed
/// identities (CX via CZ or ECR, H/RX/RY via the ZSX basis, SWAP as three
/// CXs, ...). Native input gates pass through unchanged; durations are
/// assigned from the spec. Throws ValidationError for kinds without a rule.
Circuit rebase_to_native(const Circuit& circuit, const HardwareSpec& spec);

/// Expansion of a single gate application into spec-native gates, appended to
/// `out`. Exposed for the rebase rule tests.
void expand_to_native(const GateKind& kind, const std::vector<int>& qubits, const HardwareSpec& spec,
                      Circuit& out);

/// Lookahead swap-insertion routing (SABRE-style frontier scoring with a
/// decay-weighted extended set). Initial layout is the identity; the seed
/// perturbs swap scores by a tiny jitter so independent seeds explore
/// different tie regions, with exact ties broken by lowest physical qubit
/// pair. Deterministic for fixed (circuit, spec, seed).
RoutedCircuit route(const Circuit& circuit, const HardwareSpec& spec, std::uint64_t seed,
                    const RouteOptions& opts = {});

} // namespace qmux
