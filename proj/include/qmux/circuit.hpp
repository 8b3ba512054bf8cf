#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace qmux {

/// Gate classification driving scheduling and serialization behavior.
enum class GateClass {
    SinglePhysical, ///< finite-duration microwave pulse on one qubit
    TwoPhysical,    ///< finite-duration coupler drive on two qubits
    Virtual,        ///< frame update, zero duration (RZ)
    SwitchMarker,   ///< SW: zero-duration two-qubit ordering marker
    SwitchDelay,    ///< SDEL: switch settling time on one qubit
    Meta,           ///< measure/barrier bookkeeping, zero duration
};

/// A gate label: symbolic name, arity, parameters, and class. Instances carry
/// their own copy so parametrized gates (RX, RY, RZ) keep their angles.
struct GateKind {
    std::string name;
    int arity = 1;
    std::vector<double> params;
    GateClass cls = GateClass::SinglePhysical;

    bool is_physical() const {
        return cls == GateClass::SinglePhysical || cls == GateClass::TwoPhysical;
    }
    bool is_mux() const {
        return cls == GateClass::SwitchMarker || cls == GateClass::SwitchDelay;
    }
};

/// Structural equality: same name, arity, class, and params within tol radians.
bool same_kind(const GateKind& a, const GateKind& b, double tol = 1e-9);

/// Factories for the gate vocabulary understood by the toolkit.
namespace gates {
GateKind h();
GateKind x();
GateKind sx();
GateKind rx(double theta);
GateKind ry(double theta);
GateKind rz(double theta);
GateKind cx();
GateKind cz();
GateKind swap();
GateKind iswap();
GateKind ecr();
GateKind sw();
GateKind sdel();
GateKind measure();
GateKind barrier(int num_qubits);
} // namespace gates

using GateId = int;

struct GateInstance {
    GateId id = 0;
    GateKind kind;
    std::vector<int> qubits;
    std::int64_t duration_ns = 0;
};

/// Ordered list of gate applications on indexed qubits. Statement order is a
/// valid execution order; the precise timing comes from the DAG schedule.
class Circuit {
public:
    Circuit() = default;
    explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {}

    int num_qubits() const { return num_qubits_; }
    const std::vector<GateInstance>& gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }

    GateId add(GateKind kind, std::vector<int> qubits, std::int64_t duration_ns = 0);

    /// Appends a gate keeping its existing id (used by passes that must keep
    /// ids stable across rewrites). Ids must stay unique per circuit.
    void add_instance(GateInstance gate);

    /// Checks qubit ranges, arity/qubit-count agreement, distinctness of
    /// qubits within a gate, and id uniqueness. Throws ValidationError.
    void validate() const;

    /// Per-qubit projection of gate ids, in statement order.
    std::vector<std::vector<GateId>> per_qubit_order() const;

private:
    int num_qubits_ = 0;
    std::vector<GateInstance> gates_;
    GateId next_id_ = 0;
};

/// True when both circuits have the same width and the same gate sequence
/// (kind, qubits) position by position; ids and durations are ignored.
bool same_structure(const Circuit& a, const Circuit& b, double tol = 1e-9);

/// Gate dependency DAG. Node i is gates()[i]; edges connect consecutive gates
/// sharing a qubit, deduplicated when a pair shares both qubits. Statement
/// order is by construction a topological order.
struct CircuitDag {
    std::vector<std::vector<int>> succ;
    std::vector<std::vector<int>> pred;
    std::vector<std::int64_t> duration;
    std::vector<GateId> gate_id;
    int num_edges = 0;

    std::size_t size() const { return succ.size(); }
};

CircuitDag build_dag(const Circuit& circuit);

/// ASAP start times per node index; start[i] = max over predecessors of
/// (start + duration), 0 for sources.
std::vector<std::int64_t> asap_starts(const CircuitDag& dag);

struct Schedule {
    std::unordered_map<GateId, std::int64_t> start;
    std::int64_t total_duration = 0;
};

Schedule asap_schedule(const CircuitDag& dag);

/// Critical-path duration of a circuit: ASAP makespan of its DAG.
std::int64_t circuit_duration_ns(const Circuit& circuit);

/// Layered depth over physical gates only; virtual and meta gates contribute
/// nothing.
int depth(const Circuit& circuit);

struct DensityReport {
    std::int64_t n1 = 0; ///< physical single-qubit gates
    std::int64_t n2 = 0; ///< physical two-qubit gates
    int depth = 0;
    double rho1 = 0.0;
    double rho2 = 0.0;
    double rho_total = 0.0;
};

/// Gate densities rho1 = N1/(n D), rho2 = 2 N2/(n D). The circuit must not
/// contain mux gates; n * D == 0 raises ValidationError (degenerate input).
DensityReport gate_densities(const Circuit& circuit);

} // namespace qmux
