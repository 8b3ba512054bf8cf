#include "qmux/circuit.hpp"

#include "qmux/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

namespace qmux {

bool same_kind(const GateKind& a, const GateKind& b, double tol) {
    if (a.name != b.name || a.arity != b.arity || a.cls != b.cls) {
        return false;
    }
    if (a.params.size() != b.params.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.params.size(); ++i) {
        if (std::abs(a.params[i] - b.params[i]) > tol) {
            return false;
        }
    }
    return true;
}

namespace gates {

namespace {
GateKind make(std::string name, int arity, GateClass cls, std::vector<double> params = {}) {
    GateKind k;
    k.name = std::move(name);
    k.arity = arity;
    k.cls = cls;
    k.params = std::move(params);
    return k;
}
} // namespace

GateKind h() { return make("H", 1, GateClass::SinglePhysical); }
GateKind x() { return make("X", 1, GateClass::SinglePhysical); }
GateKind sx() { return make("SX", 1, GateClass::SinglePhysical); }
GateKind rx(double theta) { return make("RX", 1, GateClass::SinglePhysical, {theta}); }
GateKind ry(double theta) { return make("RY", 1, GateClass::SinglePhysical, {theta}); }
GateKind rz(double theta) { return make("RZ", 1, GateClass::Virtual, {theta}); }
GateKind cx() { return make("CX", 2, GateClass::TwoPhysical); }
GateKind cz() { return make("CZ", 2, GateClass::TwoPhysical); }
GateKind swap() { return make("SWAP", 2, GateClass::TwoPhysical); }
GateKind iswap() { return make("ISWAP", 2, GateClass::TwoPhysical); }
GateKind ecr() { return make("ECR", 2, GateClass::TwoPhysical); }
GateKind sw() { return make("SW", 2, GateClass::SwitchMarker); }
GateKind sdel() { return make("SDEL", 1, GateClass::SwitchDelay); }
GateKind measure() { return make("MEASURE", 1, GateClass::Meta); }
GateKind barrier(int num_qubits) { return make("BARRIER", num_qubits, GateClass::Meta); }

} // namespace gates

GateId Circuit::add(GateKind kind, std::vector<int> qubits, std::int64_t duration_ns) {
    GateInstance g;
    g.id = next_id_++;
    g.kind = std::move(kind);
    g.qubits = std::move(qubits);
    g.duration_ns = duration_ns;
    gates_.push_back(std::move(g));
    return gates_.back().id;
}

void Circuit::add_instance(GateInstance gate) {
    next_id_ = std::max(next_id_, gate.id + 1);
    gates_.push_back(std::move(gate));
}

void Circuit::validate() const {
    std::unordered_set<GateId> seen;
    for (const auto& g : gates_) {
        if (!seen.insert(g.id).second) {
            throw ValidationError("duplicate gate id " + std::to_string(g.id));
        }
        if (static_cast<int>(g.qubits.size()) != g.kind.arity) {
            throw ValidationError("gate " + g.kind.name + " arity " + std::to_string(g.kind.arity) +
                                  " applied to " + std::to_string(g.qubits.size()) + " qubits");
        }
        std::unordered_set<int> qs;
        for (int q : g.qubits) {
            if (q < 0 || q >= num_qubits_) {
                throw ValidationError("gate " + g.kind.name + " references qubit " + std::to_string(q) +
                                      " outside [0, " + std::to_string(num_qubits_) + ")");
            }
            if (!qs.insert(q).second) {
                throw ValidationError("gate " + g.kind.name + " repeats qubit " + std::to_string(q));
            }
        }
        if (g.duration_ns < 0) {
            throw ValidationError("gate " + g.kind.name + " has negative duration");
        }
    }
}

std::vector<std::vector<GateId>> Circuit::per_qubit_order() const {
    std::vector<std::vector<GateId>> order(num_qubits_);
    for (const auto& g : gates_) {
        for (int q : g.qubits) {
            order[q].push_back(g.id);
        }
    }
    return order;
}

bool same_structure(const Circuit& a, const Circuit& b, double tol) {
    if (a.num_qubits() != b.num_qubits() || a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const auto& ga = a.gates()[i];
        const auto& gb = b.gates()[i];
        if (!same_kind(ga.kind, gb.kind, tol) || ga.qubits != gb.qubits) {
            return false;
        }
    }
    return true;
}

CircuitDag build_dag(const Circuit& circuit) {
    const auto& gs = circuit.gates();
    CircuitDag dag;
    dag.succ.resize(gs.size());
    dag.pred.resize(gs.size());
    dag.duration.resize(gs.size());
    dag.gate_id.resize(gs.size());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        dag.duration[i] = gs[i].duration_ns;
        dag.gate_id[i] = gs[i].id;
    }
    // Last gate seen on each qubit; one edge per consecutive same-qubit pair.
    std::vector<int> last(circuit.num_qubits(), -1);
    std::unordered_set<std::int64_t> edge_set;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        for (int q : gs[i].qubits) {
            const int p = last[q];
            if (p >= 0) {
                const std::int64_t key = static_cast<std::int64_t>(p) * static_cast<std::int64_t>(gs.size()) +
                                         static_cast<std::int64_t>(i);
                if (edge_set.insert(key).second) {
                    dag.succ[p].push_back(static_cast<int>(i));
                    dag.pred[i].push_back(p);
                    ++dag.num_edges;
                }
            }
            last[q] = static_cast<int>(i);
        }
    }
    return dag;
}

std::vector<std::int64_t> asap_starts(const CircuitDag& dag) {
    // Node indices are already topologically sorted (edges always point from
    // lower to higher statement index).
    std::vector<std::int64_t> start(dag.size(), 0);
    for (std::size_t i = 0; i < dag.size(); ++i) {
        std::int64_t s = 0;
        for (int p : dag.pred[i]) {
            s = std::max(s, start[p] + dag.duration[p]);
        }
        start[i] = s;
    }
    return start;
}

Schedule asap_schedule(const CircuitDag& dag) {
    const auto start = asap_starts(dag);
    Schedule sched;
    sched.start.reserve(dag.size());
    for (std::size_t i = 0; i < dag.size(); ++i) {
        sched.start.emplace(dag.gate_id[i], start[i]);
        sched.total_duration = std::max(sched.total_duration, start[i] + dag.duration[i]);
    }
    return sched;
}

std::int64_t circuit_duration_ns(const Circuit& circuit) {
    return asap_schedule(build_dag(circuit)).total_duration;
}

int depth(const Circuit& circuit) {
    std::vector<int> level(circuit.num_qubits(), 0);
    int d = 0;
    for (const auto& g : circuit.gates()) {
        if (!g.kind.is_physical()) {
            continue;
        }
        int l = 0;
        for (int q : g.qubits) {
            l = std::max(l, level[q]);
        }
        ++l;
        for (int q : g.qubits) {
            level[q] = l;
        }
        d = std::max(d, l);
    }
    return d;
}

DensityReport gate_densities(const Circuit& circuit) {
    DensityReport r;
    for (const auto& g : circuit.gates()) {
        if (g.kind.is_mux()) {
            throw ValidationError("gate_densities: circuit contains mux gate " + g.kind.name);
        }
        if (g.kind.cls == GateClass::SinglePhysical) {
            ++r.n1;
        } else if (g.kind.cls == GateClass::TwoPhysical) {
            ++r.n2;
        }
    }
    r.depth = depth(circuit);
    const std::int64_t nd = static_cast<std::int64_t>(circuit.num_qubits()) * r.depth;
    if (nd == 0) {
        throw ValidationError("gate_densities: degenerate input, n * D == 0");
    }
    r.rho1 = static_cast<double>(r.n1) / static_cast<double>(nd);
    r.rho2 = 2.0 * static_cast<double>(r.n2) / static_cast<double>(nd);
    r.rho_total = r.rho1 + r.rho2;
    return r;
}

} // namespace qmux
