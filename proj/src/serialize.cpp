#include "qmux/serialize.hpp"

#include "qmux/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <vector>

namespace qmux {

namespace {

constexpr int kNoDistance = std::numeric_limits<int>::max();

struct QubitTimeline {
    std::vector<int> nodes; // node indices on this qubit, statement order
};

} // namespace

SerializedCircuit serialize(const RoutedCircuit& routed, const SwitchGrouping& grouping,
                            const HardwareSpec& spec, const SerializerOptions& opts) {
    const Circuit& in = routed.circuit;
    const std::int64_t t_sw = opts.t_sw_override_ns.value_or(spec.t_sw_ns);

    const auto dag = build_dag(in);
    const auto start = asap_starts(dag);
    const auto& gs = in.gates();

    // Per-qubit statement chains and, per gate, the distance (in that qubit's
    // own gate sequence, physical gates only) to the next two-qubit gate.
    std::vector<QubitTimeline> timeline(in.num_qubits());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        for (int q : gs[i].qubits) {
            timeline[q].nodes.push_back(static_cast<int>(i));
        }
    }
    // dist_next_2q[i] valid for physical 1q nodes: 1 if the next physical gate
    // on the qubit is two-qubit, 2 if one gate later, ...; kNoDistance if none.
    std::vector<int> dist_next_2q(gs.size(), kNoDistance);
    // prev_physical[i]: node index of the preceding physical gate on the same
    // qubit (1q gates only have one qubit), -1 if none.
    std::vector<int> prev_physical(gs.size(), -1);
    for (int q = 0; q < in.num_qubits(); ++q) {
        const auto& nodes = timeline[q].nodes;
        int next2q_pos = -1; // position in `physical` of next 2q, filled backwards
        std::vector<int> physical;
        for (int node : nodes) {
            if (gs[node].kind.is_physical()) {
                physical.push_back(node);
            }
        }
        std::vector<int> next2q(physical.size(), kNoDistance);
        for (int i = static_cast<int>(physical.size()) - 1; i >= 0; --i) {
            if (gs[physical[i]].kind.cls == GateClass::TwoPhysical) {
                next2q_pos = i;
            }
            if (gs[physical[i]].kind.cls == GateClass::SinglePhysical) {
                if (next2q_pos > i) {
                    next2q[i] = next2q_pos - i;
                }
                dist_next_2q[physical[i]] = next2q[i];
            }
            if (i > 0) {
                prev_physical[physical[i]] = physical[i - 1];
            }
        }
    }

    // Base-schedule two-qubit busy intervals per qubit, for omission rule (a).
    std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> busy2q(in.num_qubits());
    for (std::size_t i = 0; i < gs.size(); ++i) {
        if (gs[i].kind.cls == GateClass::TwoPhysical) {
            for (int q : gs[i].qubits) {
                busy2q[q].emplace_back(start[i], start[i] + gs[i].duration_ns);
            }
        }
    }
    for (auto& intervals : busy2q) {
        std::sort(intervals.begin(), intervals.end());
    }
    auto covered_by_2q = [&](int q, std::int64_t from, std::int64_t to) {
        for (const auto& [s, f] : busy2q[q]) {
            if (s <= from && f >= to) {
                return true;
            }
            if (s > from) {
                break;
            }
        }
        return false;
    };

    // Group gates by ASAP start time (the layer structure of the input).
    std::map<std::int64_t, std::vector<int>> layers;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        layers[start[i]].push_back(static_cast<int>(i));
    }

    const int m = grouping.m();
    std::vector<int> token(m, -1); // current token qubit per switch group

    Circuit out(in.num_qubits());
    GateId next_id = 0;
    for (const auto& g : gs) {
        next_id = std::max(next_id, g.id + 1);
    }
    SerializedCircuit result;

    auto group_of = [&](int q) {
        if (q >= static_cast<int>(grouping.group_of.size()) || grouping.group_of[q] < 0) {
            throw ValidationError("serialize: qubit " + std::to_string(q) +
                                  " is not covered by the switch grouping");
        }
        return grouping.group_of[q];
    };

    auto emit_original = [&](int node) { out.add_instance(gs[node]); };
    auto emit_sw = [&](int from, int to) {
        out.add_instance({next_id++, gates::sw(), {from, to}, 0});
        ++result.inserted_sw;
    };
    auto emit_sdel = [&](int q) {
        out.add_instance({next_id++, gates::sdel(), {q}, t_sw});
        ++result.inserted_sdel;
    };

    for (const auto& [layer_time, nodes] : layers) {
        // Non-serialized gates keep statement order and go first; they always
        // precede the layer's serialized 1q gates on any shared qubit.
        std::map<int, std::vector<int>> per_group; // switch -> 1q nodes in layer
        for (int node : nodes) {
            if (gs[node].kind.cls == GateClass::SinglePhysical) {
                per_group[group_of(gs[node].qubits[0])].push_back(node);
            } else {
                emit_original(node);
            }
        }
        for (auto& [gid, members] : per_group) {
            if (opts.order == OrderHeuristic::DistanceToNext2q) {
                std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
                    const int da = dist_next_2q[a];
                    const int db = dist_next_2q[b];
                    return da != db ? da < db : gs[a].qubits[0] < gs[b].qubits[0];
                });
            } else {
                std::sort(members.begin(), members.end(),
                          [&](int a, int b) { return gs[a].qubits[0] < gs[b].qubits[0]; });
            }

            // Move the token to the first gate's qubit (cross-layer, plain SW).
            const int first_q = gs[members.front()].qubits[0];
            if (token[gid] >= 0 && token[gid] != first_q) {
                emit_sw(token[gid], first_q);
            }
            token[gid] = first_q;
            emit_original(members.front());

            for (std::size_t i = 1; i < members.size(); ++i) {
                const int prev_node = members[i - 1];
                const int next_node = members[i];
                const int a = gs[prev_node].qubits[0];
                const int b = gs[next_node].qubits[0];
                emit_sw(a, b);

                bool hide = false;
                if (opts.hide_delays) {
                    const std::int64_t finish_prev = start[prev_node] + gs[prev_node].duration_ns;
                    // (a) both switch qubits sit in two-qubit gates across the
                    // whole switching window.
                    hide = covered_by_2q(a, finish_prev, finish_prev + t_sw) &&
                           covered_by_2q(b, finish_prev, finish_prev + t_sw);
                    // (b) the target's preceding two-qubit gate outlasts the
                    // window, so the delay is absorbed by its own readiness.
                    if (!hide) {
                        const int p = prev_physical[next_node];
                        if (p >= 0 && gs[p].kind.cls == GateClass::TwoPhysical &&
                            start[p] + gs[p].duration_ns >= finish_prev + t_sw) {
                            hide = true;
                        }
                    }
                }
                if (!hide) {
                    emit_sdel(b);
                }
                emit_original(next_node);
                token[gid] = b;
            }
        }
    }

    result.base_duration_ns = asap_schedule(dag).total_duration;
    result.duration_ns = circuit_duration_ns(out);
    result.circuit = std::move(out);
    return result;
}

Circuit strip_mux_gates(const Circuit& circuit) {
    Circuit out(circuit.num_qubits());
    for (const auto& g : circuit.gates()) {
        if (!g.kind.is_mux()) {
            out.add_instance(g);
        }
    }
    return out;
}

Circuit strip_mux_gates(const SerializedCircuit& serialized) { return strip_mux_gates(serialized.circuit); }

} // namespace qmux
