#include "qmux/routing.hpp"

#include "qmux/errors.hpp"
#include "qmux/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>

namespace qmux {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxExpandDepth = 8;

void expand_impl(const GateKind& kind, const std::vector<int>& qs, const HardwareSpec& spec, Circuit& out,
                 int depth) {
    if (depth > kMaxExpandDepth) {
        throw ValidationError("rebase rule recursion too deep for gate " + kind.name);
    }
    if (kind.cls == GateClass::Meta || kind.cls == GateClass::SwitchMarker) {
        out.add(kind, qs, 0);
        return;
    }
    if (kind.cls == GateClass::SwitchDelay) {
        out.add(kind, qs, spec.t_sw_ns);
        return;
    }
    if (spec.is_native(kind)) {
        out.add(kind, qs, spec.duration_ns(kind));
        return;
    }
    auto rec = [&](const GateKind& k, std::vector<int> q) { expand_impl(k, q, spec, out, depth + 1); };
    const bool has_sx = spec.native_1q.count("SX") > 0;
    const bool has_rx = spec.native_1q.count("RX") > 0;

    if (kind.name == "H") {
        if (has_sx) {
            rec(gates::rz(kPi / 2), {qs[0]});
            rec(gates::sx(), {qs[0]});
            rec(gates::rz(kPi / 2), {qs[0]});
            return;
        }
        if (has_rx) {
            rec(gates::rz(kPi / 2), {qs[0]});
            rec(gates::rx(kPi / 2), {qs[0]});
            rec(gates::rz(kPi / 2), {qs[0]});
            return;
        }
    } else if (kind.name == "X") {
        if (has_rx) {
            rec(gates::rx(kPi), {qs[0]});
            return;
        }
        if (has_sx) {
            rec(gates::sx(), {qs[0]});
            rec(gates::sx(), {qs[0]});
            return;
        }
    } else if (kind.name == "SX") {
        if (has_rx) {
            rec(gates::rx(kPi / 2), {qs[0]});
            return;
        }
    } else if (kind.name == "RX") {
        // RX(t) = RZ(pi/2) . SX . RZ(t+pi) . SX . RZ(pi/2)   (time order)
        if (has_sx) {
            rec(gates::rz(kPi / 2), {qs[0]});
            rec(gates::sx(), {qs[0]});
            rec(gates::rz(kind.params[0] + kPi), {qs[0]});
            rec(gates::sx(), {qs[0]});
            rec(gates::rz(kPi / 2), {qs[0]});
            return;
        }
    } else if (kind.name == "RY") {
        // RY(t) = SX . RZ(t+pi) . SX . RZ(pi)   (time order)
        if (has_sx) {
            rec(gates::sx(), {qs[0]});
            rec(gates::rz(kind.params[0] + kPi), {qs[0]});
            rec(gates::sx(), {qs[0]});
            rec(gates::rz(kPi), {qs[0]});
            return;
        }
    } else if (kind.name == "CX") {
        if (spec.native_2q.count("CZ") > 0) {
            rec(gates::h(), {qs[1]});
            rec(gates::cz(), {qs[0], qs[1]});
            rec(gates::h(), {qs[1]});
            return;
        }
        if (spec.native_2q.count("ECR") > 0) {
            // CX(a,b) = ECR(b,a), then RZ(pi/2).X on a and RZ(pi).SX.RZ(pi)
            // on b (time order); matrix-checked in the rebase oracle tests.
            rec(gates::ecr(), {qs[1], qs[0]});
            rec(gates::rz(kPi / 2), {qs[0]});
            rec(gates::x(), {qs[0]});
            rec(gates::rz(kPi), {qs[1]});
            rec(gates::sx(), {qs[1]});
            rec(gates::rz(kPi), {qs[1]});
            return;
        }
    } else if (kind.name == "CZ") {
        if (spec.native_2q.count("CX") > 0 || spec.native_2q.count("ECR") > 0) {
            rec(gates::h(), {qs[1]});
            rec(gates::cx(), {qs[0], qs[1]});
            rec(gates::h(), {qs[1]});
            return;
        }
    } else if (kind.name == "ISWAP") {
        // iswap = S a . S b . H a . CX(a,b) . CX(b,a) . H b
        rec(gates::rz(kPi / 2), {qs[0]});
        rec(gates::rz(kPi / 2), {qs[1]});
        rec(gates::h(), {qs[0]});
        rec(gates::cx(), {qs[0], qs[1]});
        rec(gates::cx(), {qs[1], qs[0]});
        rec(gates::h(), {qs[1]});
        return;
    } else if (kind.name == "SWAP") {
        rec(gates::cx(), {qs[0], qs[1]});
        rec(gates::cx(), {qs[1], qs[0]});
        rec(gates::cx(), {qs[0], qs[1]});
        return;
    } else if (kind.name == "ECR") {
        // ECR(a,b) = H a . H b . CX(a,b) . RZ(pi/2) a . H a . RZ(-pi/2) b . RX(pi/2) b
        rec(gates::h(), {qs[0]});
        rec(gates::h(), {qs[1]});
        rec(gates::cx(), {qs[0], qs[1]});
        rec(gates::rz(kPi / 2), {qs[0]});
        rec(gates::h(), {qs[0]});
        rec(gates::rz(-kPi / 2), {qs[1]});
        rec(gates::rx(kPi / 2), {qs[1]});
        return;
    } else if (kind.name == "RZ") {
        if (spec.virtual_gates.count("RZ") > 0) {
            out.add(kind, qs, 0);
            return;
        }
    }
    throw ValidationError("no rebase rule for gate " + kind.name + " on this hardware spec");
}

} // namespace

void expand_to_native(const GateKind& kind, const std::vector<int>& qubits, const HardwareSpec& spec,
                      Circuit& out) {
    expand_impl(kind, qubits, spec, out, 0);
}

Circuit rebase_to_native(const Circuit& circuit, const HardwareSpec& spec) {
    Circuit out(circuit.num_qubits());
    for (const auto& g : circuit.gates()) {
        expand_impl(g.kind, g.qubits, spec, out, 0);
    }
    return out;
}

namespace {

struct Sabre {
    const Circuit& circuit;
    const HardwareSpec& spec;
    const std::vector<std::vector<int>>& dist;
    std::vector<std::vector<int>> adj;
    Rng jitter_rng;

    std::vector<int> phys_of; // logical -> physical
    std::vector<int> log_of;  // physical -> logical, -1 if free
    std::vector<double> decay;
    Circuit out;
    int swap_count = 0;
    std::size_t scan_hint = 0;

    // gate dependency state
    CircuitDag dag;
    std::vector<int> unresolved; // remaining predecessor count per node
    std::vector<char> done;
    std::vector<int> ready; // sorted node indices with unresolved == 0

    static constexpr std::size_t kExtendedSize = 20;
    static constexpr double kExtendedWeight = 0.5;
    static constexpr double kDecayStep = 0.001;
    static constexpr double kJitterScale = 1e-6;

    Sabre(const Circuit& c, const HardwareSpec& s, const std::vector<std::vector<int>>& d, std::uint64_t seed)
        : circuit(c), spec(s), dist(d), adj(s.coupling.adjacency()),
          jitter_rng(Rng::derive(seed, 0x726f757465ULL)), out(s.coupling.n) {
        const int n_phys = spec.coupling.n;
        phys_of.resize(circuit.num_qubits());
        log_of.assign(n_phys, -1);
        for (int q = 0; q < circuit.num_qubits(); ++q) {
            phys_of[q] = q;
            log_of[q] = q;
        }
        decay.assign(n_phys, 1.0);
        dag = build_dag(circuit);
        unresolved.resize(dag.size());
        done.assign(dag.size(), 0);
        for (std::size_t i = 0; i < dag.size(); ++i) {
            unresolved[i] = static_cast<int>(dag.pred[i].size());
            if (unresolved[i] == 0) {
                ready.push_back(static_cast<int>(i));
            }
        }
    }

    bool executable(int node) const {
        const auto& g = circuit.gates()[node];
        if (g.kind.cls != GateClass::TwoPhysical) {
            return true;
        }
        return spec.coupling.has_edge(phys_of[g.qubits[0]], phys_of[g.qubits[1]]);
    }

    void execute(int node) {
        const auto& g = circuit.gates()[node];
        std::vector<int> phys(g.qubits.size());
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            phys[i] = phys_of[g.qubits[i]];
        }
        out.add(g.kind, std::move(phys), spec.duration_ns(g.kind));
        done[node] = 1;
        for (int s : dag.succ[node]) {
            if (--unresolved[s] == 0) {
                ready.push_back(s);
            }
        }
    }

    /// Executes every ready gate that is currently executable; returns the
    /// number executed. Keeps `ready` sorted so output order is canonical.
    int flush_ready() {
        int executed = 0;
        bool progress = true;
        while (progress) {
            progress = false;
            std::sort(ready.begin(), ready.end());
            std::vector<int> still;
            for (int node : ready) {
                if (executable(node)) {
                    execute(node);
                    ++executed;
                    progress = true;
                } else {
                    still.push_back(node);
                }
            }
            ready = std::move(still);
        }
        return executed;
    }

    std::vector<std::pair<int, int>> blocked_pairs() const {
        std::vector<std::pair<int, int>> pairs;
        for (int node : ready) {
            const auto& g = circuit.gates()[node];
            pairs.emplace_back(phys_of[g.qubits[0]], phys_of[g.qubits[1]]);
        }
        return pairs;
    }

    /// Next two-qubit gates beyond the front layer, in statement order.
    std::vector<std::pair<int, int>> extended_pairs() {
        while (scan_hint < dag.size() && done[scan_hint]) {
            ++scan_hint;
        }
        std::vector<std::pair<int, int>> pairs;
        std::unordered_set<int> front(ready.begin(), ready.end());
        for (std::size_t i = scan_hint; i < dag.size() && pairs.size() < kExtendedSize; ++i) {
            if (done[i] || front.count(static_cast<int>(i))) {
                continue;
            }
            const auto& g = circuit.gates()[i];
            if (g.kind.cls == GateClass::TwoPhysical) {
                pairs.emplace_back(phys_of[g.qubits[0]], phys_of[g.qubits[1]]);
            }
        }
        return pairs;
    }

    void apply_best_swap() {
        const auto front = blocked_pairs();
        const auto ext = extended_pairs();
        // Candidate swaps: coupling edges touching a frontier qubit.
        std::unordered_set<int> active;
        for (const auto& [a, b] : front) {
            active.insert(a);
            active.insert(b);
        }
        double best_score = std::numeric_limits<double>::infinity();
        std::pair<int, int> best_edge{-1, -1};
        for (const auto& edge : spec.coupling.edges) {
            if (!active.count(edge.first) && !active.count(edge.second)) {
                continue;
            }
            const double score = swap_score(edge, front, ext);
            if (score < best_score - 1e-12 ||
                (std::abs(score - best_score) <= 1e-12 && edge < best_edge)) {
                best_score = score;
                best_edge = edge;
            }
        }
        if (best_edge.first < 0) {
            throw PipelineError("router stuck with no candidate swaps");
        }
        insert_swap(best_edge.first, best_edge.second);
    }

    double swap_score(const std::pair<int, int>& edge, const std::vector<std::pair<int, int>>& front,
                      const std::vector<std::pair<int, int>>& ext) {
        auto mapped = [&](int p) { return p == edge.first ? edge.second : (p == edge.second ? edge.first : p); };
        double f = 0.0;
        for (const auto& [a, b] : front) {
            f += dist[mapped(a)][mapped(b)];
        }
        f /= static_cast<double>(front.size());
        double e = 0.0;
        if (!ext.empty()) {
            for (const auto& [a, b] : ext) {
                e += dist[mapped(a)][mapped(b)];
            }
            e /= static_cast<double>(ext.size());
        }
        const double base = f + kExtendedWeight * e;
        const double d = std::max(decay[edge.first], decay[edge.second]);
        return d * base + kJitterScale * jitter_rng.uniform();
    }

    void insert_swap(int pa, int pb) {
        if (decompose_swaps_) {
            Circuit tmp(out.num_qubits());
            expand_impl(gates::swap(), {pa, pb}, spec, tmp, 0);
            for (const auto& g : tmp.gates()) {
                out.add(g.kind, g.qubits, g.duration_ns);
            }
        } else {
            out.add(gates::swap(), {pa, pb}, 0); // marker for permutation checks
        }
        ++swap_count;
        const int la = log_of[pa];
        const int lb = log_of[pb];
        if (la >= 0) {
            phys_of[la] = pb;
        }
        if (lb >= 0) {
            phys_of[lb] = pa;
        }
        std::swap(log_of[pa], log_of[pb]);
        decay[pa] += kDecayStep;
        decay[pb] += kDecayStep;
    }

    void run(bool decompose_swaps) {
        decompose_swaps_ = decompose_swaps;
        int stall = 0;
        const int stall_limit = 10 * std::max(1, spec.coupling.n);
        while (true) {
            if (flush_ready() > 0) {
                std::fill(decay.begin(), decay.end(), 1.0);
                stall = 0;
            }
            if (ready.empty()) {
                break;
            }
            if (++stall > stall_limit) {
                force_route_front();
                stall = 0;
                continue;
            }
            apply_best_swap();
        }
    }

    /// Escape hatch: walk the lowest blocked pair together along a shortest
    /// path. Rarely needed; guarantees termination.
    void force_route_front() {
        std::sort(ready.begin(), ready.end());
        const auto& g = circuit.gates()[ready.front()];
        while (true) {
            const int pa = phys_of[g.qubits[0]];
            const int pb = phys_of[g.qubits[1]];
            if (dist[pa][pb] <= 1) {
                return;
            }
            int next = -1;
            for (int v : adj[pa]) {
                if (dist[v][pb] == dist[pa][pb] - 1 && (next < 0 || v < next)) {
                    next = v;
                }
            }
            insert_swap(std::min(pa, next), std::max(pa, next));
        }
    }

    bool decompose_swaps_ = true;
};

} // namespace

RoutedCircuit route(const Circuit& circuit, const HardwareSpec& spec, std::uint64_t seed,
                    const RouteOptions& opts) {
    if (circuit.num_qubits() > spec.coupling.n) {
        throw ValidationError("circuit uses " + std::to_string(circuit.num_qubits()) +
                              " qubits but the device has " + std::to_string(spec.coupling.n));
    }
    for (const auto& g : circuit.gates()) {
        if (g.kind.is_mux()) {
            throw ValidationError("route: circuit already contains mux gates");
        }
        if (g.kind.is_physical() && !spec.is_native(g.kind)) {
            throw ValidationError("route: gate " + g.kind.name + " is not native; rebase first");
        }
    }
    if (!spec.coupling.connected()) {
        throw ValidationError("route: coupling map is not connected");
    }

    const auto dist = spec.coupling.distances();
    Sabre sabre(circuit, spec, dist, seed);
    sabre.run(opts.decompose_swaps);

    RoutedCircuit routed;
    routed.layout = sabre.phys_of;
    routed.swap_count = sabre.swap_count;
    routed.seed = seed;
    routed.circuit = std::move(sabre.out);
    return routed;
}

} // namespace qmux
