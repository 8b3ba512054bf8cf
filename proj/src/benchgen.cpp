#include "qmux/benchgen.hpp"

#include "qmux/errors.hpp"
#include "qmux/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace qmux {

namespace {

constexpr double kPi = std::numbers::pi;

GateKind native_1q_kind(const std::string& name, Rng& rng) {
    if (name == "RX") {
        return gates::rx(rng.uniform(0.0, 2.0 * kPi));
    }
    if (name == "RY") {
        return gates::ry(rng.uniform(0.0, 2.0 * kPi));
    }
    if (name == "H") {
        return gates::h();
    }
    if (name == "X") {
        return gates::x();
    }
    if (name == "SX") {
        return gates::sx();
    }
    GateKind k;
    k.name = name;
    k.arity = 1;
    k.cls = GateClass::SinglePhysical;
    return k;
}

GateKind native_2q_kind(const std::string& name) {
    GateKind k;
    k.name = name;
    k.arity = 2;
    k.cls = GateClass::TwoPhysical;
    return k;
}

} // namespace

Circuit random_circuit(const RandomCircuitConfig& cfg, const HardwareSpec& spec) {
    if (cfg.n < 1 || cfg.n > spec.coupling.n) {
        throw ValidationError("random_circuit: need 1 <= n <= device qubits");
    }
    if (cfg.num_gates < 0) {
        throw ValidationError("random_circuit: negative gate count");
    }
    if (std::abs(cfg.w1 + cfg.w2 - 1.0) > 1e-9 || cfg.w1 < 0.0 || cfg.w2 < 0.0) {
        throw ValidationError("random_circuit: weights must be nonnegative and sum to 1");
    }

    std::vector<std::string> names_1q;
    for (const auto& [name, ns] : spec.native_1q) {
        names_1q.push_back(name);
    }
    std::vector<std::string> names_2q;
    for (const auto& [name, ns] : spec.native_2q) {
        names_2q.push_back(name);
    }
    // Edges inside the first n qubits.
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : spec.coupling.edges) {
        if (e.first < cfg.n && e.second < cfg.n) {
            edges.push_back(e);
        }
    }
    if (cfg.w2 > 0.0 && edges.empty() && cfg.num_gates > 0) {
        throw ValidationError("random_circuit: no coupling edges within the first n qubits");
    }

    Rng rng(Rng::derive(cfg.seed, 0x72616e64ULL));
    Circuit circuit(cfg.n);
    for (int i = 0; i < cfg.num_gates; ++i) {
        const bool two = rng.uniform() < cfg.w2;
        if (two) {
            const auto& e = edges[rng.bounded(edges.size())];
            const GateKind kind = native_2q_kind(names_2q[rng.bounded(names_2q.size())]);
            const std::int64_t ns = spec.duration_ns(kind);
            circuit.add(kind, {e.first, e.second}, ns);
        } else {
            const int q = static_cast<int>(rng.bounded(cfg.n));
            const GateKind kind = native_1q_kind(names_1q[rng.bounded(names_1q.size())], rng);
            const std::int64_t ns = spec.duration_ns(kind);
            circuit.add(kind, {q}, ns);
        }
    }
    return circuit;
}

namespace {

Circuit ghz(int n) {
    Circuit c(n);
    c.add(gates::h(), {0});
    for (int i = 0; i + 1 < n; ++i) {
        c.add(gates::cx(), {i, i + 1});
    }
    return c;
}

/// Controlled phase via two CXs and virtual RZs.
void add_cp(Circuit& c, int a, int b, double theta) {
    c.add(gates::rz(theta / 2), {a});
    c.add(gates::rz(theta / 2), {b});
    c.add(gates::cx(), {a, b});
    c.add(gates::rz(-theta / 2), {b});
    c.add(gates::cx(), {a, b});
}

Circuit qft(int n) {
    Circuit c(n);
    for (int i = 0; i < n; ++i) {
        c.add(gates::h(), {i});
        for (int j = i + 1; j < n; ++j) {
            add_cp(c, j, i, kPi / std::pow(2.0, j - i));
        }
    }
    return c;
}

Circuit graphstate(int n, std::uint64_t seed) {
    Rng rng(Rng::derive(seed, 0x677261ULL));
    Circuit c(n);
    for (int i = 0; i < n; ++i) {
        c.add(gates::h(), {i});
    }
    if (n < 2) {
        return c;
    }
    // Random connected graph: random spanning tree by sequential attachment,
    // then extra edges with the density of a degree-3-ish graph.
    std::vector<std::pair<int, int>> edges;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) {
        order[i] = i;
    }
    rng.shuffle(order);
    for (int i = 1; i < n; ++i) {
        const int j = static_cast<int>(rng.bounded(i));
        const int a = std::min(order[i], order[j]);
        const int b = std::max(order[i], order[j]);
        edges.emplace_back(a, b);
    }
    const int extra = n / 2;
    for (int t = 0; t < extra; ++t) {
        const int a = static_cast<int>(rng.bounded(n));
        const int b = static_cast<int>(rng.bounded(n));
        if (a == b) {
            continue;
        }
        const auto e = std::make_pair(std::min(a, b), std::max(a, b));
        if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
            edges.push_back(e);
        }
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) {
        c.add(gates::cz(), {a, b});
    }
    return c;
}

Circuit bernstein_vazirani(int n, std::uint64_t seed) {
    // Qubit n-1 is the ancilla; the oracle bitstring over qubits 0..n-2 is
    // drawn from the seed.
    Rng rng(Rng::derive(seed, 0x6276ULL));
    Circuit c(n);
    c.add(gates::x(), {n - 1});
    for (int i = 0; i < n; ++i) {
        c.add(gates::h(), {i});
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (rng.bounded(2) == 1) {
            c.add(gates::cx(), {i, n - 1});
        }
    }
    for (int i = 0; i + 1 < n; ++i) {
        c.add(gates::h(), {i});
    }
    for (int i = 0; i + 1 < n; ++i) {
        c.add(gates::measure(), {i});
    }
    return c;
}

Circuit wstate(int n) {
    // Cascade of F blocks (RY-conjugated CZ) followed by the CX chain.
    Circuit c(n);
    c.add(gates::x(), {n - 1});
    for (int i = n - 1; i >= 1; --i) {
        const double theta = std::acos(std::sqrt(1.0 / static_cast<double>(n - i + 1)));
        c.add(gates::ry(-theta), {i - 1});
        c.add(gates::cz(), {i, i - 1});
        c.add(gates::ry(theta), {i - 1});
    }
    for (int i = 1; i < n; ++i) {
        c.add(gates::cx(), {i - 1, i});
    }
    return c;
}

} // namespace

Circuit algo_circuit(const std::string& name, int n, std::uint64_t seed) {
    if (n < 1) {
        throw ValidationError("algo_circuit: need n >= 1");
    }
    if (name == "ghz") {
        return ghz(n);
    }
    if (name == "qft") {
        return qft(n);
    }
    if (name == "graphstate") {
        return graphstate(n, seed);
    }
    if (name == "bv") {
        return bernstein_vazirani(n, seed);
    }
    if (name == "wstate") {
        return wstate(n);
    }
    throw ValidationError("unknown algorithm '" + name + "' (known: ghz, qft, graphstate, bv, wstate)");
}

} // namespace qmux
