#include "qmux/circuit.hpp"

#include "qmux/errors.hpp"
#include "qmux/rng.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <set>

namespace qmux {
namespace {

Circuit grid_chain_hcz() {
    Circuit c(2);
    c.add(gates::h(), {0}, 20);
    c.add(gates::cz(), {0, 1}, 200);
    return c;
}

std::set<std::pair<int, int>> edge_set(const CircuitDag& dag) {
    std::set<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < dag.size(); ++i) {
        for (int s : dag.succ[i]) {
            edges.insert({static_cast<int>(i), s});
        }
    }
    return edges;
}

TEST(BuildDag, PerQubitAdjacency) {
    Circuit c(2);
    c.add(gates::h(), {0}, 20);
    c.add(gates::cz(), {0, 1}, 200);
    c.add(gates::x(), {1}, 20);
    const auto dag = build_dag(c);
    EXPECT_EQ(edge_set(dag), (std::set<std::pair<int, int>>{{0, 1}, {1, 2}}));
}

TEST(BuildDag, EmptyCircuit) {
    const auto dag = build_dag(Circuit(3));
    EXPECT_EQ(dag.size(), 0U);
    EXPECT_EQ(dag.num_edges, 0);
}

TEST(BuildDag, SharedPairDeduplicated) {
    Circuit c(3);
    c.add(gates::cz(), {0, 1}, 200);
    c.add(gates::cz(), {1, 2}, 200);
    c.add(gates::cz(), {0, 1}, 200);
    const auto dag = build_dag(c);
    EXPECT_EQ(edge_set(dag), (std::set<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}}));
}

TEST(BuildDag, Deterministic) {
    Circuit c(4);
    c.add(gates::h(), {2}, 20);
    c.add(gates::cz(), {2, 3}, 200);
    c.add(gates::cz(), {0, 1}, 200);
    EXPECT_EQ(edge_set(build_dag(c)), edge_set(build_dag(c)));
}

TEST(BuildDag, BarrierOrdersAcrossQubits) {
    Circuit c(2);
    c.add(gates::h(), {0}, 20);
    c.add(gates::barrier(2), {0, 1}, 0);
    c.add(gates::h(), {1}, 20);
    const auto sched = asap_schedule(build_dag(c));
    // The barrier chains q1's gate behind q0's, but adds no duration itself.
    EXPECT_EQ(sched.total_duration, 40);
}

TEST(AsapSchedule, SerialChain) {
    EXPECT_EQ(asap_schedule(build_dag(grid_chain_hcz())).total_duration, 220);
}

TEST(AsapSchedule, ParallelGates) {
    Circuit c(2);
    c.add(gates::h(), {0}, 20);
    c.add(gates::h(), {1}, 20);
    EXPECT_EQ(asap_schedule(build_dag(c)).total_duration, 20);
}

TEST(AsapSchedule, VirtualRzIsFree) {
    Circuit c(2);
    c.add(gates::h(), {0}, 20);
    c.add(gates::rz(1.0), {0}, 0);
    c.add(gates::cz(), {0, 1}, 200);
    EXPECT_EQ(asap_schedule(build_dag(c)).total_duration, 220);
}

TEST(AsapSchedule, StartTimesSatisfyAsapProperty) {
    Circuit c(3);
    c.add(gates::h(), {0}, 20);
    c.add(gates::cz(), {0, 1}, 200);
    c.add(gates::h(), {2}, 20);
    c.add(gates::cz(), {1, 2}, 200);
    const auto dag = build_dag(c);
    const auto sched = asap_schedule(dag);
    const auto start = asap_starts(dag);
    for (std::size_t i = 0; i < dag.size(); ++i) {
        std::int64_t expect = 0;
        for (int p : dag.pred[i]) {
            expect = std::max(expect, start[p] + dag.duration[p]);
        }
        EXPECT_EQ(start[i], expect);
        EXPECT_EQ(sched.start.at(dag.gate_id[i]), start[i]);
    }
}

TEST(Depth, Examples) {
    EXPECT_EQ(depth(Circuit(2)), 0);
    Circuit twice(1);
    twice.add(gates::h(), {0}, 20);
    twice.add(gates::h(), {0}, 20);
    EXPECT_EQ(depth(twice), 2);
    Circuit mixed(3);
    mixed.add(gates::h(), {0}, 20);
    mixed.add(gates::cz(), {0, 1}, 200);
    mixed.add(gates::h(), {2}, 20);
    EXPECT_EQ(depth(mixed), 2);
}

TEST(Depth, VirtualGatesContributeNothing) {
    Circuit c(1);
    c.add(gates::rz(0.3), {0}, 0);
    c.add(gates::h(), {0}, 20);
    c.add(gates::rz(0.7), {0}, 0);
    EXPECT_EQ(depth(c), 1);
}

TEST(GateDensities, TwoQubitExample) {
    const auto r = gate_densities(grid_chain_hcz());
    EXPECT_EQ(r.n1, 1);
    EXPECT_EQ(r.n2, 1);
    EXPECT_EQ(r.depth, 2);
    EXPECT_DOUBLE_EQ(r.rho1, 0.25);
    EXPECT_DOUBLE_EQ(r.rho2, 0.5);
    EXPECT_DOUBLE_EQ(r.rho_total, 0.75);
}

TEST(GateDensities, DenseSingleQubitLayer) {
    Circuit c(3);
    for (int q = 0; q < 3; ++q) {
        c.add(gates::h(), {q}, 20);
    }
    const auto r = gate_densities(c);
    EXPECT_EQ(r.depth, 1);
    EXPECT_DOUBLE_EQ(r.rho1, 1.0);
    EXPECT_DOUBLE_EQ(r.rho2, 0.0);
}

TEST(GateDensities, ConstructedCountsMatchHandComputation) {
    // n=4 with N1=6, N2=3 arranged into depth 5.
    Circuit c(4);
    c.add(gates::cz(), {0, 1}, 200);
    c.add(gates::cz(), {2, 3}, 200);
    for (int q = 0; q < 4; ++q) {
        c.add(gates::h(), {q}, 20);
    }
    c.add(gates::cz(), {0, 1}, 200);
    c.add(gates::h(), {0}, 20);
    c.add(gates::h(), {0}, 20);
    const auto r = gate_densities(c);
    ASSERT_EQ(r.n1, 6);
    ASSERT_EQ(r.n2, 3);
    ASSERT_EQ(r.depth, 5);
    EXPECT_DOUBLE_EQ(r.rho1, 0.3);
    EXPECT_DOUBLE_EQ(r.rho2, 0.3);
}

TEST(GateDensities, DegenerateInputThrows) {
    EXPECT_THROW(gate_densities(Circuit(2)), ValidationError);
    Circuit mux(2);
    mux.add(gates::h(), {0}, 20);
    mux.add(gates::sw(), {0, 1}, 0);
    EXPECT_THROW(gate_densities(mux), ValidationError);
}

TEST(CircuitValidate, RejectsBadGates) {
    Circuit out_of_range(1);
    out_of_range.add(gates::h(), {1}, 20);
    EXPECT_THROW(out_of_range.validate(), ValidationError);

    Circuit repeated(2);
    repeated.add(gates::cz(), {1, 1}, 200);
    EXPECT_THROW(repeated.validate(), ValidationError);

    Circuit arity(2);
    arity.add(gates::cz(), {0}, 200);
    EXPECT_THROW(arity.validate(), ValidationError);
}

// ---- property tests ----

Circuit random_small_circuit(Rng& rng, int max_gates) {
    const int n = 2 + static_cast<int>(rng.bounded(4));
    Circuit c(n);
    const int gates_count = static_cast<int>(rng.bounded(max_gates + 1));
    for (int i = 0; i < gates_count; ++i) {
        switch (rng.bounded(4)) {
        case 0:
            c.add(gates::h(), {static_cast<int>(rng.bounded(n))}, 20);
            break;
        case 1:
            c.add(gates::rz(rng.uniform(0, 6.28)), {static_cast<int>(rng.bounded(n))}, 0);
            break;
        case 2: {
            const int a = static_cast<int>(rng.bounded(n));
            int b = static_cast<int>(rng.bounded(n));
            while (b == a) {
                b = static_cast<int>(rng.bounded(n));
            }
            c.add(gates::cz(), {a, b}, 200);
            break;
        }
        default:
            c.add(gates::rx(rng.uniform(0, 6.28)), {static_cast<int>(rng.bounded(n))}, 20);
            break;
        }
    }
    return c;
}

/// Exhaustive longest weighted path over all DAG paths (small circuits only).
std::int64_t brute_force_longest_path(const CircuitDag& dag) {
    std::int64_t best = 0;
    std::vector<std::size_t> stack;
    std::function<void(std::size_t, std::int64_t)> dfs = [&](std::size_t node, std::int64_t acc) {
        acc += dag.duration[node];
        best = std::max(best, acc);
        for (int s : dag.succ[node]) {
            dfs(static_cast<std::size_t>(s), acc);
        }
    };
    for (std::size_t i = 0; i < dag.size(); ++i) {
        if (dag.pred[i].empty()) {
            dfs(i, 0);
        }
    }
    return best;
}

TEST(AsapSchedule, MatchesBruteForceLongestPath) {
    Rng rng(20240811);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = random_small_circuit(rng, 12);
        const auto dag = build_dag(c);
        EXPECT_EQ(asap_schedule(dag).total_duration, brute_force_longest_path(dag));
    }
}

TEST(AsapSchedule, RemovingVirtualGatesKeepsDuration) {
    Rng rng(77001);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = random_small_circuit(rng, 20);
        Circuit without(c.num_qubits());
        for (const auto& g : c.gates()) {
            if (g.kind.cls != GateClass::Virtual) {
                without.add_instance(g);
            }
        }
        EXPECT_EQ(circuit_duration_ns(c), circuit_duration_ns(without));
    }
}

TEST(GateDensities, TotalDensityAtMostOne) {
    Rng rng(5150);
    for (int trial = 0; trial < 200; ++trial) {
        const Circuit c = random_small_circuit(rng, 30);
        bool physical = false;
        for (const auto& g : c.gates()) {
            physical |= g.kind.is_physical();
        }
        if (!physical) {
            continue;
        }
        const auto r = gate_densities(c);
        EXPECT_LE(r.rho_total, 1.0 + 1e-12);
    }
}

} // namespace
} // namespace qmux
