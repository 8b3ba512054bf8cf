#pragma once

#include "qmux/hardware.hpp"

#include <cstdint>

namespace qmux {

/// Layered random-circuit toy model on a square grid, time units of t1 = 1.
struct ToyModelConfig {
    CouplingMap grid;
    int depth = 50;    ///< layers per trial
    double p1 = 0.2;   ///< per-qubit single-qubit gate probability per layer
    double p2 = 0.01;  ///< per-edge two-qubit gate probability per layer
    double t2 = 10.0;  ///< two-qubit duration in units of t1
    int k = 1;         ///< qubits per switch (trivial grouping)
    std::uint64_t seed = 0;
    /// Alternative reading of the no-two-qubit branch: count all single-qubit
    /// gates in the layer instead of the per-switch maximum.
    bool no2q_total_count = false;
};

struct ToyModelResult {
    double mean_factor = 1.0; ///< mean of serialized/ideal over trials
    double std_factor = 0.0;
};

/// Per layer: ideal time is t2 when any two-qubit gate fires, else 1 when any
/// single-qubit gate fires; serialized time replaces the single-qubit part by
/// the maximum gate count over switches (capped against t2 when a two-qubit
/// gate is present). Trials use derived per-trial RNG streams.
ToyModelResult toy_model_run(const ToyModelConfig& cfg, int trials);

/// Max-waiting-time queueing model: k iid Exp(eta) waiting times per trial.
struct QueueModel {
    double eta = 1.0;
    int k = 1;
    int trials = 100000;
    std::uint64_t seed = 0;
};

/// Monte Carlo mean of max(W_1..W_k). Deterministic per seed.
double queue_max_waiting_mc(const QueueModel& model);

/// Exact expectation H_k / eta with H_k the k-th harmonic number.
double expected_max_exponential(double eta, int k);

/// Exact variance of the max of k iid Exp(eta): sum 1/i^2 / eta^2.
double variance_max_exponential(double eta, int k);

} // namespace qmux
