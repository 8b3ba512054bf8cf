// Test-only dense unitary oracle: builds the full 2^n matrix of a small
// circuit so gate decompositions can be checked against reference matrices.
// Qubit 0 is the most significant bit of the basis index.
#pragma once

#include "qmux/circuit.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace qmux::test {

using Cplx = std::complex<double>;
using Mat = std::vector<std::vector<Cplx>>;

inline Mat identity(std::size_t dim) {
    Mat m(dim, std::vector<Cplx>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
        m[i][i] = 1.0;
    }
    return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
    const std::size_t dim = a.size();
    Mat c(dim, std::vector<Cplx>(dim, 0.0));
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t k = 0; k < dim; ++k) {
            if (std::abs(a[i][k]) == 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < dim; ++j) {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return c;
}

inline Mat gate_matrix(const GateKind& kind) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Cplx i(0.0, 1.0);
    if (kind.name == "H") {
        return {{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
    }
    if (kind.name == "X") {
        return {{0, 1}, {1, 0}};
    }
    if (kind.name == "SX") {
        return {{Cplx(0.5, 0.5), Cplx(0.5, -0.5)}, {Cplx(0.5, -0.5), Cplx(0.5, 0.5)}};
    }
    if (kind.name == "RX") {
        const double t = kind.params.at(0);
        return {{std::cos(t / 2), -i * std::sin(t / 2)}, {-i * std::sin(t / 2), std::cos(t / 2)}};
    }
    if (kind.name == "RY") {
        const double t = kind.params.at(0);
        return {{std::cos(t / 2), -std::sin(t / 2)}, {std::sin(t / 2), std::cos(t / 2)}};
    }
    if (kind.name == "RZ") {
        const double t = kind.params.at(0);
        return {{std::exp(-i * (t / 2)), 0}, {0, std::exp(i * (t / 2))}};
    }
    if (kind.name == "CX") {
        return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    }
    if (kind.name == "CZ") {
        return {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}};
    }
    if (kind.name == "SWAP") {
        return {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}};
    }
    if (kind.name == "ISWAP") {
        return {{1, 0, 0, 0}, {0, 0, i, 0}, {0, i, 0, 0}, {0, 0, 0, 1}};
    }
    if (kind.name == "ECR") {
        return {{0, inv_sqrt2, 0, i * inv_sqrt2},
                {inv_sqrt2, 0, -i * inv_sqrt2, 0},
                {0, i * inv_sqrt2, 0, inv_sqrt2},
                {-i * inv_sqrt2, 0, inv_sqrt2, 0}};
    }
    throw std::runtime_error("matrix oracle: no matrix for gate " + kind.name);
}

/// Embeds a 1- or 2-qubit gate matrix into the full 2^n space.
inline Mat embed(const Mat& g, const std::vector<int>& qubits, int n) {
    const std::size_t dim = std::size_t{1} << n;
    auto sub_index = [&](std::size_t basis) {
        std::size_t s = 0;
        for (int q : qubits) {
            s = (s << 1) | ((basis >> (n - 1 - q)) & 1U);
        }
        return s;
    };
    auto rest_mask = [&](std::size_t basis) {
        std::size_t r = basis;
        for (int q : qubits) {
            r &= ~(std::size_t{1} << (n - 1 - q));
        }
        return r;
    };
    Mat full(dim, std::vector<Cplx>(dim, 0.0));
    for (std::size_t row = 0; row < dim; ++row) {
        for (std::size_t col = 0; col < dim; ++col) {
            if (rest_mask(row) != rest_mask(col)) {
                continue;
            }
            full[row][col] = g[sub_index(row)][sub_index(col)];
        }
    }
    return full;
}

/// Full unitary of a circuit (mux/meta gates act as identity). n <= 4.
inline Mat circuit_unitary(const Circuit& c) {
    const int n = c.num_qubits();
    Mat u = identity(std::size_t{1} << n);
    for (const auto& g : c.gates()) {
        if (g.kind.cls == GateClass::Meta || g.kind.is_mux()) {
            continue;
        }
        u = mul(embed(gate_matrix(g.kind), g.qubits, n), u);
    }
    return u;
}

inline bool equal_up_to_phase(const Mat& a, const Mat& b, double tol = 1e-9) {
    const std::size_t dim = a.size();
    Cplx phase = 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (std::abs(b[i][j]) > best) {
                best = std::abs(b[i][j]);
                phase = a[i][j] / b[i][j];
            }
        }
    }
    if (std::abs(std::abs(phase) - 1.0) > tol) {
        return false;
    }
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            if (std::abs(a[i][j] - phase * b[i][j]) > tol) {
                return false;
            }
        }
    }
    return true;
}

} // namespace qmux::test
