// Copyright 2026 The splitsim developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Test-only dense state-vector simulator. Serves as the independent oracle
// for the stabilizer machinery; deliberately kept naive.

#ifndef SPLITSIM_TESTS_DENSE_SIM_HPP
#define SPLITSIM_TESTS_DENSE_SIM_HPP

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "splitsim/circuit.hpp"
#include "splitsim/pauli.hpp"

namespace splitsim::oracle {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;

inline Matrix2 gate_matrix_1q(GateKind kind) {
    const Complex i{0, 1};
    const double s = 1.0 / std::sqrt(2.0);
    Matrix2 m;
    switch (kind) {
        case GateKind::H:
            m << s, s, s, -s;
            return m;
        case GateKind::S:
            m << 1, 0, 0, i;
            return m;
        case GateKind::S_DAG:
            m << 1, 0, 0, -i;
            return m;
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::Y:
            m << 0, -i, i, 0;
            return m;
        case GateKind::Z:
            m << 1, 0, 0, -1;
            return m;
        case GateKind::SQRT_X:
            m << s, -i * s, -i * s, s;
            return m;
        case GateKind::SQRT_X_DAG:
            m << s, i * s, i * s, s;
            return m;
        case GateKind::SQRT_Y:
            m << s, -s, s, s;
            return m;
        case GateKind::SQRT_Y_DAG:
            m << s, s, -s, s;
            return m;
        default:
            throw std::invalid_argument("not a single-qubit gate");
    }
}

/// Dense matrix of an n-qubit Hermitian-encoded Pauli string (qubit 0 is the
/// least significant index bit).
inline Eigen::MatrixXcd pauli_matrix(const PauliString &p) {
    size_t dim = size_t{1} << p.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    uint64_t xm = 0, zm = 0;
    size_t y_count = 0;
    for (size_t q = 0; q < p.n_qubits; q++) {
        xm |= uint64_t{p.x_bit(q)} << q;
        zm |= uint64_t{p.z_bit(q)} << q;
        y_count += p.x_bit(q) && p.z_bit(q);
    }
    Complex phase = std::pow(Complex{0, 1}, static_cast<double>((p.phase_exponent + y_count) % 4));
    for (size_t col = 0; col < dim; col++) {
        size_t row = col ^ xm;
        double z_sign = (__builtin_popcountll(col & zm) & 1) ? -1.0 : 1.0;
        m(row, col) += phase * z_sign;
    }
    return m;
}

struct DenseSim {
    uint32_t n_qubits;
    Eigen::VectorXcd amps;

    explicit DenseSim(uint32_t n) : n_qubits(n), amps(Eigen::VectorXcd::Zero(size_t{1} << n)) {
        if (n > 12) {
            throw std::invalid_argument("dense oracle capped at 12 qubits");
        }
        amps[0] = 1.0;
    }

    void apply(const CliffordGate &g) {
        if (g.kind == GateKind::CZ) {
            size_t ma = size_t{1} << g.q0, mb = size_t{1} << g.q1;
            for (size_t k = 0; k < static_cast<size_t>(amps.size()); k++) {
                if ((k & ma) && (k & mb)) {
                    amps[k] = -amps[k];
                }
            }
            return;
        }
        Matrix2 m = gate_matrix_1q(g.kind);
        size_t mq = size_t{1} << g.q0;
        for (size_t k = 0; k < static_cast<size_t>(amps.size()); k++) {
            if (k & mq) {
                continue;
            }
            Complex a0 = amps[k], a1 = amps[k | mq];
            amps[k] = m(0, 0) * a0 + m(0, 1) * a1;
            amps[k | mq] = m(1, 0) * a0 + m(1, 1) * a1;
        }
    }

    double prob_one(uint32_t q) const {
        size_t mq = size_t{1} << q;
        double p = 0;
        for (size_t k = 0; k < static_cast<size_t>(amps.size()); k++) {
            if (k & mq) {
                p += std::norm(amps[k]);
            }
        }
        return p;
    }

    /// Measures Z on q; returns bit (1 <=> outcome -1). Collapses the state.
    bool measure_z(uint32_t q, double uniform_draw) {
        double p1 = prob_one(q);
        bool bit = uniform_draw < p1;
        collapse(q, bit);
        return bit;
    }

    void reset_z(uint32_t q, double uniform_draw) {
        bool bit = measure_z(q, uniform_draw);
        if (bit) {
            apply(CliffordGate::single(GateKind::X, q));
        }
    }

    void collapse(uint32_t q, bool bit) {
        size_t mq = size_t{1} << q;
        double keep_prob = bit ? prob_one(q) : 1.0 - prob_one(q);
        double scale = 1.0 / std::sqrt(keep_prob);
        for (size_t k = 0; k < static_cast<size_t>(amps.size()); k++) {
            bool is_one = (k & mq) != 0;
            amps[k] = (is_one == bit) ? amps[k] * scale : 0.0;
        }
    }

    Complex expectation(const PauliString &p) const {
        Eigen::MatrixXcd m = pauli_matrix(p);
        return (amps.adjoint() * (m * amps))(0, 0);
    }
};

/// All 4^n - 1 non-identity Pauli strings over n qubits (positive sign).
inline std::vector<PauliString> all_nonidentity_paulis(uint32_t n) {
    std::vector<PauliString> out;
    size_t total = 1;
    for (uint32_t q = 0; q < n; q++) {
        total *= 4;
    }
    for (size_t code = 1; code < total; code++) {
        PauliString p(n);
        size_t c = code;
        for (uint32_t q = 0; q < n; q++) {
            int local = c % 4;
            c /= 4;
            p.set_x_bit(q, local == 1 || local == 2);
            p.set_z_bit(q, local == 2 || local == 3);
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace splitsim::oracle

#endif
