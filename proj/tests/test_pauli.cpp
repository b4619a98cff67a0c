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

#include "splitsim/pauli.hpp"

#include <random>

#include "gtest/gtest.h"
#include "support/dense_sim.hpp"

using namespace splitsim;

TEST(PauliString, parse_and_print) {
    auto p = PauliString::from_str("+XIZY");
    EXPECT_EQ(p.n_qubits, 4u);
    EXPECT_TRUE(p.x_bit(0));
    EXPECT_FALSE(p.x_bit(1));
    EXPECT_TRUE(p.z_bit(2));
    EXPECT_TRUE(p.x_bit(3) && p.z_bit(3));
    EXPECT_EQ(p.str(), "+X_ZY");
    EXPECT_EQ(PauliString::from_str("-YY").str(), "-YY");
}

TEST(PauliMultiply, x_times_x_is_identity) {
    auto x = PauliString::from_str("+X");
    auto p = pauli_multiply(x, x);
    EXPECT_TRUE(p.is_identity());
    EXPECT_EQ(p.sign(), +1);
}

TEST(PauliMultiply, anticommutation_of_x_and_z) {
    auto x = PauliString::from_str("+X");
    auto z = PauliString::from_str("+Z");
    auto xz = pauli_multiply(x, z);
    auto zx = pauli_multiply(z, x);
    // X*Z = -iY, Z*X = +iY: same mask, opposite transient phase.
    EXPECT_EQ(xz.phase_exponent, 3);
    EXPECT_EQ(zx.phase_exponent, 1);
    EXPECT_NE(xz, zx);
    auto sq = pauli_multiply(xz, xz);
    EXPECT_TRUE(sq.is_identity());
    EXPECT_EQ(sq.sign(), -1);
}

TEST(PauliMultiply, tensor_factorization) {
    auto a = PauliString::from_str("+XI");
    auto b = PauliString::from_str("+XZ");
    auto p = pauli_multiply(a, b);
    EXPECT_EQ(p.str(), "+_Z");
    EXPECT_EQ(p.sign(), +1);
}

TEST(PauliMultiply, size_mismatch_throws) {
    EXPECT_THROW(pauli_multiply(PauliString::from_str("+X"), PauliString::from_str("+XX")),
                 std::invalid_argument);
}

TEST(PauliMultiply, matches_dense_matrices_on_random_pairs) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 200; trial++) {
        uint32_t n = 1 + rng() % 3;
        PauliString a(n), b(n);
        for (uint32_t q = 0; q < n; q++) {
            a.set_x_bit(q, rng() & 1);
            a.set_z_bit(q, rng() & 1);
            b.set_x_bit(q, rng() & 1);
            b.set_z_bit(q, rng() & 1);
        }
        a.phase_exponent = rng() % 4;
        b.phase_exponent = rng() % 4;
        auto prod = pauli_multiply(a, b);
        Eigen::MatrixXcd dense = oracle::pauli_matrix(a) * oracle::pauli_matrix(b);
        EXPECT_LT((dense - oracle::pauli_matrix(prod)).norm(), 1e-12);
    }
}

TEST(PauliMultiply, associativity) {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; trial++) {
        uint32_t n = 1 + rng() % 5;
        auto rand_pauli = [&] {
            PauliString p(n);
            for (uint32_t q = 0; q < n; q++) {
                p.set_x_bit(q, rng() & 1);
                p.set_z_bit(q, rng() & 1);
            }
            p.phase_exponent = rng() % 4;
            return p;
        };
        auto a = rand_pauli(), b = rand_pauli(), c = rand_pauli();
        EXPECT_EQ(pauli_multiply(pauli_multiply(a, b), c), pauli_multiply(a, pauli_multiply(b, c)));
    }
}

TEST(ConjugateByGate, hadamard_exchanges_x_and_z) {
    auto p = conjugate_by_gate(PauliString::from_str("+X"), CliffordGate::single(GateKind::H, 0));
    EXPECT_EQ(p.str(), "+Z");
}

TEST(ConjugateByGate, cz_propagates_x_to_xz) {
    auto p = conjugate_by_gate(PauliString::from_str("+XI"), CliffordGate::cz(0, 1));
    EXPECT_EQ(p.str(), "+XZ");
}

TEST(ConjugateByGate, s_on_y_gives_minus_x) {
    auto p = conjugate_by_gate(PauliString::from_str("+Y"), CliffordGate::single(GateKind::S, 0));
    EXPECT_EQ(p.str(), "-X");
}

TEST(ConjugateByGate, matches_dense_conjugation_for_all_single_qubit_gates) {
    const GateKind kinds[] = {
        GateKind::H, GateKind::S, GateKind::S_DAG, GateKind::X, GateKind::Y, GateKind::Z,
        GateKind::SQRT_X, GateKind::SQRT_X_DAG, GateKind::SQRT_Y, GateKind::SQRT_Y_DAG,
    };
    for (GateKind kind : kinds) {
        auto u = oracle::gate_matrix_1q(kind);
        for (const auto &text : {"+X", "+Y", "+Z", "-X", "-Y", "-Z"}) {
            auto p = PauliString::from_str(text);
            auto image = conjugate_by_gate(p, CliffordGate::single(kind, 0));
            Eigen::MatrixXcd expected = u * oracle::pauli_matrix(p) * u.adjoint();
            EXPECT_LT((expected - oracle::pauli_matrix(image)).norm(), 1e-12)
                << gate_name(kind) << " on " << text;
        }
    }
}

TEST(ConjugateByGate, matches_dense_conjugation_for_cz) {
    Eigen::MatrixXcd cz = Eigen::MatrixXcd::Identity(4, 4);
    cz(3, 3) = -1;
    const char locals[] = {'I', 'X', 'Z', 'Y'};
    for (char a : locals) {
        for (char b : locals) {
            std::string text = std::string("+") + a + b;
            auto p = PauliString::from_str(text);
            auto image = conjugate_by_gate(p, CliffordGate::cz(0, 1));
            Eigen::MatrixXcd expected = cz * oracle::pauli_matrix(p) * cz.adjoint();
            EXPECT_LT((expected - oracle::pauli_matrix(image)).norm(), 1e-12) << text;
        }
    }
}

TEST(ConjugateByGate, preserves_commutation_relations) {
    std::mt19937_64 rng(7);
    const GateKind kinds[] = {
        GateKind::H, GateKind::S, GateKind::S_DAG, GateKind::X, GateKind::Y, GateKind::Z,
        GateKind::SQRT_X, GateKind::SQRT_X_DAG, GateKind::SQRT_Y, GateKind::SQRT_Y_DAG,
        GateKind::CZ,
    };
    for (int trial = 0; trial < 500; trial++) {
        uint32_t n = 2 + rng() % 3;
        auto rand_pauli = [&] {
            PauliString p(n);
            for (uint32_t q = 0; q < n; q++) {
                p.set_x_bit(q, rng() & 1);
                p.set_z_bit(q, rng() & 1);
            }
            return p;
        };
        auto p = rand_pauli(), q = rand_pauli();
        GateKind kind = kinds[rng() % std::size(kinds)];
        CliffordGate g = gate_is_two_qubit(kind)
                             ? CliffordGate::cz(0, 1)
                             : CliffordGate::single(kind, rng() % n);
        EXPECT_EQ(p.commutes_with(q), conjugate_by_gate(p, g).commutes_with(conjugate_by_gate(q, g)));
    }
}

TEST(ConjugateByGate, out_of_range_throws) {
    EXPECT_THROW(conjugate_by_gate(PauliString::from_str("+X"), CliffordGate::single(GateKind::H, 3)),
                 std::invalid_argument);
}
