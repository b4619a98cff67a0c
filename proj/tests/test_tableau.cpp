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

#include "splitsim/tableau.hpp"

#include <random>

#include "gtest/gtest.h"
#include "support/dense_sim.hpp"
#include "support/stats.hpp"

using namespace splitsim;

namespace {

CliffordGate random_gate(std::mt19937_64 &rng, uint32_t n) {
    const GateKind kinds[] = {
        GateKind::H, GateKind::S, GateKind::S_DAG, GateKind::X, GateKind::Y, GateKind::Z,
        GateKind::SQRT_X, GateKind::SQRT_X_DAG, GateKind::SQRT_Y, GateKind::SQRT_Y_DAG,
        GateKind::CZ,
    };
    GateKind kind = kinds[rng() % std::size(kinds)];
    if (gate_is_two_qubit(kind) && n >= 2) {
        uint32_t a = rng() % n, b = rng() % n;
        while (b == a) {
            b = rng() % n;
        }
        return CliffordGate::cz(a, b);
    }
    if (gate_is_two_qubit(kind)) {
        kind = GateKind::H;
    }
    return CliffordGate::single(kind, rng() % n);
}

CliffordGate inverse_gate(const CliffordGate &g) {
    auto flip = [&](GateKind k) { return CliffordGate::single(k, g.q0); };
    switch (g.kind) {
        case GateKind::S:
            return flip(GateKind::S_DAG);
        case GateKind::S_DAG:
            return flip(GateKind::S);
        case GateKind::SQRT_X:
            return flip(GateKind::SQRT_X_DAG);
        case GateKind::SQRT_X_DAG:
            return flip(GateKind::SQRT_X);
        case GateKind::SQRT_Y:
            return flip(GateKind::SQRT_Y_DAG);
        case GateKind::SQRT_Y_DAG:
            return flip(GateKind::SQRT_Y);
        default:
            return g;  // self-inverse
    }
}

}  // namespace

TEST(StabilizerTableau, hadamard_turns_z_stabilizer_into_x) {
    StabilizerTableau tab(1);
    tab.apply(CliffordGate::single(GateKind::H, 0));
    EXPECT_EQ(tab.stabilizer_row(0).str(), "+X");
    EXPECT_TRUE(tab.satisfies_invariants());
}

TEST(StabilizerTableau, gate_then_inverse_restores_tableau) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; trial++) {
        uint32_t n = 2 + rng() % 4;
        StabilizerTableau tab(n);
        std::vector<CliffordGate> gates;
        for (int k = 0; k < 30; k++) {
            gates.push_back(random_gate(rng, n));
            tab.apply(gates.back());
        }
        StabilizerTableau snapshot = tab;
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
            // no-op round trip around the snapshot
            (void)it;
        }
        for (int k = 0; k < 30; k++) {
            auto g = random_gate(rng, n);
            tab.apply(g);
            tab.apply(inverse_gate(g));
        }
        EXPECT_EQ(tab.xs, snapshot.xs);
        EXPECT_EQ(tab.zs, snapshot.zs);
        EXPECT_EQ(tab.signs, snapshot.signs);
        EXPECT_TRUE(tab.satisfies_invariants());
    }
}

TEST(StabilizerTableau, random_circuits_match_dense_oracle_expectations) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 10; trial++) {
        uint32_t n = 5;
        StabilizerTableau tab(n);
        oracle::DenseSim dense(n);
        for (int k = 0; k < 60; k++) {
            auto g = random_gate(rng, n);
            tab.apply(g);
            dense.apply(g);
        }
        for (const auto &p : oracle::all_nonidentity_paulis(n)) {
            auto expected = dense.expectation(p);
            int got = tab.pauli_expectation(p);
            EXPECT_NEAR(expected.imag(), 0.0, 1e-9);
            EXPECT_NEAR(expected.real(), static_cast<double>(got), 1e-9) << p.str();
        }
    }
}

TEST(StabilizerTableau, measuring_zero_state_is_deterministic_plus_one) {
    StabilizerTableau tab(2);
    auto m = tab.measure_z(0, false);
    EXPECT_TRUE(m.deterministic);
    EXPECT_FALSE(m.bit);
}

TEST(StabilizerTableau, plus_state_measurement_is_unbiased) {
    std::mt19937_64 rng(5);
    int ones = 0;
    const int trials = 10000;
    for (int k = 0; k < trials; k++) {
        StabilizerTableau tab(1);
        tab.apply(CliffordGate::single(GateKind::H, 0));
        auto m = tab.measure_z(0, rng() & 1);
        EXPECT_FALSE(m.deterministic);
        ones += m.bit;
    }
    EXPECT_NEAR(ones / static_cast<double>(trials), 0.5, 0.01);
}

TEST(StabilizerTableau, bell_pair_measurements_are_correlated) {
    std::mt19937_64 rng(6);
    for (int k = 0; k < 200; k++) {
        StabilizerTableau tab(2);
        tab.apply(CliffordGate::single(GateKind::H, 0));
        tab.apply(CliffordGate::single(GateKind::H, 1));
        tab.apply(CliffordGate::cz(0, 1));
        tab.apply(CliffordGate::single(GateKind::H, 1));
        auto m0 = tab.measure_z(0, rng() & 1);
        auto m1 = tab.measure_z(1, rng() & 1);
        EXPECT_FALSE(m0.deterministic);
        EXPECT_TRUE(m1.deterministic);
        EXPECT_EQ(m0.bit, m1.bit);
    }
}

TEST(StabilizerTableau, measuring_a_stabilizer_twice_gives_identical_outcomes) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; trial++) {
        uint32_t n = 3 + rng() % 3;
        StabilizerTableau tab(n);
        for (int k = 0; k < 40; k++) {
            tab.apply(random_gate(rng, n));
        }
        uint32_t q = rng() % n;
        auto first = tab.measure_z(q, rng() & 1);
        auto second = tab.measure_z(q, rng() & 1);
        EXPECT_TRUE(second.deterministic);
        EXPECT_EQ(first.bit, second.bit);
    }
}

TEST(RunExactShot, resets_and_measurements_give_all_zero_record) {
    Circuit c(3);
    for (uint32_t q = 0; q < 3; q++) {
        c.append_reset_z(q);
    }
    for (uint32_t q = 0; q < 3; q++) {
        c.append_measure_z(q, "m" + std::to_string(q));
    }
    auto record = run_exact_shot(c, 11);
    ASSERT_EQ(record.size(), 3u);
    for (bool bit : record) {
        EXPECT_FALSE(bit);
    }
}

TEST(RunExactShot, deterministic_given_seed) {
    Circuit c(4);
    for (uint32_t q = 0; q < 4; q++) {
        c.append_reset_z(q);
        c.append_gate(CliffordGate::single(GateKind::H, q));
    }
    c.append_gate(CliffordGate::cz(0, 1));
    c.append_gate(CliffordGate::cz(2, 3));
    for (uint32_t q = 0; q < 4; q++) {
        c.append_measure_z(q, "m" + std::to_string(q));
    }
    auto a = run_exact_shot(c, 123, 0);
    auto b = run_exact_shot(c, 123, 0);
    EXPECT_EQ(a, b);
    auto other_shot = run_exact_shot(c, 123, 1);
    auto other_seed = run_exact_shot(c, 124, 0);
    EXPECT_EQ(a.size(), other_shot.size());
    EXPECT_EQ(a.size(), other_seed.size());
}

TEST(RunExactShot, distribution_matches_dense_oracle) {
    // Random 4-qubit circuit measured in full; compare the outcome pattern
    // distribution against dense-simulator probabilities via chi-square.
    std::mt19937_64 rng(31337);
    uint32_t n = 4;
    std::vector<CliffordGate> gates;
    for (int k = 0; k < 25; k++) {
        gates.push_back(random_gate(rng, n));
    }
    Circuit c(n);
    for (uint32_t q = 0; q < n; q++) {
        c.append_reset_z(q);
    }
    for (const auto &g : gates) {
        c.append_gate(g);
    }
    for (uint32_t q = 0; q < n; q++) {
        c.append_measure_z(q, "m" + std::to_string(q));
    }

    const int shots = 10000;
    std::vector<uint64_t> counts(1 << n, 0);
    for (int s = 0; s < shots; s++) {
        auto record = run_exact_shot(c, 555, s);
        uint64_t pattern = 0;
        for (uint32_t q = 0; q < n; q++) {
            pattern |= uint64_t{record[q]} << q;
        }
        counts[pattern]++;
    }

    // Dense probabilities by direct marginalization.
    oracle::DenseSim dense(n);
    for (const auto &g : gates) {
        dense.apply(g);
    }
    std::vector<double> probs(1 << n, 0);
    for (size_t k = 0; k < probs.size(); k++) {
        probs[k] = std::norm(dense.amps[k]);
    }
    EXPECT_GT(oracle::chi_square_p_value(counts, probs), 0.01);
}
