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

#ifndef SPLITSIM_TABLEAU_HPP
#define SPLITSIM_TABLEAU_HPP

#include <cstdint>
#include <vector>

#include "splitsim/circuit.hpp"
#include "splitsim/pauli.hpp"
#include "splitsim/rng.hpp"

namespace splitsim {

/// Aaronson-Gottesman stabilizer tableau over at most 64 qubits, holding the
/// state initially at |0...0>. Rows 0..n-1 are destabilizers, rows n..2n-1
/// stabilizers; row k is sign * (Paulis at x/z bit masks).
struct StabilizerTableau {
    uint32_t n_qubits;
    std::vector<uint64_t> xs;  // 2n rows
    std::vector<uint64_t> zs;
    std::vector<uint8_t> signs;  // 0 => +1, 1 => -1

    explicit StabilizerTableau(uint32_t n);

    void apply(const CliffordGate &g);

    struct MeasureResult {
        bool bit;  // 1 <=> outcome -1
        bool deterministic;
        // For nondeterministic outcomes: the stabilizer row that
        // anticommuted with Z_q (the new destabilizer). Applying it maps the
        // post-measurement state onto the opposite-outcome branch.
        uint64_t branch_x = 0;
        uint64_t branch_z = 0;
    };

    /// Measures Z on qubit q. Random outcomes consume `random_bit`.
    MeasureResult measure_z(uint32_t q, bool random_bit);

    /// Measures Z and flips the qubit to |0> if the outcome was |1>.
    void reset_z(uint32_t q, bool random_bit);

    /// Expectation of a Hermitian Pauli in the current state: +1, -1 or 0.
    int pauli_expectation(const PauliString &p) const;

    PauliString stabilizer_row(uint32_t k) const;

    /// Checks the symplectic row structure (destabilizer i anticommutes with
    /// stabilizer i, commutes with every other row).
    bool satisfies_invariants() const;

  private:
    // Multiplies row dst by row src (dst <- src * dst), tracking the sign.
    void mul_row(uint32_t dst, uint32_t src);
};

/// Runs one shot of `c`, sampling noise channels and nondeterministic
/// measurement outcomes from counter-based streams keyed by
/// (seed, shot_index, instruction index). Returns one bit per measure_z, in
/// program order, with bit 1 <=> outcome -1.
std::vector<bool> run_exact_shot(const Circuit &c, uint64_t seed, uint64_t shot_index = 0);

/// Applies a sampled noise channel outcome as explicit Pauli flips.
/// Returns the sampled Pauli as (x0,z0,x1,z1) packed bits; 0 means identity.
uint32_t sample_noise_outcome(const NoiseChannel &ch, const CounterRng &rng, uint64_t shot, uint64_t slot);

}  // namespace splitsim

#endif
