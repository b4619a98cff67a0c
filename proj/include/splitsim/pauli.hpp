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

#ifndef SPLITSIM_PAULI_HPP
#define SPLITSIM_PAULI_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace splitsim {

/// Single-qubit and two-qubit Clifford gate kinds. The set is closed under
/// everything the protocols need: stabilizer extraction, echo pulses,
/// cardinal-state preparation, and X/Y/Z-basis readout rotations.
enum class GateKind : uint8_t {
    H,
    S,
    S_DAG,
    X,
    Y,
    Z,
    SQRT_X,
    SQRT_X_DAG,
    SQRT_Y,
    SQRT_Y_DAG,
    CZ,
};

bool gate_is_two_qubit(GateKind kind);
const char *gate_name(GateKind kind);

struct CliffordGate {
    GateKind kind;
    uint32_t q0;
    uint32_t q1 = UINT32_MAX;  // only for CZ

    static CliffordGate single(GateKind kind, uint32_t q);
    static CliffordGate cz(uint32_t a, uint32_t b);
    size_t num_targets() const { return gate_is_two_qubit(kind) ? 2 : 1; }
};

/// An n-qubit Pauli operator in the signed symplectic representation.
///
/// A qubit with (x, z) = (1, 0) carries X, (0, 1) carries Z and (1, 1)
/// carries the Hermitian Y. The operator is
///     i^phase_exponent * (tensor product of the per-qubit Paulis).
/// Hermitian operators have an even phase exponent; odd exponents only appear
/// transiently inside products of anticommuting operators.
struct PauliString {
    size_t n_qubits = 0;
    std::vector<uint64_t> x_words;
    std::vector<uint64_t> z_words;
    uint8_t phase_exponent = 0;  // power of i, mod 4

    PauliString() = default;
    explicit PauliString(size_t n);

    /// Parses strings like "+XIZ", "-YY", "iXZ", "_X_Z" ('_' and 'I' both
    /// mean identity).
    static PauliString from_str(const std::string &text);

    bool x_bit(size_t q) const { return (x_words[q >> 6] >> (q & 63)) & 1; }
    bool z_bit(size_t q) const { return (z_words[q >> 6] >> (q & 63)) & 1; }
    void set_x_bit(size_t q, bool v);
    void set_z_bit(size_t q, bool v);

    bool is_identity() const;
    size_t weight() const;

    /// Sign of a Hermitian Pauli: +1 or -1. Throws if the phase is imaginary.
    int sign() const;

    bool commutes_with(const PauliString &other) const;

    PauliString operator*(const PauliString &rhs) const;
    bool operator==(const PauliString &rhs) const;
    bool operator!=(const PauliString &rhs) const { return !(*this == rhs); }

    std::string str() const;
};

/// Multiplies two equal-length Pauli strings, tracking the i^k phase exactly.
/// Throws std::invalid_argument on size mismatch.
PauliString pauli_multiply(const PauliString &a, const PauliString &b);

/// Conjugates p by g, returning g * p * g^dagger (with sign).
PauliString conjugate_by_gate(const PauliString &p, const CliffordGate &g);

namespace detail {
/// Phase lookup for h[a][b]: X^x1 Z^z1-style Hermitian singles, the power of
/// i in P_a * P_b = i^g P_(a^b), with a, b in {0=I, 1=X, 2=Z, 3=Y} encoded as
/// (x | z<<1).
uint8_t pauli_product_phase(bool x1, bool z1, bool x2, bool z2);
}  // namespace detail

}  // namespace splitsim

#endif
