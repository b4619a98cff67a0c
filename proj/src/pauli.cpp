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

#include <array>
#include <stdexcept>

namespace splitsim {

bool gate_is_two_qubit(GateKind kind) {
    return kind == GateKind::CZ;
}

const char *gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H:
            return "H";
        case GateKind::S:
            return "S";
        case GateKind::S_DAG:
            return "S_DAG";
        case GateKind::X:
            return "X";
        case GateKind::Y:
            return "Y";
        case GateKind::Z:
            return "Z";
        case GateKind::SQRT_X:
            return "SQRT_X";
        case GateKind::SQRT_X_DAG:
            return "SQRT_X_DAG";
        case GateKind::SQRT_Y:
            return "SQRT_Y";
        case GateKind::SQRT_Y_DAG:
            return "SQRT_Y_DAG";
        case GateKind::CZ:
            return "CZ";
    }
    return "?";
}

CliffordGate CliffordGate::single(GateKind kind, uint32_t q) {
    if (gate_is_two_qubit(kind)) {
        throw std::invalid_argument("single() called with a two-qubit gate kind");
    }
    return CliffordGate{kind, q, UINT32_MAX};
}

CliffordGate CliffordGate::cz(uint32_t a, uint32_t b) {
    if (a == b) {
        throw std::invalid_argument("CZ targets must be distinct");
    }
    return CliffordGate{GateKind::CZ, a, b};
}

PauliString::PauliString(size_t n)
    : n_qubits(n), x_words((n + 63) / 64, 0), z_words((n + 63) / 64, 0) {}

void PauliString::set_x_bit(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (v) {
        x_words[q >> 6] |= mask;
    } else {
        x_words[q >> 6] &= ~mask;
    }
}

void PauliString::set_z_bit(size_t q, bool v) {
    uint64_t mask = uint64_t{1} << (q & 63);
    if (v) {
        z_words[q >> 6] |= mask;
    } else {
        z_words[q >> 6] &= ~mask;
    }
}

bool PauliString::is_identity() const {
    for (size_t w = 0; w < x_words.size(); w++) {
        if (x_words[w] || z_words[w]) {
            return false;
        }
    }
    return true;
}

size_t PauliString::weight() const {
    size_t total = 0;
    for (size_t w = 0; w < x_words.size(); w++) {
        total += static_cast<size_t>(__builtin_popcountll(x_words[w] | z_words[w]));
    }
    return total;
}

int PauliString::sign() const {
    if (phase_exponent == 0) {
        return +1;
    }
    if (phase_exponent == 2) {
        return -1;
    }
    throw std::logic_error("sign() on a Pauli with an imaginary phase");
}

bool PauliString::commutes_with(const PauliString &other) const {
    if (n_qubits != other.n_qubits) {
        throw std::invalid_argument("commutes_with: size mismatch");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < x_words.size(); w++) {
        acc ^= (x_words[w] & other.z_words[w]) ^ (z_words[w] & other.x_words[w]);
    }
    return (__builtin_popcountll(acc) & 1) == 0;
}

PauliString PauliString::from_str(const std::string &text) {
    size_t k = 0;
    uint8_t phase = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        phase = text[k] == '-' ? 2 : 0;
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase = (phase + 1) & 3;
        k++;
    }
    PauliString result(text.size() - k);
    result.phase_exponent = phase;
    for (size_t q = 0; k < text.size(); k++, q++) {
        switch (text[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                result.set_x_bit(q, true);
                break;
            case 'Z':
                result.set_z_bit(q, true);
                break;
            case 'Y':
                result.set_x_bit(q, true);
                result.set_z_bit(q, true);
                break;
            default:
                throw std::invalid_argument("bad pauli character in " + text);
        }
    }
    return result;
}

std::string PauliString::str() const {
    std::string out;
    switch (phase_exponent) {
        case 0:
            out = "+";
            break;
        case 1:
            out = "i";
            break;
        case 2:
            out = "-";
            break;
        case 3:
            out = "-i";
            break;
    }
    for (size_t q = 0; q < n_qubits; q++) {
        bool x = x_bit(q), z = z_bit(q);
        out += x ? (z ? 'Y' : 'X') : (z ? 'Z' : '_');
    }
    return out;
}

namespace detail {

uint8_t pauli_product_phase(bool x1, bool z1, bool x2, bool z2) {
    // Indexed by (x | z<<1): 0=I, 1=X, 2=Z, 3=Y. Entry = power of i in
    // P1*P2 = i^g * P3, using Hermitian Y.
    static constexpr uint8_t table[4][4] = {
        {0, 0, 0, 0},
        {0, 0, 3, 1},  // X*Z=-iY, X*Y=iZ
        {0, 1, 0, 3},  // Z*X=iY,  Z*Y=-iX
        {0, 3, 1, 0},  // Y*X=-iZ, Y*Z=iX
    };
    return table[x1 | (z1 << 1)][x2 | (z2 << 1)];
}

}  // namespace detail

PauliString pauli_multiply(const PauliString &a, const PauliString &b) {
    if (a.n_qubits != b.n_qubits) {
        throw std::invalid_argument("pauli_multiply: size mismatch");
    }
    PauliString out(a.n_qubits);
    uint32_t phase = a.phase_exponent + b.phase_exponent;
    for (size_t q = 0; q < a.n_qubits; q++) {
        bool x1 = a.x_bit(q), z1 = a.z_bit(q);
        bool x2 = b.x_bit(q), z2 = b.z_bit(q);
        phase += detail::pauli_product_phase(x1, z1, x2, z2);
        out.set_x_bit(q, x1 ^ x2);
        out.set_z_bit(q, z1 ^ z2);
    }
    out.phase_exponent = static_cast<uint8_t>(phase & 3);
    return out;
}

PauliString PauliString::operator*(const PauliString &rhs) const {
    return pauli_multiply(*this, rhs);
}

bool PauliString::operator==(const PauliString &rhs) const {
    return n_qubits == rhs.n_qubits && phase_exponent == rhs.phase_exponent &&
           x_words == rhs.x_words && z_words == rhs.z_words;
}

namespace {

// Local Pauli code: x | z<<1 (0=I, 1=X, 2=Z, 3=Y). Images carry a phase
// exponent that is always 0 or 2 for Clifford conjugation of Hermitian
// Paulis.
struct LocalImage {
    uint8_t pauli;
    uint8_t phase;
};

struct SingleGateTable {
    LocalImage images[4];
};

LocalImage compose_y_image(LocalImage xi, LocalImage zi) {
    // Y = i X Z, so image(Y) = i * image(X) * image(Z).
    bool x1 = xi.pauli & 1, z1 = (xi.pauli >> 1) & 1;
    bool x2 = zi.pauli & 1, z2 = (zi.pauli >> 1) & 1;
    uint8_t g = detail::pauli_product_phase(x1, z1, x2, z2);
    uint8_t pauli = xi.pauli ^ zi.pauli;
    uint8_t phase = static_cast<uint8_t>((1 + xi.phase + zi.phase + g) & 3);
    return LocalImage{pauli, phase};
}

SingleGateTable make_table(LocalImage x_image, LocalImage z_image) {
    SingleGateTable t;
    t.images[0] = LocalImage{0, 0};
    t.images[1] = x_image;
    t.images[2] = z_image;
    t.images[3] = compose_y_image(x_image, z_image);
    return t;
}

constexpr uint8_t kI = 0, kX = 1, kZ = 2, kY = 3;

const SingleGateTable &single_gate_table(GateKind kind) {
    static const std::array<SingleGateTable, 10> tables = {
        make_table({kZ, 0}, {kX, 0}),  // H: X->Z, Z->X
        make_table({kY, 0}, {kZ, 0}),  // S: X->Y, Z->Z
        make_table({kY, 2}, {kZ, 0}),  // S_DAG: X->-Y
        make_table({kX, 0}, {kZ, 2}),  // X: Z->-Z
        make_table({kX, 2}, {kZ, 2}),  // Y
        make_table({kX, 2}, {kZ, 0}),  // Z: X->-X
        make_table({kX, 0}, {kY, 2}),  // SQRT_X: Z->-Y
        make_table({kX, 0}, {kY, 0}),  // SQRT_X_DAG: Z->Y
        make_table({kZ, 2}, {kX, 0}),  // SQRT_Y: X->-Z, Z->X
        make_table({kZ, 0}, {kX, 2}),  // SQRT_Y_DAG: X->Z, Z->-X
    };
    return tables[static_cast<size_t>(kind)];
}

struct CzImage {
    uint8_t pa, pb, phase;
};

// CZ conjugation table over local pairs, built from the generator images
// X1->X1Z2, Z1->Z1, X2->Z1X2, Z2->Z2.
const std::array<std::array<CzImage, 4>, 4> &cz_table() {
    static const auto table = [] {
        std::array<std::array<CzImage, 4>, 4> t{};
        for (uint8_t a = 0; a < 4; a++) {
            for (uint8_t b = 0; b < 4; b++) {
                PauliString p(2);
                p.set_x_bit(0, a & 1);
                p.set_z_bit(0, (a >> 1) & 1);
                p.set_x_bit(1, b & 1);
                p.set_z_bit(1, (b >> 1) & 1);
                // Build the image by decomposing into generators and
                // multiplying their images.
                PauliString acc(2);
                uint8_t y_count = 0;
                auto mul_in = [&](const std::string &s) { acc = pauli_multiply(acc, PauliString::from_str(s)); };
                if ((a & 1) && ((a >> 1) & 1)) {
                    y_count++;  // Y1 = i X1 Z1
                }
                if ((b & 1) && ((b >> 1) & 1)) {
                    y_count++;
                }
                if (a & 1) {
                    mul_in("+XZ");  // image of X1
                }
                if ((a >> 1) & 1) {
                    mul_in("+Z_");
                }
                if (b & 1) {
                    mul_in("+ZX");  // image of X2
                }
                if ((b >> 1) & 1) {
                    mul_in("+_Z");
                }
                // pauli_multiply keeps results in the Hermitian encoding, so
                // the only extra factors of i come from decomposing input Ys.
                uint8_t phase = static_cast<uint8_t>((acc.phase_exponent + y_count) & 3);
                uint8_t pa = static_cast<uint8_t>(acc.x_bit(0) | (acc.z_bit(0) << 1));
                uint8_t pb = static_cast<uint8_t>(acc.x_bit(1) | (acc.z_bit(1) << 1));
                t[a][b] = CzImage{pa, pb, phase};
            }
        }
        return t;
    }();
    return table;
}

}  // namespace

PauliString conjugate_by_gate(const PauliString &p, const CliffordGate &g) {
    if (g.q0 >= p.n_qubits || (gate_is_two_qubit(g.kind) && g.q1 >= p.n_qubits)) {
        throw std::invalid_argument("conjugate_by_gate: target out of range");
    }
    PauliString out = p;
    if (g.kind == GateKind::CZ) {
        uint8_t a = static_cast<uint8_t>(p.x_bit(g.q0) | (p.z_bit(g.q0) << 1));
        uint8_t b = static_cast<uint8_t>(p.x_bit(g.q1) | (p.z_bit(g.q1) << 1));
        CzImage img = cz_table()[a][b];
        out.set_x_bit(g.q0, img.pa & 1);
        out.set_z_bit(g.q0, (img.pa >> 1) & 1);
        out.set_x_bit(g.q1, img.pb & 1);
        out.set_z_bit(g.q1, (img.pb >> 1) & 1);
        out.phase_exponent = static_cast<uint8_t>((out.phase_exponent + img.phase) & 3);
        return out;
    }
    uint8_t local = static_cast<uint8_t>(p.x_bit(g.q0) | (p.z_bit(g.q0) << 1));
    LocalImage img = single_gate_table(g.kind).images[local];
    out.set_x_bit(g.q0, img.pauli & 1);
    out.set_z_bit(g.q0, (img.pauli >> 1) & 1);
    out.phase_exponent = static_cast<uint8_t>((out.phase_exponent + img.phase) & 3);
    return out;
}

}  // namespace splitsim
