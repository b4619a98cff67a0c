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

#include <stdexcept>

namespace splitsim {

StabilizerTableau::StabilizerTableau(uint32_t n)
    : n_qubits(n), xs(2 * n, 0), zs(2 * n, 0), signs(2 * n, 0) {
    if (n == 0 || n > 64) {
        throw std::invalid_argument("tableau supports 1..64 qubits");
    }
    for (uint32_t i = 0; i < n; i++) {
        xs[i] = uint64_t{1} << i;          // destabilizer X_i
        zs[n + i] = uint64_t{1} << i;      // stabilizer Z_i
    }
}

void StabilizerTableau::apply(const CliffordGate &g) {
    uint32_t q = g.q0;
    uint64_t mq = uint64_t{1} << q;
    size_t rows = xs.size();
    switch (g.kind) {
        case GateKind::H:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= x & z;
                xs[k] = (xs[k] & ~mq) | (z ? mq : 0);
                zs[k] = (zs[k] & ~mq) | (x ? mq : 0);
            }
            break;
        case GateKind::S:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= x & z;
                zs[k] ^= x ? mq : 0;
            }
            break;
        case GateKind::S_DAG:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= x & !z;
                zs[k] ^= x ? mq : 0;
            }
            break;
        case GateKind::X:
            for (size_t k = 0; k < rows; k++) {
                signs[k] ^= (zs[k] & mq) != 0;
            }
            break;
        case GateKind::Y:
            for (size_t k = 0; k < rows; k++) {
                signs[k] ^= ((xs[k] ^ zs[k]) & mq) != 0;
            }
            break;
        case GateKind::Z:
            for (size_t k = 0; k < rows; k++) {
                signs[k] ^= (xs[k] & mq) != 0;
            }
            break;
        case GateKind::SQRT_X:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= z & !x;
                xs[k] ^= z ? mq : 0;
            }
            break;
        case GateKind::SQRT_X_DAG:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= x & z;
                xs[k] ^= z ? mq : 0;
            }
            break;
        case GateKind::SQRT_Y:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= x & !z;
                xs[k] = (xs[k] & ~mq) | (z ? mq : 0);
                zs[k] = (zs[k] & ~mq) | (x ? mq : 0);
            }
            break;
        case GateKind::SQRT_Y_DAG:
            for (size_t k = 0; k < rows; k++) {
                bool x = xs[k] & mq, z = zs[k] & mq;
                signs[k] ^= z & !x;
                xs[k] = (xs[k] & ~mq) | (z ? mq : 0);
                zs[k] = (zs[k] & ~mq) | (x ? mq : 0);
            }
            break;
        case GateKind::CZ: {
            uint64_t ma = uint64_t{1} << g.q0;
            uint64_t mb = uint64_t{1} << g.q1;
            for (size_t k = 0; k < rows; k++) {
                bool xa = xs[k] & ma, za = zs[k] & ma;
                bool xb = xs[k] & mb, zb = zs[k] & mb;
                signs[k] ^= xa & xb & (za ^ zb);
                zs[k] ^= xb ? ma : 0;
                zs[k] ^= xa ? mb : 0;
            }
            break;
        }
    }
}

void StabilizerTableau::mul_row(uint32_t dst, uint32_t src) {
    uint32_t phase = 2u * (signs[dst] + signs[src]);
    uint64_t overlap = (xs[src] | zs[src]) & (xs[dst] | zs[dst]);
    while (overlap) {
        uint32_t q = static_cast<uint32_t>(__builtin_ctzll(overlap));
        overlap &= overlap - 1;
        phase += detail::pauli_product_phase(
            (xs[src] >> q) & 1, (zs[src] >> q) & 1, (xs[dst] >> q) & 1, (zs[dst] >> q) & 1);
    }
    xs[dst] ^= xs[src];
    zs[dst] ^= zs[src];
    // Destabilizer-row signs are gauge; an odd phase can only occur when dst
    // is the anticommuting destabilizer partner, whose sign never matters.
    signs[dst] = ((phase + 1) & 3) >= 2;
}

StabilizerTableau::MeasureResult StabilizerTableau::measure_z(uint32_t q, bool random_bit) {
    uint64_t mq = uint64_t{1} << q;
    uint32_t n = n_qubits;
    uint32_t p = UINT32_MAX;
    for (uint32_t k = n; k < 2 * n; k++) {
        if (xs[k] & mq) {
            p = k;
            break;
        }
    }
    if (p != UINT32_MAX) {
        // Nondeterministic: the state is projected.
        for (uint32_t k = 0; k < 2 * n; k++) {
            if (k != p && (xs[k] & mq)) {
                mul_row(k, p);
            }
        }
        xs[p - n] = xs[p];
        zs[p - n] = zs[p];
        signs[p - n] = signs[p];
        uint64_t branch_x = xs[p];
        uint64_t branch_z = zs[p];
        xs[p] = 0;
        zs[p] = mq;
        signs[p] = random_bit;
        return {random_bit, false, branch_x, branch_z};
    }
    // Deterministic: accumulate the product of stabilizers whose
    // destabilizer partners anticommute with Z_q.
    uint64_t sx = 0, sz = 0;
    uint32_t phase = 0;
    for (uint32_t i = 0; i < n; i++) {
        if (xs[i] & mq) {
            uint32_t src = n + i;
            phase += 2u * signs[src];
            uint64_t overlap = (xs[src] | zs[src]) & (sx | sz);
            while (overlap) {
                uint32_t qq = static_cast<uint32_t>(__builtin_ctzll(overlap));
                overlap &= overlap - 1;
                phase += detail::pauli_product_phase(
                    (xs[src] >> qq) & 1, (zs[src] >> qq) & 1, (sx >> qq) & 1, (sz >> qq) & 1);
            }
            sx ^= xs[src];
            sz ^= zs[src];
        }
    }
    if (sx != 0 || sz != mq || (phase & 1)) {
        throw std::logic_error("deterministic measurement did not resolve to Z_q");
    }
    bool bit = (phase & 3) == 2;
    return {bit, true, 0, 0};
}

void StabilizerTableau::reset_z(uint32_t q, bool random_bit) {
    MeasureResult m = measure_z(q, random_bit);
    if (m.bit) {
        apply(CliffordGate::single(GateKind::X, q));
    }
}

int StabilizerTableau::pauli_expectation(const PauliString &p) const {
    if (p.n_qubits != n_qubits) {
        throw std::invalid_argument("pauli_expectation: size mismatch");
    }
    uint64_t px = p.x_words.empty() ? 0 : p.x_words[0];
    uint64_t pz = p.z_words.empty() ? 0 : p.z_words[0];
    uint32_t n = n_qubits;
    // Commutation with every stabilizer row is required for a +-1 outcome.
    for (uint32_t k = n; k < 2 * n; k++) {
        uint64_t anti = (px & zs[k]) ^ (pz & xs[k]);
        if (__builtin_popcountll(anti) & 1) {
            return 0;
        }
    }
    // P = +- product of stabilizers whose destabilizers anticommute with P.
    uint64_t sx = 0, sz = 0;
    uint32_t phase = 0;
    for (uint32_t i = 0; i < n; i++) {
        uint64_t anti = (px & zs[i]) ^ (pz & xs[i]);
        if (__builtin_popcountll(anti) & 1) {
            uint32_t src = n + i;
            phase += 2u * signs[src];
            uint64_t overlap = (xs[src] | zs[src]) & (sx | sz);
            while (overlap) {
                uint32_t qq = static_cast<uint32_t>(__builtin_ctzll(overlap));
                overlap &= overlap - 1;
                phase += detail::pauli_product_phase(
                    (xs[src] >> qq) & 1, (zs[src] >> qq) & 1, (sx >> qq) & 1, (sz >> qq) & 1);
            }
            sx ^= xs[src];
            sz ^= zs[src];
        }
    }
    if (sx != px || sz != pz) {
        throw std::logic_error("pauli_expectation: commuting Pauli not in stabilizer span");
    }
    // Compare the product's sign against the queried Pauli's sign, converting
    // the Hermitian encoding (one factor of i per Y) consistently: both sides
    // use the same encoding, so only the tracked phases differ.
    if (phase & 1) {
        throw std::logic_error("pauli_expectation: imaginary phase");
    }
    int product_sign = ((phase & 3) == 2) ? -1 : +1;
    return product_sign * p.sign();
}

PauliString StabilizerTableau::stabilizer_row(uint32_t k) const {
    PauliString out(n_qubits);
    out.x_words[0] = xs[n_qubits + k];
    out.z_words[0] = zs[n_qubits + k];
    out.phase_exponent = signs[n_qubits + k] ? 2 : 0;
    return out;
}

bool StabilizerTableau::satisfies_invariants() const {
    uint32_t n = n_qubits;
    auto anticommutes = [&](uint32_t a, uint32_t b) {
        uint64_t anti = (xs[a] & zs[b]) ^ (zs[a] & xs[b]);
        return (__builtin_popcountll(anti) & 1) != 0;
    };
    for (uint32_t i = 0; i < 2 * n; i++) {
        for (uint32_t j = i + 1; j < 2 * n; j++) {
            bool expect_anti = (j == i + n);
            if (anticommutes(i, j) != expect_anti) {
                return false;
            }
        }
    }
    return true;
}

uint32_t sample_noise_outcome(const NoiseChannel &ch, const CounterRng &rng, uint64_t shot, uint64_t slot) {
    switch (ch.kind) {
        case NoiseKind::FLIP_X: {
            return rng.bernoulli(ch.p, shot, slot) ? 0b0001u : 0u;
        }
        case NoiseKind::DEPOLARIZE1: {
            double u = rng.uniform(shot, slot);
            if (u >= ch.p) {
                return 0;
            }
            int k = static_cast<int>(u / ch.p * 3.0);
            if (k > 2) {
                k = 2;
            }
            // 0 -> X, 1 -> Y, 2 -> Z
            return k == 0 ? 0b0001u : k == 1 ? 0b0011u : 0b0010u;
        }
        case NoiseKind::DEPOLARIZE2: {
            double u = rng.uniform(shot, slot);
            if (u >= ch.p) {
                return 0;
            }
            int k = static_cast<int>(u / ch.p * 15.0);
            if (k > 14) {
                k = 14;
            }
            int idx = k + 1;  // skip II
            int a = idx / 4, b = idx % 4;  // 0=I, 1=X, 2=Y, 3=Z
            auto to_xz = [](int c) -> uint32_t {
                switch (c) {
                    case 1:
                        return 0b01;
                    case 2:
                        return 0b11;
                    case 3:
                        return 0b10;
                    default:
                        return 0b00;
                }
            };
            return to_xz(a) | (to_xz(b) << 2);
        }
        case NoiseKind::IDLE_PAULI: {
            uint32_t pauli = 0;
            if (rng.bernoulli(ch.px, shot, slot, 0)) {
                pauli ^= 0b0001;
            }
            if (rng.bernoulli(ch.py, shot, slot, 1)) {
                pauli ^= 0b0011;
            }
            if (rng.bernoulli(ch.pz, shot, slot, 2)) {
                pauli ^= 0b0010;
            }
            return pauli;
        }
    }
    return 0;
}

std::vector<bool> run_exact_shot(const Circuit &c, uint64_t seed, uint64_t shot_index) {
    if (c.n_qubits == 0 || c.n_qubits > 64) {
        throw std::invalid_argument("run_exact_shot supports 1..64 qubits");
    }
    CounterRng rng{seed};
    StabilizerTableau tab(c.n_qubits);
    std::vector<bool> record;
    record.reserve(c.num_measurements());
    for (size_t idx = 0; idx < c.instructions.size(); idx++) {
        const Instruction &inst = c.instructions[idx];
        switch (inst.kind) {
            case InstructionKind::GATE:
                tab.apply(inst.gate);
                break;
            case InstructionKind::MEASURE_Z: {
                bool random_bit = rng.bernoulli(0.5, shot_index, idx);
                record.push_back(tab.measure_z(inst.qubit, random_bit).bit);
                break;
            }
            case InstructionKind::RESET_Z: {
                bool random_bit = rng.bernoulli(0.5, shot_index, idx);
                tab.reset_z(inst.qubit, random_bit);
                break;
            }
            case InstructionKind::NOISE: {
                uint32_t pauli = sample_noise_outcome(inst.noise, rng, shot_index, idx);
                if (pauli & 0b0001) {
                    tab.apply(CliffordGate::single((pauli & 0b0010) ? GateKind::Y : GateKind::X, inst.noise.q0));
                } else if (pauli & 0b0010) {
                    tab.apply(CliffordGate::single(GateKind::Z, inst.noise.q0));
                }
                uint32_t p1 = pauli >> 2;
                if (p1 & 0b01) {
                    tab.apply(CliffordGate::single((p1 & 0b10) ? GateKind::Y : GateKind::X, inst.noise.q1));
                } else if (p1 & 0b10) {
                    tab.apply(CliffordGate::single(GateKind::Z, inst.noise.q1));
                }
                break;
            }
            case InstructionKind::TICK:
                break;
        }
    }
    return record;
}

}  // namespace splitsim
