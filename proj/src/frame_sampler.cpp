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

#include "splitsim/frame_sampler.hpp"

#include <stdexcept>
#include <thread>

#include "splitsim/rng.hpp"
#include "splitsim/tableau.hpp"

namespace splitsim {

namespace {

constexpr uint64_t kReferenceSeed = 0x7265665f73706c74ULL;

/// Propagates 64 Pauli frames at once, one shot per bit lane. Only the
/// anticommutation structure matters, so frame signs are not tracked.
struct FrameBatch {
    const Circuit &c;
    const ReferenceSample &ref;
    CounterRng rng;
    std::vector<uint64_t> fx, fz;     // per-qubit lane words
    std::vector<uint64_t> out_lanes;  // per-record lane words

    FrameBatch(const Circuit &circuit, const ReferenceSample &reference, uint64_t seed)
        : c(circuit), ref(reference), rng{seed}, fx(circuit.n_qubits, 0), fz(circuit.n_qubits, 0),
          out_lanes(circuit.num_measurements(), 0) {}

    void run(uint64_t shot_base, int lanes) {
        std::fill(fx.begin(), fx.end(), 0);
        std::fill(fz.begin(), fz.end(), 0);
        for (size_t idx = 0; idx < c.instructions.size(); idx++) {
            const Instruction &inst = c.instructions[idx];
            switch (inst.kind) {
                case InstructionKind::GATE:
                    apply_gate(inst.gate);
                    break;
                case InstructionKind::MEASURE_Z: {
                    uint32_t q = inst.qubit;
                    size_t rec = static_cast<size_t>(inst.record_index);
                    if (ref.nondeterministic[rec]) {
                        // Flip half the lanes onto the opposite-outcome
                        // branch by injecting the branch-switching Pauli.
                        uint64_t rand_word = 0;
                        for (int lane = 0; lane < lanes; lane++) {
                            rand_word |= uint64_t{rng.bernoulli(0.5, shot_base + lane, idx)} << lane;
                        }
                        uint64_t bx = ref.branch_x[rec], bz = ref.branch_z[rec];
                        uint64_t support = bx | bz;
                        while (support) {
                            uint32_t qb = static_cast<uint32_t>(__builtin_ctzll(support));
                            support &= support - 1;
                            if ((bx >> qb) & 1) {
                                fx[qb] ^= rand_word;
                            }
                            if ((bz >> qb) & 1) {
                                fz[qb] ^= rand_word;
                            }
                        }
                    }
                    uint64_t flip = fx[q];
                    out_lanes[rec] = ref.record[rec] ? ~flip : flip;
                    // A Z frame component on a just-measured qubit acts
                    // trivially from here on.
                    fz[q] = 0;
                    break;
                }
                case InstructionKind::RESET_Z:
                    fx[inst.qubit] = 0;
                    fz[inst.qubit] = 0;
                    break;
                case InstructionKind::NOISE: {
                    const NoiseChannel &ch = inst.noise;
                    for (int lane = 0; lane < lanes; lane++) {
                        uint32_t pauli = sample_noise_outcome(ch, rng, shot_base + lane, idx);
                        if (!pauli) {
                            continue;
                        }
                        uint64_t m = uint64_t{1} << lane;
                        if (pauli & 0b0001) {
                            fx[ch.q0] ^= m;
                        }
                        if (pauli & 0b0010) {
                            fz[ch.q0] ^= m;
                        }
                        if (pauli & 0b0100) {
                            fx[ch.q1] ^= m;
                        }
                        if (pauli & 0b1000) {
                            fz[ch.q1] ^= m;
                        }
                    }
                    break;
                }
                case InstructionKind::TICK:
                    break;
            }
        }
    }

    void apply_gate(const CliffordGate &g) {
        uint32_t q = g.q0;
        switch (g.kind) {
            case GateKind::H:
            case GateKind::SQRT_Y:
            case GateKind::SQRT_Y_DAG:
                std::swap(fx[q], fz[q]);
                break;
            case GateKind::S:
            case GateKind::S_DAG:
                fz[q] ^= fx[q];
                break;
            case GateKind::SQRT_X:
            case GateKind::SQRT_X_DAG:
                fx[q] ^= fz[q];
                break;
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
                break;  // sign-only action
            case GateKind::CZ:
                fz[g.q0] ^= fx[g.q1];
                fz[g.q1] ^= fx[g.q0];
                break;
        }
    }
};

}  // namespace

ReferenceSample reference_sample(const Circuit &noiseless) {
    if (noiseless.has_noise()) {
        throw std::invalid_argument("reference_sample requires a noiseless circuit");
    }
    CounterRng rng{kReferenceSeed};
    StabilizerTableau tab(noiseless.n_qubits);
    ReferenceSample out;
    out.record.reserve(noiseless.num_measurements());
    out.nondeterministic.reserve(noiseless.num_measurements());
    for (size_t idx = 0; idx < noiseless.instructions.size(); idx++) {
        const Instruction &inst = noiseless.instructions[idx];
        switch (inst.kind) {
            case InstructionKind::GATE:
                tab.apply(inst.gate);
                break;
            case InstructionKind::MEASURE_Z: {
                auto m = tab.measure_z(inst.qubit, rng.bernoulli(0.5, 0, idx));
                out.record.push_back(m.bit);
                out.nondeterministic.push_back(!m.deterministic);
                out.branch_x.push_back(m.branch_x);
                out.branch_z.push_back(m.branch_z);
                break;
            }
            case InstructionKind::RESET_Z:
                tab.reset_z(inst.qubit, rng.bernoulli(0.5, 0, idx));
                break;
            default:
                break;
        }
    }
    return out;
}

ShotBuffer sample_shots(const Circuit &noisy, size_t n_shots, uint64_t seed, int threads) {
    noisy.validate();
    ReferenceSample ref = reference_sample(noisy.without_noise());
    ShotBuffer shots(n_shots, noisy.num_measurements());
    if (n_shots == 0) {
        return shots;
    }
    size_t n_batches = (n_shots + 63) / 64;
    unsigned hw = std::thread::hardware_concurrency();
    size_t n_threads = threads > 0 ? static_cast<size_t>(threads) : (hw ? hw : 1);
    n_threads = std::min(n_threads, n_batches);

    auto worker = [&](size_t thread_idx) {
        FrameBatch batch(noisy, ref, seed);
        for (size_t b = thread_idx; b < n_batches; b += n_threads) {
            uint64_t shot_base = b * 64;
            int lanes = static_cast<int>(std::min<size_t>(64, n_shots - shot_base));
            batch.run(shot_base, lanes);
            for (size_t rec = 0; rec < batch.out_lanes.size(); rec++) {
                uint64_t w = batch.out_lanes[rec];
                for (int lane = 0; lane < lanes; lane++) {
                    if ((w >> lane) & 1) {
                        shots.set(shot_base + lane, rec, true);
                    }
                }
            }
        }
    };
    if (n_threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t t = 0; t < n_threads; t++) {
            pool.emplace_back(worker, t);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    return shots;
}

}  // namespace splitsim
