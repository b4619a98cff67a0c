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

#include "splitsim/dem.hpp"

#include "splitsim/rng.hpp"
#include "splitsim/tableau.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace splitsim {

namespace {

struct LocalPauli {
    bool x = false, z = false;
    bool anticommutes(const LocalPauli &other) const {
        return (x && other.z) != (z && other.x);
    }
    bool identity() const { return !x && !z; }
};

LocalPauli conj_local(const LocalPauli &p, GateKind kind) {
    if (p.identity()) {
        return p;
    }
    PauliString s(1);
    s.set_x_bit(0, p.x);
    s.set_z_bit(0, p.z);
    auto image = conjugate_by_gate(s, CliffordGate::single(kind, 0));
    return LocalPauli{image.x_bit(0), image.z_bit(0)};
}

/// Walks one inserted Pauli forward through the circuit tail, collecting the
/// measurement records it flips and its anticommutation with the elementary
/// observables' data operators at the final readout.
struct Propagator {
    const Circuit &c;
    const CompiledDetectors &compiled;
    // record -> detector indices containing it
    std::vector<std::vector<uint32_t>> record_to_detectors;
    // record -> elementary observable indices whose frame set contains it
    std::vector<std::vector<uint32_t>> record_to_frame_obs;
    // final data record -> (qubit, per-observable rotated factor)
    struct FinalInfo {
        bool is_final = false;
        uint32_t qubit = 0;
        // The observable's single-qubit factor conjugated by the applied
        // readout rotation, so anticommutation can be tested at measure time.
        std::vector<LocalPauli> rotated_factor;  // per elementary observable
    };
    std::vector<FinalInfo> final_info;

    Propagator(const ScheduledCircuit &sc, const Circuit &noisy, const CompiledDetectors &comp)
        : c(noisy), compiled(comp) {
        size_t n_rec = c.num_measurements();
        record_to_detectors.resize(n_rec);
        record_to_frame_obs.resize(n_rec);
        final_info.resize(n_rec);
        for (uint32_t d = 0; d < compiled.detectors.size(); d++) {
            for (uint32_t r : compiled.detectors[d].records) {
                record_to_detectors[r].push_back(d);
            }
        }
        for (uint32_t o = 0; o < compiled.elementary.size(); o++) {
            for (uint32_t r : compiled.elementary[o].frame_records) {
                record_to_frame_obs[r].push_back(o);
            }
        }
        for (const auto &[q, rec] : sc.final_records) {
            FinalInfo info;
            info.is_final = true;
            info.qubit = q;
            ReadoutBasis basis = sc.final_basis.at(q);
            for (const auto &obs : compiled.elementary) {
                LocalPauli factor{obs.final_operator.x_bit(q), obs.final_operator.z_bit(q)};
                if (!factor.identity() && basis != ReadoutBasis::Z) {
                    GateKind rot = basis == ReadoutBasis::X ? GateKind::SQRT_Y_DAG : GateKind::SQRT_X;
                    factor = conj_local(factor, rot);
                }
                info.rotated_factor.push_back(factor);
            }
            final_info[rec] = std::move(info);
        }
    }

    struct Flips {
        std::set<uint32_t> detectors;
        std::set<uint32_t> observables;
    };

    Flips propagate(size_t start_instruction, uint32_t pauli_code, uint32_t q0, uint32_t q1) {
        uint64_t px = 0, pz = 0;
        if (pauli_code & 0b0001) {
            px |= uint64_t{1} << q0;
        }
        if (pauli_code & 0b0010) {
            pz |= uint64_t{1} << q0;
        }
        if (pauli_code & 0b0100) {
            px |= uint64_t{1} << q1;
        }
        if (pauli_code & 0b1000) {
            pz |= uint64_t{1} << q1;
        }
        Flips flips;
        auto toggle = [](std::set<uint32_t> &s, uint32_t v) {
            auto it = s.find(v);
            if (it == s.end()) {
                s.insert(v);
            } else {
                s.erase(it);
            }
        };
        for (size_t idx = start_instruction; idx < c.instructions.size(); idx++) {
            const Instruction &inst = c.instructions[idx];
            switch (inst.kind) {
                case InstructionKind::GATE: {
                    const CliffordGate &g = inst.gate;
                    uint64_t m0 = uint64_t{1} << g.q0;
                    switch (g.kind) {
                        case GateKind::H:
                        case GateKind::SQRT_Y:
                        case GateKind::SQRT_Y_DAG: {
                            bool x = px & m0, z = pz & m0;
                            px = (px & ~m0) | (z ? m0 : 0);
                            pz = (pz & ~m0) | (x ? m0 : 0);
                            break;
                        }
                        case GateKind::S:
                        case GateKind::S_DAG:
                            pz ^= (px & m0);
                            break;
                        case GateKind::SQRT_X:
                        case GateKind::SQRT_X_DAG:
                            px ^= (pz & m0);
                            break;
                        case GateKind::X:
                        case GateKind::Y:
                        case GateKind::Z:
                            break;
                        case GateKind::CZ: {
                            uint64_t m1 = uint64_t{1} << g.q1;
                            if (px & m0) {
                                pz ^= m1;
                            }
                            if (px & m1) {
                                pz ^= m0;
                            }
                            break;
                        }
                    }
                    break;
                }
                case InstructionKind::MEASURE_Z: {
                    uint64_t mq = uint64_t{1} << inst.qubit;
                    uint32_t rec = static_cast<uint32_t>(inst.record_index);
                    const FinalInfo &info = final_info[rec];
                    if (px & mq) {
                        for (uint32_t d : record_to_detectors[rec]) {
                            toggle(flips.detectors, d);
                        }
                        for (uint32_t o : record_to_frame_obs[rec]) {
                            toggle(flips.observables, o);
                        }
                    }
                    if (info.is_final) {
                        LocalPauli local{(px & mq) != 0, (pz & mq) != 0};
                        for (uint32_t o = 0; o < info.rotated_factor.size(); o++) {
                            if (local.anticommutes(info.rotated_factor[o])) {
                                toggle(flips.observables, o);
                            }
                        }
                    }
                    // The Z component on a measured qubit becomes trivial.
                    pz &= ~mq;
                    break;
                }
                case InstructionKind::RESET_Z: {
                    uint64_t mq = uint64_t{1} << inst.qubit;
                    px &= ~mq;
                    pz &= ~mq;
                    break;
                }
                default:
                    break;
            }
        }
        return flips;
    }
};

uint32_t reduce_by_basis(uint32_t mask, const std::vector<uint32_t> &basis) {
    for (uint32_t b : basis) {
        uint32_t lead = 31 - __builtin_clz(b);
        if ((mask >> lead) & 1) {
            mask ^= b;
        }
    }
    return mask;
}

void insert_into_basis(uint32_t mask, std::vector<uint32_t> &basis) {
    mask = reduce_by_basis(mask, basis);
    if (!mask) {
        return;
    }
    basis.push_back(mask);
    // Keep echelon order (descending leading bit) so reduction is canonical.
    std::sort(basis.begin(), basis.end(), std::greater<uint32_t>());
}

std::string describe_mechanism(const ErrorMechanism &mech, const CompiledDetectors &compiled) {
    std::ostringstream ss;
    ss << "p=" << mech.probability << " dets={";
    for (uint32_t d : mech.detectors) {
        ss << compiled.detectors[d].id << " ";
    }
    ss << "} obs={";
    for (uint32_t o : mech.observables) {
        ss << compiled.elementary[o].id << " ";
    }
    ss << "} from instruction " << mech.instruction_index;
    return ss.str();
}

}  // namespace

DetectorErrorModel derive_dem(const ScheduledCircuit &sc, const Circuit &noisy,
                              const CompiledDetectors &compiled) {
    Propagator prop(sc, noisy, compiled);

    struct RawMechanism {
        double p;
        std::vector<uint32_t> detectors;
        uint32_t obs_mask;
        size_t instr;
        uint32_t pauli;
    };
    std::vector<RawMechanism> raw;
    std::vector<uint32_t> gauge_basis;

    // Reference tableau evolved alongside the scan; the magnitude of a
    // Pauli expectation is outcome-independent, so fixed measurement
    // randomness is fine.
    StabilizerTableau tab(noisy.n_qubits);
    CounterRng rng{0x64656d5f676175ULL};

    auto consider = [&](double p, size_t idx, uint32_t code, uint32_t q0, uint32_t q1) {
        if (p <= 0) {
            return;
        }
        // State-trivial outcomes are frame gauge: they remap random
        // outcomes onto equally likely ones. Collect their signatures.
        PauliString e(noisy.n_qubits);
        if (code & 0b0001) {
            e.set_x_bit(q0, true);
        }
        if (code & 0b0010) {
            e.set_z_bit(q0, true);
        }
        if (code & 0b0100) {
            e.set_x_bit(q1, true);
        }
        if (code & 0b1000) {
            e.set_z_bit(q1, true);
        }
        bool trivial = tab.pauli_expectation(e) != 0;
        auto flips = prop.propagate(idx + 1, code, q0, q1);
        uint32_t obs_mask = 0;
        for (uint32_t o : flips.observables) {
            obs_mask |= 1u << o;
        }
        if (trivial) {
            if (!flips.detectors.empty()) {
                throw std::logic_error("state-trivial error flipped a detector");
            }
            insert_into_basis(obs_mask, gauge_basis);
            return;
        }
        if (flips.detectors.empty() && obs_mask == 0) {
            return;
        }
        raw.push_back({p,
                       {flips.detectors.begin(), flips.detectors.end()},
                       obs_mask,
                       idx,
                       code});
    };

    for (size_t idx = 0; idx < noisy.instructions.size(); idx++) {
        const Instruction &inst = noisy.instructions[idx];
        switch (inst.kind) {
            case InstructionKind::GATE:
                tab.apply(inst.gate);
                continue;
            case InstructionKind::MEASURE_Z:
                tab.measure_z(inst.qubit, rng.bernoulli(0.5, 0, idx));
                continue;
            case InstructionKind::RESET_Z:
                tab.reset_z(inst.qubit, rng.bernoulli(0.5, 0, idx));
                continue;
            case InstructionKind::TICK:
                continue;
            case InstructionKind::NOISE:
                break;
        }
        const NoiseChannel &ch = inst.noise;
        switch (ch.kind) {
            case NoiseKind::FLIP_X:
                consider(ch.p, idx, 0b0001, ch.q0, 0);
                break;
            case NoiseKind::DEPOLARIZE1:
                for (uint32_t code : {0b0001u, 0b0011u, 0b0010u}) {
                    consider(ch.p / 3.0, idx, code, ch.q0, 0);
                }
                break;
            case NoiseKind::DEPOLARIZE2:
                for (uint32_t k = 1; k < 16; k++) {
                    uint32_t a = k / 4, b = k % 4;  // 0=I, 1=X, 2=Y, 3=Z
                    auto to_xz = [](uint32_t cc) -> uint32_t {
                        return cc == 1 ? 0b01 : cc == 2 ? 0b11 : cc == 3 ? 0b10 : 0b00;
                    };
                    uint32_t code = to_xz(a) | (to_xz(b) << 2);
                    consider(ch.p / 15.0, idx, code, ch.q0, ch.q1);
                }
                break;
            case NoiseKind::IDLE_PAULI: {
                const std::pair<double, uint32_t> outcomes[] = {
                    {ch.px, 0b0001u}, {ch.py, 0b0011u}, {ch.pz, 0b0010u}};
                for (auto [p, code] : outcomes) {
                    consider(p, idx, code, ch.q0, 0);
                }
                break;
            }
        }
    }

    // Canonicalize signatures modulo the gauge group, then merge mechanisms
    // with identical flip sets via p <- p1 (1 - p2) + p2 (1 - p1).
    using Key = std::pair<std::vector<uint32_t>, uint32_t>;
    std::map<Key, ErrorMechanism> merged;
    for (const auto &r : raw) {
        uint32_t canon = reduce_by_basis(r.obs_mask, gauge_basis);
        if (r.detectors.empty() && canon == 0) {
            continue;  // gauge up to gauge: statistically invisible
        }
        Key key{r.detectors, canon};
        auto it = merged.find(key);
        if (it == merged.end()) {
            ErrorMechanism mech;
            mech.probability = r.p;
            mech.detectors = r.detectors;
            for (uint32_t o = 0; o < compiled.elementary.size(); o++) {
                if ((canon >> o) & 1) {
                    mech.observables.push_back(o);
                }
            }
            mech.instruction_index = static_cast<int32_t>(r.instr);
            mech.pauli_code = r.pauli;
            merged.emplace(std::move(key), std::move(mech));
        } else {
            double q = it->second.probability;
            it->second.probability = q * (1 - r.p) + r.p * (1 - q);
        }
    }

    DetectorErrorModel dem;
    dem.detectors = compiled.detectors;
    dem.observables = compiled.elementary;
    dem.gauge_basis = gauge_basis;
    for (auto &[key, mech] : merged) {
        for (uint32_t d : mech.detectors) {
            if (compiled.detectors[d].type == StabType::Z) {
                mech.z_detectors.push_back(d);
            } else {
                mech.x_detectors.push_back(d);
            }
        }
        for (uint32_t o : mech.observables) {
            if (compiled.elementary[o].basis == 'Z') {
                mech.z_observables.push_back(o);
            } else {
                mech.x_observables.push_back(o);
            }
        }
        if (mech.z_detectors.size() > 2 || mech.x_detectors.size() > 2) {
            dem.non_graphlike.push_back(describe_mechanism(mech, compiled));
        }
        if (mech.z_detectors.empty() && !mech.z_observables.empty()) {
            dem.undetectable_z.push_back(describe_mechanism(mech, compiled));
        }
        if (mech.x_detectors.empty() && !mech.x_observables.empty()) {
            dem.undetectable_x.push_back(describe_mechanism(mech, compiled));
        }
        dem.mechanisms.push_back(std::move(mech));
    }
    return dem;
}

uint32_t DetectorErrorModel::gauge_canonical(uint32_t observable_mask) const {
    return reduce_by_basis(observable_mask, gauge_basis);
}

}  // namespace splitsim
