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

#include "splitsim/detectors.hpp"

#include <algorithm>
#include <stdexcept>

#include "splitsim/protocol.hpp"

namespace splitsim {

namespace {

const QubitLayout &layout() {
    static const QubitLayout instance;
    return instance;
}

PauliString data_operator(std::initializer_list<std::pair<uint32_t, char>> factors) {
    PauliString p(QubitLayout::kNumQubits);
    for (auto [q, basis] : factors) {
        if (basis == 'X' || basis == 'Y') {
            p.set_x_bit(q, true);
        }
        if (basis == 'Z' || basis == 'Y') {
            p.set_z_bit(q, true);
        }
    }
    return p;
}

char basis_of(StabType t) {
    return t == StabType::X ? 'X' : 'Z';
}

}  // namespace

std::vector<uint32_t> CompiledDetectors::detector_ids_of_type(StabType type) const {
    std::vector<uint32_t> out;
    for (uint32_t k = 0; k < detectors.size(); k++) {
        if (detectors[k].type == type) {
            out.push_back(k);
        }
    }
    return out;
}

int CompiledDetectors::find_observable(const std::string &id) const {
    for (size_t k = 0; k < observables.size(); k++) {
        if (observables[k].id == id) {
            return static_cast<int>(k);
        }
    }
    return -1;
}

CompiledDetectors compile_detectors(const ScheduledCircuit &sc) {
    CompiledDetectors out;
    const auto &lay = layout();

    for (auto [type, index] : sc.active_stabs) {
        int total_cycles = type == StabType::X ? sc.x_cycles : sc.z_cycles;
        auto key = std::make_pair(type, index);
        for (int cycle = 1; cycle <= total_cycles; cycle++) {
            DetectorDefinition det;
            det.id = QubitLayout::stab_name(type, index) + ":" + std::to_string(cycle);
            det.type = type;
            det.stab_index = index;
            det.cycle = cycle;
            if (cycle == 1) {
                auto ref = sc.prep_reference.find(key);
                if (ref == sc.prep_reference.end()) {
                    // No defined preparation value (weight-four stabilizers
                    // under state injection, or a non-matching basis).
                    out.omitted.push_back(det.id);
                    continue;
                }
                det.first_cycle = true;
                det.ref_bit = ref->second;
                det.injection_postselect = sc.injection;
                det.records.push_back(sc.aux_record(type, index, 1));
            } else {
                // Auxiliary qubits are not reset between cycles, so the
                // cycle-N stabilizer value is the parity of records N and
                // N-1 and the syndrome telescopes to records N and N-2.
                det.records.push_back(sc.aux_record(type, index, cycle));
                if (cycle - 2 >= 1) {
                    det.records.push_back(sc.aux_record(type, index, cycle - 2));
                }
                if (sc.split_cycle > 0 && type == StabType::Z && cycle == sc.split_cycle) {
                    // Modified split-cycle syndrome: multiply in the
                    // mid-circuit readouts of the support lost at the split.
                    const auto &full = lay.stab(type, index).support;
                    const auto &post = lay.stab(type, index).post_split_support;
                    for (uint32_t q : full) {
                        if (std::find(post.begin(), post.end(), q) == post.end()) {
                            det.records.push_back(sc.mid_records.at(q));
                        }
                    }
                }
            }
            out.detectors.push_back(std::move(det));
        }
        // Final detector from the data-qubit readout, when the readout
        // basis matches the stabilizer type on its whole (post-deformation)
        // support.
        const auto &final_support = sc.final_support.at(key);
        if (!final_support.empty() && total_cycles >= 1) {
            bool basis_ok = true;
            for (uint32_t q : final_support) {
                auto it = sc.final_basis.find(q);
                if (it == sc.final_basis.end() ||
                    basis_letter(it->second) != basis_of(type)) {
                    basis_ok = false;
                    break;
                }
            }
            if (basis_ok) {
                DetectorDefinition det;
                det.id = QubitLayout::stab_name(type, index) + ":" +
                         std::to_string(total_cycles + 1);
                det.type = type;
                det.stab_index = index;
                det.cycle = total_cycles + 1;
                det.final_cycle = true;
                for (uint32_t q : final_support) {
                    det.records.push_back(sc.final_records.at(q));
                }
                det.records.push_back(sc.aux_record(type, index, total_cycles));
                if (total_cycles - 1 >= 1) {
                    det.records.push_back(sc.aux_record(type, index, total_cycles - 1));
                }
                out.detectors.push_back(std::move(det));
            }
        }
    }

    // Observables. The elementary set (Z- and X-type logical operators) is
    // always declared; the measured set depends on the tomographic bases.
    auto fin = [&](uint32_t q) { return sc.final_records.at(q); };
    auto add_elementary = [&](const std::string &id, int code, char basis,
                              std::vector<uint32_t> parity, std::vector<uint32_t> frame,
                              PauliString op) {
        ObservableDefinition obs;
        obs.id = id;
        obs.code = code;
        obs.basis = basis;
        obs.parity_records = std::move(parity);
        obs.frame_records = std::move(frame);
        obs.final_operator = std::move(op);
        out.elementary.push_back(std::move(obs));
    };
    auto add_measured = [&](ObservableDefinition obs) { out.observables.push_back(std::move(obs)); };

    ProtocolKind kind = sc.spec.kind;
    const auto D = [](int j) { return QubitLayout::D(j); };

    if (kind == ProtocolKind::SPLIT || kind == ProtocolKind::SPLIT_ARBITRARY ||
        kind == ProtocolKind::REPETITION_MEMORY) {
        bool split = kind != ProtocolKind::REPETITION_MEMORY;
        std::vector<uint32_t> x1_frame, x2_frame, z2_frame;
        if (split) {
            int last = sc.x_cycles;
            // s^Xi_last is the parity of the last two raw records.
            for (int i : {2, 4}) {
                x1_frame.push_back(sc.aux_record(StabType::X, i, last));
                if (last >= 2) {
                    x1_frame.push_back(sc.aux_record(StabType::X, i, last - 1));
                }
            }
            for (int i : {1, 3}) {
                x2_frame.push_back(sc.aux_record(StabType::X, i, last));
                if (last >= 2) {
                    x2_frame.push_back(sc.aux_record(StabType::X, i, last - 1));
                }
            }
            z2_frame.push_back(sc.mid_records.at(D(5)));
        }
        add_elementary("Z_L1", 1, 'Z', {fin(D(4))}, {}, data_operator({{D(4), 'Z'}}));
        add_elementary("Z_L2", 2, 'Z', {fin(D(6))}, z2_frame, data_operator({{D(6), 'Z'}}));
        add_elementary("X_L1", 1, 'X', {fin(D(1)), fin(D(4)), fin(D(7))}, x1_frame,
                       data_operator({{D(1), 'X'}, {D(4), 'X'}, {D(7), 'X'}}));
        add_elementary("X_L2", 2, 'X', {fin(D(3)), fin(D(6)), fin(D(9))}, x2_frame,
                       data_operator({{D(3), 'X'}, {D(6), 'X'}, {D(9), 'X'}}));

        auto code_data = [&](int code) {
            return code == 1 ? QubitLayout::code1_data() : QubitLayout::code2_data();
        };
        for (int code = 1; code <= 2; code++) {
            ReadoutBasis b = code == 1 ? sc.spec.basis1 : sc.spec.basis2;
            auto qs = code_data(code);
            uint32_t middle = code == 1 ? D(4) : D(6);
            ObservableDefinition obs;
            obs.code = code;
            obs.basis = basis_letter(b);
            obs.id = std::string(1, obs.basis) + "_L" + std::to_string(code);
            switch (b) {
                case ReadoutBasis::Z:
                    obs.parity_records = {fin(middle)};
                    obs.frame_records = out.elementary[code - 1].frame_records;
                    obs.final_operator = out.elementary[code - 1].final_operator;
                    break;
                case ReadoutBasis::X:
                    obs.parity_records = {fin(qs[0]), fin(qs[1]), fin(qs[2])};
                    obs.frame_records = out.elementary[1 + code].frame_records;
                    obs.final_operator = out.elementary[1 + code].final_operator;
                    break;
                case ReadoutBasis::Y: {
                    obs.parity_records = {fin(qs[0]), fin(qs[1]), fin(qs[2])};
                    // Y_Lc = X_Lc Z_Lc as operators; the frame is the XOR of
                    // both frames.
                    obs.frame_records = out.elementary[1 + code].frame_records;
                    for (uint32_t r : out.elementary[code - 1].frame_records) {
                        obs.frame_records.push_back(r);
                    }
                    obs.final_operator =
                        data_operator({{qs[0], 'X'}, {middle, 'Y'}, {qs[2], 'X'}});
                    break;
                }
            }
            add_measured(std::move(obs));
        }
    } else if (kind == ProtocolKind::SURFACE_MEMORY) {
        add_elementary("Z_L", 0, 'Z', {fin(D(4)), fin(D(5)), fin(D(6))}, {},
                       data_operator({{D(4), 'Z'}, {D(5), 'Z'}, {D(6), 'Z'}}));
        add_elementary("X_L", 0, 'X', {fin(D(2)), fin(D(5)), fin(D(8))}, {},
                       data_operator({{D(2), 'X'}, {D(5), 'X'}, {D(8), 'X'}}));
        ObservableDefinition obs;
        obs.code = 0;
        obs.basis = basis_letter(sc.spec.basis1);
        obs.id = std::string(1, obs.basis) + "_L";
        switch (sc.spec.basis1) {
            case ReadoutBasis::Z:
                obs = out.elementary[0];
                break;
            case ReadoutBasis::X:
                obs = out.elementary[1];
                break;
            case ReadoutBasis::Y:
                obs.id = "Y_L";
                obs.parity_records = {fin(D(2)), fin(D(4)), fin(D(5)), fin(D(6)), fin(D(8))};
                obs.final_operator = data_operator(
                    {{D(2), 'X'}, {D(4), 'Z'}, {D(5), 'Y'}, {D(6), 'Z'}, {D(8), 'X'}});
                break;
        }
        add_measured(std::move(obs));
    } else if (kind == ProtocolKind::DISTANCE_ONE) {
        int last = sc.x_cycles;
        std::vector<uint32_t> x1_frame;
        for (int i : {3, 4}) {
            x1_frame.push_back(sc.aux_record(StabType::X, i, last));
            if (last >= 2) {
                x1_frame.push_back(sc.aux_record(StabType::X, i, last - 1));
            }
        }
        std::vector<uint32_t> z2_frame = {sc.mid_records.at(D(8))};
        add_elementary("Z_L1", 1, 'Z', {fin(D(7))}, {}, data_operator({{D(7), 'Z'}}));
        add_elementary("Z_L2", 2, 'Z', {fin(D(9))}, z2_frame, data_operator({{D(9), 'Z'}}));
        add_elementary("X_L1", 1, 'X', {fin(D(7))}, x1_frame, data_operator({{D(7), 'X'}}));
        add_elementary("X_L2", 2, 'X', {fin(D(9))}, {}, data_operator({{D(9), 'X'}}));
        for (int code = 1; code <= 2; code++) {
            ReadoutBasis b = code == 1 ? sc.spec.basis1 : sc.spec.basis2;
            uint32_t q = code == 1 ? D(7) : D(9);
            ObservableDefinition obs;
            obs.code = code;
            obs.basis = basis_letter(b);
            obs.id = std::string(1, obs.basis) + "_L" + std::to_string(code);
            obs.parity_records = {fin(q)};
            switch (b) {
                case ReadoutBasis::Z:
                    obs.frame_records = out.elementary[code - 1].frame_records;
                    obs.final_operator = data_operator({{q, 'Z'}});
                    break;
                case ReadoutBasis::X:
                    obs.frame_records = out.elementary[1 + code].frame_records;
                    obs.final_operator = data_operator({{q, 'X'}});
                    break;
                case ReadoutBasis::Y:
                    obs.frame_records = out.elementary[1 + code].frame_records;
                    for (uint32_t r : out.elementary[code - 1].frame_records) {
                        obs.frame_records.push_back(r);
                    }
                    obs.final_operator = data_operator({{q, 'Y'}});
                    break;
            }
            add_measured(std::move(obs));
        }
    }
    return out;
}

DetectorMaskSet::DetectorMaskSet(const CompiledDetectors &compiled, size_t n_records)
    : n_records_words((n_records + 63) / 64) {
    for (const auto &det : compiled.detectors) {
        std::vector<uint64_t> mask(n_records_words, 0);
        for (uint32_t r : det.records) {
            mask[r >> 6] ^= uint64_t{1} << (r & 63);
        }
        masks.push_back(std::move(mask));
        ref_bits.push_back(det.ref_bit);
    }
}

bool DetectorMaskSet::eval(const uint64_t *record_words, size_t det) const {
    uint64_t acc = 0;
    const auto &mask = masks[det];
    for (size_t w = 0; w < n_records_words; w++) {
        acc ^= record_words[w] & mask[w];
    }
    return ((__builtin_popcountll(acc) & 1) != 0) != (ref_bits[det] != 0);
}

}  // namespace splitsim
