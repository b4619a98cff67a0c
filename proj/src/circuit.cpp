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

#include "splitsim/circuit.hpp"

#include <stdexcept>

namespace splitsim {

uint32_t Circuit::record(const std::string &label) const {
    auto it = label_to_record.find(label);
    if (it == label_to_record.end()) {
        throw std::invalid_argument("no measurement record labeled '" + label + "'");
    }
    return it->second;
}

void Circuit::append_gate(const CliffordGate &g) {
    Instruction inst;
    inst.kind = InstructionKind::GATE;
    inst.gate = g;
    instructions.push_back(inst);
}

void Circuit::append_measure_z(uint32_t qubit, const std::string &label) {
    if (label_to_record.count(label)) {
        throw std::invalid_argument("duplicate record label '" + label + "'");
    }
    Instruction inst;
    inst.kind = InstructionKind::MEASURE_Z;
    inst.qubit = qubit;
    inst.record_index = static_cast<int32_t>(record_labels.size());
    label_to_record.emplace(label, static_cast<uint32_t>(record_labels.size()));
    record_labels.push_back(label);
    instructions.push_back(inst);
}

void Circuit::append_reset_z(uint32_t qubit) {
    Instruction inst;
    inst.kind = InstructionKind::RESET_Z;
    inst.qubit = qubit;
    instructions.push_back(inst);
}

void Circuit::append_noise(const NoiseChannel &channel) {
    Instruction inst;
    inst.kind = InstructionKind::NOISE;
    inst.noise = channel;
    instructions.push_back(inst);
}

void Circuit::append_tick(double duration_s, uint64_t busy_mask) {
    Instruction inst;
    inst.kind = InstructionKind::TICK;
    inst.tick_duration = duration_s;
    inst.tick_busy_mask = busy_mask;
    instructions.push_back(inst);
}

bool Circuit::has_noise() const {
    for (const auto &inst : instructions) {
        if (inst.kind == InstructionKind::NOISE) {
            return true;
        }
    }
    return false;
}

Circuit Circuit::without_noise() const {
    Circuit out(n_qubits);
    out.record_labels = record_labels;
    out.label_to_record = label_to_record;
    for (const auto &inst : instructions) {
        if (inst.kind != InstructionKind::NOISE) {
            out.instructions.push_back(inst);
        }
    }
    return out;
}

void Circuit::validate() const {
    auto check_qubit = [&](uint32_t q) {
        if (q >= n_qubits) {
            throw std::invalid_argument("qubit index out of range");
        }
    };
    auto check_prob = [&](double p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("noise probability outside [0, 1]");
        }
    };
    size_t measure_count = 0;
    for (const auto &inst : instructions) {
        switch (inst.kind) {
            case InstructionKind::GATE:
                check_qubit(inst.gate.q0);
                if (gate_is_two_qubit(inst.gate.kind)) {
                    check_qubit(inst.gate.q1);
                    if (inst.gate.q0 == inst.gate.q1) {
                        throw std::invalid_argument("CZ targets must be distinct");
                    }
                }
                break;
            case InstructionKind::MEASURE_Z:
                check_qubit(inst.qubit);
                measure_count++;
                break;
            case InstructionKind::RESET_Z:
                check_qubit(inst.qubit);
                break;
            case InstructionKind::NOISE:
                check_qubit(inst.noise.q0);
                if (inst.noise.kind == NoiseKind::DEPOLARIZE2) {
                    check_qubit(inst.noise.q1);
                }
                if (inst.noise.kind == NoiseKind::IDLE_PAULI) {
                    check_prob(inst.noise.px);
                    check_prob(inst.noise.py);
                    check_prob(inst.noise.pz);
                } else {
                    check_prob(inst.noise.p);
                }
                break;
            case InstructionKind::TICK:
                if (inst.tick_duration < 0) {
                    throw std::invalid_argument("negative tick duration");
                }
                break;
        }
    }
    if (measure_count != record_labels.size()) {
        throw std::invalid_argument("measurement/record bookkeeping out of sync");
    }
}

}  // namespace splitsim
