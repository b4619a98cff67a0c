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

#ifndef SPLITSIM_CIRCUIT_HPP
#define SPLITSIM_CIRCUIT_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "splitsim/pauli.hpp"

namespace splitsim {

enum class InstructionKind : uint8_t {
    GATE,
    MEASURE_Z,
    RESET_Z,
    NOISE,
    TICK,
};

enum class NoiseKind : uint8_t {
    DEPOLARIZE1,  // each of X, Y, Z with p/3
    DEPOLARIZE2,  // each of the 15 non-identity pairs with p/15
    FLIP_X,       // X with probability p
    IDLE_PAULI,   // independent X, Y, Z flips with px, py, pz
};

struct NoiseChannel {
    NoiseKind kind;
    uint32_t q0 = 0;
    uint32_t q1 = UINT32_MAX;
    double p = 0.0;                  // DEPOLARIZE1/2, FLIP_X
    double px = 0.0, py = 0.0, pz = 0.0;  // IDLE_PAULI
    int32_t source_instruction = -1;      // instruction this channel annotates
};

struct Instruction {
    InstructionKind kind;
    CliffordGate gate{GateKind::H, 0, UINT32_MAX};  // GATE
    uint32_t qubit = 0;                             // MEASURE_Z / RESET_Z
    int32_t record_index = -1;                      // MEASURE_Z
    NoiseChannel noise;                             // NOISE
    double tick_duration = 0.0;                     // TICK, seconds
    uint64_t tick_busy_mask = 0;  // TICK: qubits occupied by ops spanning it
};

/// Ordered instruction list over n_qubits qubits. Measurement records are
/// indexed in program order and named by unique labels.
struct Circuit {
    uint32_t n_qubits = 0;
    std::vector<Instruction> instructions;
    std::vector<std::string> record_labels;
    std::unordered_map<std::string, uint32_t> label_to_record;

    Circuit() = default;
    explicit Circuit(uint32_t n) : n_qubits(n) {}

    size_t num_measurements() const { return record_labels.size(); }
    uint32_t record(const std::string &label) const;
    bool has_record(const std::string &label) const {
        return label_to_record.count(label) > 0;
    }

    void append_gate(const CliffordGate &g);
    void append_measure_z(uint32_t qubit, const std::string &label);
    void append_reset_z(uint32_t qubit);
    void append_noise(const NoiseChannel &channel);
    void append_tick(double duration_s, uint64_t busy_mask = 0);

    bool has_noise() const;
    /// Copy with all noise channels removed.
    Circuit without_noise() const;

    /// Throws std::invalid_argument on out-of-range targets, duplicate
    /// labels, or invalid channel probabilities.
    void validate() const;
};

}  // namespace splitsim

#endif
