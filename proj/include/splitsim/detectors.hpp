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

#ifndef SPLITSIM_DETECTORS_HPP
#define SPLITSIM_DETECTORS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "splitsim/layout.hpp"
#include "splitsim/pauli.hpp"

namespace splitsim {

struct ScheduledCircuit;  // protocol.hpp

/// A detector: the parity of a set of measurement records, XORed with a
/// fixed reference bit fixed by state preparation. Value 1 flags an error.
struct DetectorDefinition {
    std::string id;       // e.g. "Z2:4"
    StabType type;
    int stab_index;       // 1..4
    int cycle;            // 1-based; final data-derived detectors use last+1
    std::vector<uint32_t> records;
    bool ref_bit = false;
    bool first_cycle = false;
    bool final_cycle = false;
    /// App. G runs postselect on these instead of decoding them.
    bool injection_postselect = false;
};

/// A logical observable: the +-1 product of final data readouts in
/// `parity_records` times the Pauli-frame records in `frame_records`.
///
/// `final_operator` is the data-qubit Pauli the parity records measure,
/// used when deriving error effects symbolically; `mid_frame_records` are
/// the frame records (a subset of frame_records) that exist mid-circuit.
struct ObservableDefinition {
    std::string id;  // "Z_L1", "X_L2", "Y_L1", "Z_L", "X_L"
    std::vector<uint32_t> parity_records;
    std::vector<uint32_t> frame_records;
    int code = 0;          // 1 or 2 for repetition codes; 0 for surface logicals
    char basis = 'Z';      // X, Y or Z
    PauliString final_operator;  // over all device qubits
};

struct CompiledDetectors {
    std::vector<DetectorDefinition> detectors;
    /// Observables measured by the circuit's tomographic bases.
    std::vector<ObservableDefinition> observables;
    /// The elementary Z- and X-type logical operators, always declared; the
    /// error model tracks these and products are corrected through them.
    std::vector<ObservableDefinition> elementary;
    /// First-cycle detectors that had no defined reference sign and were
    /// omitted (weight-four stabilizers under state injection).
    std::vector<std::string> omitted;

    std::vector<uint32_t> detector_ids_of_type(StabType type) const;
    int find_observable(const std::string &id) const;
};

/// Turns a built protocol description into detector and observable
/// definitions: first-cycle detectors anchored to preparation reference
/// signs, bulk detectors comparing outcomes two records apart (auxiliary
/// qubits are not reset, so stabilizer values telescope), the modified
/// split-cycle detectors that absorb the mid-circuit data readouts, and
/// final detectors built from the data readout.
CompiledDetectors compile_detectors(const ScheduledCircuit &protocol);

/// Per-shot detector evaluation helper: XOR of record bits against masks.
struct DetectorMaskSet {
    size_t n_records_words;
    std::vector<std::vector<uint64_t>> masks;  // per detector
    std::vector<uint8_t> ref_bits;

    DetectorMaskSet(const CompiledDetectors &compiled, size_t n_records);
    bool eval(const uint64_t *record_words, size_t det) const;
};

}  // namespace splitsim

#endif
