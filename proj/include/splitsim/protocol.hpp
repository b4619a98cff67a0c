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

#ifndef SPLITSIM_PROTOCOL_HPP
#define SPLITSIM_PROTOCOL_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitsim/circuit.hpp"
#include "splitsim/detectors.hpp"
#include "splitsim/layout.hpp"

namespace splitsim {

enum class ProtocolKind : uint8_t {
    SURFACE_MEMORY,
    REPETITION_MEMORY,
    SPLIT,
    SPLIT_ARBITRARY,
    DISTANCE_ONE,
};

enum class ReadoutBasis : uint8_t { X, Y, Z };

const char *protocol_kind_name(ProtocolKind kind);
char basis_letter(ReadoutBasis b);

struct ProtocolSpec {
    ProtocolKind kind = ProtocolKind::SPLIT;
    int m = 3;  // memory cycles, or pre-split Z-cycle count (m+1 X cycles)
    int n = 2;  // post-split Z-only cycles
    // Initial state label. Memories: "+"/"-" per logical ("+Z", "-Z", "+X",
    // "-X" for the surface code; "++", "+-", "-+", "--" for the two
    // repetition codes). Split: "+Z" or "-Z" (fault-tolerant preparation).
    std::string initial_state = "+Z";
    double theta = 0.0, phi = 0.0;  // SPLIT_ARBITRARY injection angles
    ReadoutBasis basis1 = ReadoutBasis::Z;  // repetition code 1 / memory basis
    ReadoutBasis basis2 = ReadoutBasis::Z;  // repetition code 2

    std::string to_json() const;
    static ProtocolSpec from_json(const std::string &text);
    void validate() const;
};

/// Schedule timing constants (Methods values).
struct ScheduleTimes {
    static constexpr double kSingleQubit = 48e-9;
    static constexpr double kCz = 141.5e-9;  // 101.5 ns pulse + two 20 ns buffers
    static constexpr double kReadout = 340e-9;
    static constexpr double kCyclePeriod = 1.66e-6;
    static constexpr double kHalfPeriod = kCyclePeriod / 2;
    // Seven gate steps of a stabilizer half-block.
    static constexpr double kStepsTotal = 3 * kSingleQubit + 4 * kCz;
    static constexpr double kPad = kHalfPeriod - kStepsTotal;  // step eight
};

/// A record-label directory entry for auxiliary measurements.
struct AuxRecordKey {
    StabType type;
    int stab_index;  // 1..4
    int cycle;       // 1-based per own type
    auto operator<=>(const AuxRecordKey &) const = default;
};

/// A circuit plus everything needed to interpret it: the tick schedule, the
/// record-label directory, preparation reference signs and the declared
/// logical structure.
struct ScheduledCircuit {
    Circuit circuit;
    ProtocolSpec spec;

    int x_cycles = 0;  // measured X-type cycles
    int z_cycles = 0;  // measured Z-type cycles
    int split_cycle = 0;  // Z cycle whose detectors absorb the mid readout (0 = none)

    std::map<AuxRecordKey, uint32_t> aux_records;
    std::map<uint32_t, uint32_t> mid_records;    // data qubit -> record
    std::map<uint32_t, uint32_t> final_records;  // data qubit -> record
    std::map<uint32_t, ReadoutBasis> final_basis;

    /// Preparation-time stabilizer values; absent when the preparation does
    /// not define the stabilizer (then no first-cycle detector exists).
    std::map<std::pair<StabType, int>, bool> prep_reference;

    /// Stabilizers active in the protocol (distance-one uses a subset).
    std::vector<std::pair<StabType, int>> active_stabs;
    /// Per-stabilizer measurement support (distance-one restricts X3).
    std::map<std::pair<StabType, int>, std::vector<uint32_t>> measurement_support;
    std::map<std::pair<StabType, int>, std::vector<uint32_t>> final_support;

    bool injection = false;  // App. G arbitrary-state preparation

    uint32_t aux_record(StabType type, int stab, int cycle) const;
    std::string label(StabType type, int stab, int cycle) const;
};

/// Builds a state-preservation experiment: `m` cycles of stabilizer
/// measurement with preparation and final data readout in `basis`.
/// Surface memories interleave X- and Z-type cycles; repetition memories
/// run the two bit-flip codes with Z-type cycles only. The Y-variant
/// repetition readout measures the middle-row data qubits (D4, D6) in Y and
/// the rest in X.
ScheduledCircuit build_memory(ProtocolKind kind, int m, ReadoutBasis basis,
                              const std::string &initial_state);

/// Builds the lattice-split experiment: m+1 X-type cycles interleaved with
/// m Z-type cycles, mid-circuit Z readout of the middle column, n Z-only
/// cycles on the repetition codes, and a tomographic final readout.
ScheduledCircuit build_split(const ProtocolSpec &spec);

/// Builds the distance-one control: D7, D8, D9 with X-stabilizer
/// measurements on X3 and X4, a mid-circuit Z readout of D8 and a
/// tomographic readout of D7 and D9.
ScheduledCircuit build_distance_one(int m, ReadoutBasis basis1, ReadoutBasis basis2);

/// Preparation gates for a cardinal state of a single qubit; the label is
/// one of "+Z", "-Z", "+X", "-X", "+Y", "-Y".
std::vector<CliffordGate> cardinal_prep_gates(const std::string &label, uint32_t qubit);

/// True when (theta, phi) coincides with a cardinal direction, returning
/// its label. Non-cardinal injections are evaluated by the harness as
/// linear combinations over cardinal-state runs.
std::optional<std::string> cardinal_label(double theta, double phi);

/// Applies the Pauli-frame update to raw logical observable bits:
/// X_L1 picks up s^X2_4 s^X4_4, X_L2 picks up s^X1_4 s^X3_4, Z_L2 picks up
/// z_D5, Z_L1 is unchanged. Works on any built protocol via the observable
/// definitions' frame record sets.
/// Returns the frame-corrected +-1 value of the observable on one shot.
int logical_observable_value(const ObservableDefinition &obs,
                             const std::vector<bool> &record);

/// Frame-corrected +-1 values of all compiled observables on one shot.
std::map<std::string, int> logical_observable_values(const CompiledDetectors &compiled,
                                                     const std::vector<bool> &record);

}  // namespace splitsim

#endif
