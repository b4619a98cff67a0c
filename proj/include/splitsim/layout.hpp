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

#ifndef SPLITSIM_LAYOUT_HPP
#define SPLITSIM_LAYOUT_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace splitsim {

enum class StabType : uint8_t { X, Z };

/// The 17-qubit distance-three surface code device layout.
///
/// Data qubits D1..D9 form a three-by-three grid (D1 top-left, row-major).
/// The logical operators of the surface-code qubit run along the middle
/// column (X_L = X_D2 X_D5 X_D8) and middle row (Z_L = Z_D4 Z_D5 Z_D6).
/// After the split the left column {D1,D4,D7} and right column {D3,D6,D9}
/// carry the two bit-flip repetition codes.
struct QubitLayout {
    static constexpr uint32_t kNumQubits = 17;
    static constexpr uint32_t kNumData = 9;
    static constexpr uint32_t kNumStabsPerType = 4;

    // Qubit indices.
    static constexpr uint32_t D(int j) { return static_cast<uint32_t>(j - 1); }         // D1..D9 -> 0..8
    static constexpr uint32_t XA(int i) { return static_cast<uint32_t>(8 + i); }        // X1..X4 -> 9..12
    static constexpr uint32_t ZA(int i) { return static_cast<uint32_t>(12 + i); }       // Z1..Z4 -> 13..16

    struct Stabilizer {
        StabType type;
        int index;              // 1..4
        uint32_t auxiliary;     // auxiliary qubit
        std::vector<uint32_t> support;             // data qubits (pre-split)
        std::vector<uint32_t> post_split_support;  // data qubits after the split
        // CZ schedule slot (0..3) for each support qubit, aligned with
        // `support`. Slots map onto schedule steps two, three, five, six.
        std::vector<int> cz_slot;
    };

    std::vector<Stabilizer> stabilizers;  // X1..X4 then Z1..Z4
    std::vector<std::pair<uint32_t, uint32_t>> coupling_map;  // CZ-capable pairs

    QubitLayout();

    const Stabilizer &stab(StabType type, int index) const;
    bool coupled(uint32_t a, uint32_t b) const;
    static std::string qubit_name(uint32_t q);
    static std::string stab_name(StabType type, int index);

    /// Data qubits of the two repetition codes (left and right columns) and
    /// the measured-out middle column.
    static std::array<uint32_t, 3> code1_data() { return {D(1), D(4), D(7)}; }
    static std::array<uint32_t, 3> code2_data() { return {D(3), D(6), D(9)}; }
    static std::array<uint32_t, 3> middle_column() { return {D(2), D(5), D(8)}; }
};

}  // namespace splitsim

#endif
