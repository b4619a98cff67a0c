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

#include "splitsim/layout.hpp"

#include <algorithm>
#include <stdexcept>

namespace splitsim {

namespace {

struct PlaquetteSpec {
    StabType type;
    int index;
    double row, col;  // plaquette center in grid coordinates
};

// Plaquette centers. Data qubit Dj sits at (row, col) = ((j-1)/3, (j-1)%3).
// The checkerboard puts X-type plaquettes at centers (0.5, 0.5) and
// (1.5, 1.5) plus the top/bottom weight-two boundary stubs, Z-type at
// (1.5, 0.5) and (0.5, 1.5) plus the left/right stubs. This reproduces the
// stabilizer relations used by the split:
//   X_L X_L1 = S^X2 S^X4,  X_L X_L2 = S^X1 S^X3,
//   S^Z2 loses D5, D8 at the split and S^Z3 loses D2, D5.
const PlaquetteSpec kPlaquettes[] = {
    {StabType::X, 1, -0.5, 1.5},
    {StabType::X, 2, 0.5, 0.5},
    {StabType::X, 3, 1.5, 1.5},
    {StabType::X, 4, 2.5, 0.5},
    {StabType::Z, 1, 0.5, -0.5},
    {StabType::Z, 2, 1.5, 0.5},
    {StabType::Z, 3, 0.5, 1.5},
    {StabType::Z, 4, 1.5, 2.5},
};

// Corner visit orders satisfying the fault-tolerance constraint on the
// two-qubit gate order. X-type plaquettes sweep row-first (a "Z"), so
// auxiliary faults hook onto horizontal bit-flip pairs, which overlap the
// row-aligned Z_L evenly and never touch the mid-circuit column readout
// with a silent syndrome; Z-type plaquettes sweep column-first (an "N"),
// hooking vertical phase-flip pairs that overlap the column-aligned X_L
// evenly. Corners are (dr, dc) offsets from the plaquette center.
const std::array<std::pair<double, double>, 4> kXOrder = {{
    {-0.5, -0.5},  // NW
    {-0.5, +0.5},  // NE
    {+0.5, -0.5},  // SW
    {+0.5, +0.5},  // SE
}};
const std::array<std::pair<double, double>, 4> kZOrder = {{
    {-0.5, -0.5},  // NW
    {+0.5, -0.5},  // SW
    {-0.5, +0.5},  // NE
    {+0.5, +0.5},  // SE
}};

int data_at(double row, double col) {
    int r = static_cast<int>(row + 0.5), c = static_cast<int>(col + 0.5);
    if (row < -0.25 || col < -0.25 || r > 2 || c > 2 ||
        std::abs(row - r) > 0.25 || std::abs(col - c) > 0.25) {
        return -1;
    }
    return r * 3 + c + 1;  // Dj number
}

}  // namespace

QubitLayout::QubitLayout() {
    for (const auto &pl : kPlaquettes) {
        Stabilizer st;
        st.type = pl.type;
        st.index = pl.index;
        st.auxiliary = pl.type == StabType::X ? XA(pl.index) : ZA(pl.index);
        const auto &order = pl.type == StabType::X ? kXOrder : kZOrder;
        for (int slot = 0; slot < 4; slot++) {
            int dj = data_at(pl.row + order[slot].first, pl.col + order[slot].second);
            if (dj < 0) {
                continue;
            }
            st.support.push_back(D(dj));
            st.cz_slot.push_back(slot);
        }
        // The split measures out the middle column (D2, D5, D8).
        for (uint32_t q : st.support) {
            bool middle = q == D(2) || q == D(5) || q == D(8);
            if (pl.type == StabType::Z && middle) {
                continue;
            }
            if (pl.type == StabType::Z) {
                st.post_split_support.push_back(q);
            }
        }
        stabilizers.push_back(std::move(st));
    }
    for (const auto &st : stabilizers) {
        for (uint32_t q : st.support) {
            coupling_map.emplace_back(std::min(st.auxiliary, q), std::max(st.auxiliary, q));
        }
    }
    std::sort(coupling_map.begin(), coupling_map.end());
    coupling_map.erase(std::unique(coupling_map.begin(), coupling_map.end()), coupling_map.end());
}

const QubitLayout::Stabilizer &QubitLayout::stab(StabType type, int index) const {
    for (const auto &st : stabilizers) {
        if (st.type == type && st.index == index) {
            return st;
        }
    }
    throw std::invalid_argument("no such stabilizer");
}

bool QubitLayout::coupled(uint32_t a, uint32_t b) const {
    auto key = std::make_pair(std::min(a, b), std::max(a, b));
    return std::binary_search(coupling_map.begin(), coupling_map.end(), key);
}

std::string QubitLayout::qubit_name(uint32_t q) {
    if (q < 9) {
        return "D" + std::to_string(q + 1);
    }
    if (q < 13) {
        return "X" + std::to_string(q - 8);
    }
    if (q < 17) {
        return "Z" + std::to_string(q - 12);
    }
    throw std::invalid_argument("qubit index out of range");
}

std::string QubitLayout::stab_name(StabType type, int index) {
    return (type == StabType::X ? "X" : "Z") + std::to_string(index);
}

}  // namespace splitsim
