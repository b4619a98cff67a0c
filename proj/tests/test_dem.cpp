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

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "splitsim/evaluate.hpp"
#include "splitsim/frame_sampler.hpp"

using namespace splitsim;

namespace {

DeviceParameters test_device() {
    return DeviceParameters::load(std::string(SPLITSIM_SOURCE_DIR) + "/data/device_surface17.json");
}

struct SplitDem {
    ScheduledCircuit sc;
    CompiledDetectors compiled;
    DetectorErrorModel dem;
};

SplitDem make_split_dem(double x = 1.0) {
    SplitDem out;
    ProtocolSpec spec;
    out.sc = build_split(spec);
    out.compiled = compile_detectors(out.sc);
    auto binding = attach_noise(out.sc, test_device(), x);
    out.dem = derive_dem(out.sc, binding.noisy, out.compiled);
    return out;
}

std::set<std::string> det_ids(const SplitDem &s, const ErrorMechanism &mech) {
    std::set<std::string> ids;
    for (uint32_t d : mech.detectors) {
        ids.insert(s.compiled.detectors[d].id);
    }
    return ids;
}

std::set<std::string> obs_ids(const SplitDem &s, const ErrorMechanism &mech) {
    std::set<std::string> ids;
    for (uint32_t o : mech.observables) {
        ids.insert(s.compiled.elementary[o].id);
    }
    return ids;
}

}  // namespace

TEST(DeriveDem, split_is_graphlike_and_z_fault_tolerant) {
    auto s = make_split_dem();
    EXPECT_TRUE(s.dem.non_graphlike.empty());
    // No single error may flip Z_L1 or Z_L2 without firing a Z detector.
    EXPECT_TRUE(s.dem.undetectable_z.empty());
    // Phase flips after the split are invisible, so the X list is populated.
    EXPECT_FALSE(s.dem.undetectable_x.empty());
}

TEST(DeriveDem, x_error_on_d5_before_mid_readout) {
    auto s = make_split_dem();
    // The readout-error flip on the D5 mid-circuit measurement flips the
    // two modified split-cycle syndromes and the Z_L2 observable (stored as
    // its canonical representative modulo the frame gauge group).
    uint32_t zl2_mask = 0;
    for (uint32_t o = 0; o < s.compiled.elementary.size(); o++) {
        if (s.compiled.elementary[o].id == "Z_L2") {
            zl2_mask = 1u << o;
        }
    }
    uint32_t want = s.dem.gauge_canonical(zl2_mask);
    EXPECT_NE(want, 0u);  // a Z_L2 flip is physical, not gauge
    bool found = false;
    for (const auto &mech : s.dem.mechanisms) {
        uint32_t mask = 0;
        for (uint32_t o : mech.observables) {
            mask |= 1u << o;
        }
        if (det_ids(s, mech) == std::set<std::string>{"Z2:4", "Z3:4"} && mask == want) {
            found = true;
            break;
        }
    }
    EXPECT_TRUE(found);
}

TEST(DeriveDem, auxiliary_readout_flip_is_time_like_consecutive) {
    auto s = make_split_dem();
    // A readout flip on Z1's cycle-2 measurement (no reset) fires the
    // cycle-2 and cycle-3 syndromes of the same stabilizer.
    bool found = false;
    for (const auto &mech : s.dem.mechanisms) {
        if (det_ids(s, mech) == std::set<std::string>{"Z1:2", "Z1:3"} && mech.observables.empty()) {
            found = true;
            break;
        }
    }
    EXPECT_TRUE(found);
}

TEST(DeriveDem, no_two_cycle_span_time_like_mechanisms) {
    // Physical flips persist without reset, so record parities never pair a
    // syndrome with its two-cycles-later partner; such correlations would
    // need genuine misclassification, which the model excludes.
    auto s = make_split_dem();
    for (const auto &mech : s.dem.mechanisms) {
        if (mech.detectors.size() != 2) {
            continue;
        }
        const auto &a = s.compiled.detectors[mech.detectors[0]];
        const auto &b = s.compiled.detectors[mech.detectors[1]];
        if (a.type == b.type && a.stab_index == b.stab_index) {
            EXPECT_LE(std::abs(a.cycle - b.cycle), 1)
                << a.id << " <-> " << b.id << " span-2 time-like mechanism";
        }
    }
}

TEST(DeriveDem, idle_error_between_cycles_fires_adjacent_stabilizers) {
    // A bit flip on D4 between repetition-code cycles fires the
    // neighbouring Z1 and Z2 syndromes of the next cycle.
    auto sc = build_memory(ProtocolKind::REPETITION_MEMORY, 3, ReadoutBasis::Z, "++");
    auto compiled = compile_detectors(sc);
    auto binding = attach_noise(sc, test_device(), 1.0);
    auto dem = derive_dem(sc, binding.noisy, compiled);
    bool found = false;
    for (const auto &mech : dem.mechanisms) {
        if (mech.detectors.size() != 2) {
            continue;
        }
        const auto &a = compiled.detectors[mech.detectors[0]];
        const auto &b = compiled.detectors[mech.detectors[1]];
        std::set<std::string> names{a.id, b.id};
        if (names == std::set<std::string>{"Z1:2", "Z2:2"}) {
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(DeriveDem, merge_is_order_independent_within_a_tick) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto compiled = compile_detectors(sc);
    auto binding = attach_noise(sc, test_device(), 1.0);
    auto dem1 = derive_dem(sc, binding.noisy, compiled);

    // Swap two adjacent idle channels inside the same tick and re-derive.
    Circuit shuffled = binding.noisy;
    bool swapped = false;
    for (size_t k = 0; k + 1 < shuffled.instructions.size() && !swapped; k++) {
        auto &a = shuffled.instructions[k];
        auto &b = shuffled.instructions[k + 1];
        if (a.kind == InstructionKind::NOISE && b.kind == InstructionKind::NOISE &&
            a.noise.kind == NoiseKind::IDLE_PAULI && b.noise.kind == NoiseKind::IDLE_PAULI) {
            std::swap(a, b);
            swapped = true;
        }
    }
    ASSERT_TRUE(swapped);
    auto dem2 = derive_dem(sc, shuffled, compiled);
    ASSERT_EQ(dem1.mechanisms.size(), dem2.mechanisms.size());
    for (size_t k = 0; k < dem1.mechanisms.size(); k++) {
        EXPECT_EQ(dem1.mechanisms[k].detectors, dem2.mechanisms[k].detectors);
        EXPECT_EQ(dem1.mechanisms[k].observables, dem2.mechanisms[k].observables);
        EXPECT_NEAR(dem1.mechanisms[k].probability, dem2.mechanisms[k].probability, 1e-15);
    }
}

TEST(DeriveDem, dem_regenerated_marginals_match_circuit_sampling) {
    auto sc = build_memory(ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Z, "++");
    auto compiled = compile_detectors(sc);
    auto binding = attach_noise(sc, test_device(), 1.0);
    auto dem = derive_dem(sc, binding.noisy, compiled);

    const size_t shots = 200000;
    auto sampled = sample_shots(binding.noisy, shots, 21);
    auto dets = compute_detector_matrix(sampled, compiled);
    std::vector<uint64_t> circuit_counts(compiled.detectors.size(), 0);
    for (size_t s = 0; s < shots; s++) {
        for (size_t d = 0; d < circuit_counts.size(); d++) {
            circuit_counts[d] += dets.get(s, d);
        }
    }

    // Regenerate detector marginals by firing mechanisms independently.
    std::mt19937_64 rng(99);
    std::vector<uint64_t> dem_counts(compiled.detectors.size(), 0);
    std::vector<uint8_t> flip(compiled.detectors.size());
    for (size_t s = 0; s < shots; s++) {
        std::fill(flip.begin(), flip.end(), 0);
        for (const auto &mech : dem.mechanisms) {
            if (std::uniform_real_distribution<double>()(rng) < mech.probability) {
                for (uint32_t d : mech.detectors) {
                    flip[d] ^= 1;
                }
            }
        }
        for (size_t d = 0; d < flip.size(); d++) {
            dem_counts[d] += flip[d];
        }
    }
    for (size_t d = 0; d < compiled.detectors.size(); d++) {
        double p1 = static_cast<double>(circuit_counts[d]) / shots;
        double p2 = static_cast<double>(dem_counts[d]) / shots;
        double se = std::sqrt((p1 * (1 - p1) + p2 * (1 - p2)) / shots + 1e-12);
        EXPECT_NEAR(p1, p2, 4 * se) << compiled.detectors[d].id;
    }
}
