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

#include "splitsim/protocol.hpp"

#include "gtest/gtest.h"
#include "splitsim/tableau.hpp"

using namespace splitsim;

namespace {

std::vector<uint64_t> pack_record(const std::vector<bool> &record) {
    std::vector<uint64_t> words((record.size() + 63) / 64, 0);
    for (size_t k = 0; k < record.size(); k++) {
        if (record[k]) {
            words[k >> 6] |= uint64_t{1} << (k & 63);
        }
    }
    return words;
}

void expect_all_detectors_zero(const ScheduledCircuit &sc, int shots, uint64_t seed) {
    auto compiled = compile_detectors(sc);
    DetectorMaskSet masks(compiled, sc.circuit.num_measurements());
    for (int s = 0; s < shots; s++) {
        auto record = run_exact_shot(sc.circuit, seed, s);
        auto words = pack_record(record);
        for (size_t d = 0; d < compiled.detectors.size(); d++) {
            ASSERT_FALSE(masks.eval(words.data(), d))
                << compiled.detectors[d].id << " fired on noiseless shot " << s;
        }
    }
}

int observable_on_shot(const ScheduledCircuit &sc, const std::string &id,
                       const std::vector<bool> &record) {
    auto compiled = compile_detectors(sc);
    int idx = compiled.find_observable(id);
    EXPECT_GE(idx, 0) << id;
    return logical_observable_value(compiled.observables[idx], record);
}

}  // namespace

TEST(BuildSplit, detector_and_measurement_counts) {
    ProtocolSpec spec;
    spec.kind = ProtocolKind::SPLIT;
    auto sc = build_split(spec);
    // 4 X cycles + 5 Z cycles of auxiliary readout + 3 mid + 6 final.
    EXPECT_EQ(sc.circuit.num_measurements(), 16u + 20u + 3u + 6u);
    auto compiled = compile_detectors(sc);
    size_t z_count = compiled.detector_ids_of_type(StabType::Z).size();
    size_t x_count = compiled.detector_ids_of_type(StabType::X).size();
    // "four times six nodes" for the Z graph; X detectors lack first and
    // final cycles.
    EXPECT_EQ(z_count, 24u);
    EXPECT_EQ(x_count, 12u);
}

TEST(BuildSplit, split_cycle_detectors_absorb_mid_readout) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto compiled = compile_detectors(sc);
    for (const auto &det : compiled.detectors) {
        if (det.type != StabType::Z || det.cycle != 4) {
            continue;
        }
        size_t expected = det.stab_index == 2 || det.stab_index == 3 ? 4u : 2u;
        EXPECT_EQ(det.records.size(), expected) << det.id;
    }
}

TEST(BuildSplit, all_cz_gates_use_coupled_pairs) {
    QubitLayout lay;
    for (auto kind : {ProtocolKind::SPLIT, ProtocolKind::SPLIT_ARBITRARY}) {
        ProtocolSpec spec;
        spec.kind = kind;
        if (kind == ProtocolKind::SPLIT_ARBITRARY) {
            spec.theta = 1.5707963267948966;
            spec.phi = 1.5707963267948966;
        }
        auto sc = build_split(spec);
        for (const auto &inst : sc.circuit.instructions) {
            if (inst.kind == InstructionKind::GATE && inst.gate.kind == GateKind::CZ) {
                EXPECT_TRUE(lay.coupled(inst.gate.q0, inst.gate.q1));
            }
        }
    }
}

TEST(BuildSplit, eight_ticks_per_half_block) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    int ticks = 0;
    for (const auto &inst : sc.circuit.instructions) {
        ticks += inst.kind == InstructionKind::TICK;
    }
    // prep tick + 8 ticks per half-block; halves: 4 X + 5 Z + 1 idle = 10.
    EXPECT_EQ(ticks, 1 + 8 * 10);
    double total = 0;
    for (const auto &inst : sc.circuit.instructions) {
        if (inst.kind == InstructionKind::TICK) {
            total += inst.tick_duration;
        }
    }
    EXPECT_NEAR(total, 10 * ScheduleTimes::kHalfPeriod, 1e-12);
}

TEST(BuildSplit, noiseless_detectors_all_zero) {
    ProtocolSpec spec;
    expect_all_detectors_zero(build_split(spec), 20, 99);
    spec.initial_state = "-Z";
    expect_all_detectors_zero(build_split(spec), 10, 100);
}

TEST(BuildSplit, bell_observables_on_every_noiseless_shot) {
    for (auto [basis, expected] :
         std::vector<std::pair<ReadoutBasis, int>>{{ReadoutBasis::Z, +1},
                                                   {ReadoutBasis::X, +1},
                                                   {ReadoutBasis::Y, -1}}) {
        ProtocolSpec spec;
        spec.basis1 = spec.basis2 = basis;
        auto sc = build_split(spec);
        auto compiled = compile_detectors(sc);
        char b = basis_letter(basis);
        int i1 = compiled.find_observable(std::string(1, b) + "_L1");
        int i2 = compiled.find_observable(std::string(1, b) + "_L2");
        ASSERT_GE(i1, 0);
        ASSERT_GE(i2, 0);
        for (int s = 0; s < 50; s++) {
            auto record = run_exact_shot(sc.circuit, 7, s);
            int v1 = logical_observable_value(compiled.observables[i1], record);
            int v2 = logical_observable_value(compiled.observables[i2], record);
            ASSERT_EQ(v1 * v2, expected) << "basis " << b << " shot " << s;
        }
    }
}

TEST(BuildSplit, injection_emits_only_weight_two_first_cycle_detectors) {
    ProtocolSpec spec;
    spec.kind = ProtocolKind::SPLIT_ARBITRARY;
    spec.theta = 0;
    auto sc = build_split(spec);
    auto compiled = compile_detectors(sc);
    int first_cycle = 0;
    for (const auto &det : compiled.detectors) {
        if (det.first_cycle) {
            first_cycle++;
            EXPECT_TRUE(det.injection_postselect);
            // Only the weight-two stabilizers X1, X4, Z1, Z4 are predefined.
            EXPECT_TRUE(det.stab_index == 1 || det.stab_index == 4) << det.id;
        }
    }
    EXPECT_EQ(first_cycle, 4);
    EXPECT_EQ(compiled.omitted.size(), 4u);
}

TEST(BuildSplit, injection_theta_zero_reduces_to_bell) {
    ProtocolSpec spec;
    spec.kind = ProtocolKind::SPLIT_ARBITRARY;
    spec.theta = 0;
    auto sc = build_split(spec);
    expect_all_detectors_zero(sc, 10, 3);
    for (int s = 0; s < 30; s++) {
        auto record = run_exact_shot(sc.circuit, 8, s);
        EXPECT_EQ(observable_on_shot(sc, "Z_L1", record) * observable_on_shot(sc, "Z_L2", record), 1);
    }
}

TEST(BuildSplit, rejects_non_cardinal_injection) {
    ProtocolSpec spec;
    spec.kind = ProtocolKind::SPLIT_ARBITRARY;
    spec.theta = 0.3;
    EXPECT_THROW(build_split(spec), std::invalid_argument);
}

TEST(BuildMemory, measurement_counts) {
    auto sc20 = build_memory(ProtocolKind::SURFACE_MEMORY, 20, ReadoutBasis::Z, "+Z");
    EXPECT_EQ(sc20.circuit.num_measurements(), 8u * 20u + 9u);
    auto rep = build_memory(ProtocolKind::REPETITION_MEMORY, 1, ReadoutBasis::Z, "++");
    EXPECT_EQ(rep.circuit.num_measurements(), 4u + 6u);
    auto compiled = compile_detectors(rep);
    // m=1: initial and final detectors only, 2 per stabilizer.
    EXPECT_EQ(compiled.detectors.size(), 8u);
}

TEST(BuildMemory, y_variant_reads_middle_row_in_y) {
    auto sc = build_memory(ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Y, "++");
    EXPECT_EQ(sc.final_basis.at(QubitLayout::D(4)), ReadoutBasis::Y);
    EXPECT_EQ(sc.final_basis.at(QubitLayout::D(6)), ReadoutBasis::Y);
    EXPECT_EQ(sc.final_basis.at(QubitLayout::D(1)), ReadoutBasis::X);
    EXPECT_EQ(sc.final_basis.at(QubitLayout::D(9)), ReadoutBasis::X);
}

TEST(BuildMemory, noiseless_observables_match_preparation) {
    struct Case {
        ProtocolKind kind;
        int m;
        ReadoutBasis basis;
        std::string init;
        std::string obs;
        int expected;
    };
    const Case cases[] = {
        {ProtocolKind::SURFACE_MEMORY, 2, ReadoutBasis::Z, "+Z", "Z_L", +1},
        {ProtocolKind::SURFACE_MEMORY, 2, ReadoutBasis::Z, "-Z", "Z_L", -1},
        {ProtocolKind::SURFACE_MEMORY, 2, ReadoutBasis::X, "+X", "X_L", +1},
        {ProtocolKind::SURFACE_MEMORY, 2, ReadoutBasis::X, "-X", "X_L", -1},
        {ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Z, "+-", "Z_L1", +1},
        {ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Z, "+-", "Z_L2", -1},
        {ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::X, "-+", "X_L1", -1},
        {ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::X, "-+", "X_L2", +1},
        {ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Y, "-+", "Y_L1", -1},
        {ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Y, "-+", "Y_L2", +1},
    };
    for (const auto &c : cases) {
        auto sc = build_memory(c.kind, c.m, c.basis, c.init);
        for (int s = 0; s < 20; s++) {
            auto record = run_exact_shot(sc.circuit, 17, s);
            ASSERT_EQ(observable_on_shot(sc, c.obs, record), c.expected)
                << c.init << " -> " << c.obs;
        }
    }
}

TEST(BuildMemory, noiseless_detectors_all_zero) {
    expect_all_detectors_zero(build_memory(ProtocolKind::SURFACE_MEMORY, 3, ReadoutBasis::Z, "+Z"), 10, 1);
    expect_all_detectors_zero(build_memory(ProtocolKind::SURFACE_MEMORY, 3, ReadoutBasis::X, "-X"), 10, 2);
    expect_all_detectors_zero(build_memory(ProtocolKind::REPETITION_MEMORY, 4, ReadoutBasis::Z, "--"), 10, 3);
    expect_all_detectors_zero(build_memory(ProtocolKind::REPETITION_MEMORY, 4, ReadoutBasis::Y, "++"), 10, 4);
    expect_all_detectors_zero(build_memory(ProtocolKind::SURFACE_MEMORY, 2, ReadoutBasis::Y, "inj:+Y"), 10, 5);
}

TEST(BuildDistanceOne, noiseless_bell_for_every_cycle_count) {
    for (int m_plus_1 = 1; m_plus_1 <= 6; m_plus_1++) {
        for (auto basis : {ReadoutBasis::Z, ReadoutBasis::X}) {
            auto sc = build_distance_one(m_plus_1 - 1, basis, basis);
            auto compiled = compile_detectors(sc);
            char b = basis_letter(basis);
            int i1 = compiled.find_observable(std::string(1, b) + "_L1");
            int i2 = compiled.find_observable(std::string(1, b) + "_L2");
            ASSERT_GE(i1, 0);
            ASSERT_GE(i2, 0);
            for (int s = 0; s < 20; s++) {
                auto record = run_exact_shot(sc.circuit, 23, s);
                int v1 = logical_observable_value(compiled.observables[i1], record);
                int v2 = logical_observable_value(compiled.observables[i2], record);
                ASSERT_EQ(v1 * v2, +1) << "m+1=" << m_plus_1 << " basis " << b;
            }
        }
    }
}

TEST(BuildDistanceOne, single_round_has_no_postselection_detectors) {
    auto sc = build_distance_one(0, ReadoutBasis::X, ReadoutBasis::X);
    auto compiled = compile_detectors(sc);
    EXPECT_TRUE(compiled.detectors.empty());
}

TEST(PauliFrameUpdate, unit_semantics) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto compiled = compile_detectors(sc);
    int zl2 = compiled.find_observable("Z_L2");
    ASSERT_GE(zl2, 0);
    const auto &obs = compiled.observables[zl2];
    std::vector<bool> record(sc.circuit.num_measurements(), false);
    // All frame bits +1: value unchanged.
    EXPECT_EQ(logical_observable_value(obs, record), +1);
    // z_D5 = -1 flips Z_L2 only.
    record[sc.mid_records.at(QubitLayout::D(5))] = true;
    EXPECT_EQ(logical_observable_value(obs, record), -1);
    int zl1 = compiled.find_observable("Z_L1");
    EXPECT_EQ(logical_observable_value(compiled.observables[zl1], record), +1);
}

TEST(PauliFrameUpdate, x_frame_product_of_two_flips_is_neutral) {
    ProtocolSpec spec;
    spec.basis1 = spec.basis2 = ReadoutBasis::X;
    auto sc = build_split(spec);
    auto compiled = compile_detectors(sc);
    int xl1 = compiled.find_observable("X_L1");
    ASSERT_GE(xl1, 0);
    const auto &obs = compiled.observables[xl1];
    std::vector<bool> record(sc.circuit.num_measurements(), false);
    // s^X2_4 = -1 and s^X4_4 = -1: product +1, X_L1 unchanged.
    record[sc.aux_record(StabType::X, 2, 4)] = true;
    record[sc.aux_record(StabType::X, 4, 4)] = true;
    EXPECT_EQ(logical_observable_value(obs, record), +1);
    // A single -1 flips it.
    record[sc.aux_record(StabType::X, 4, 4)] = false;
    EXPECT_EQ(logical_observable_value(obs, record), -1);
}

TEST(ProtocolSpec, json_round_trip) {
    ProtocolSpec spec;
    spec.kind = ProtocolKind::SPLIT_ARBITRARY;
    spec.m = 3;
    spec.n = 2;
    spec.theta = 0.75;
    spec.phi = 4.0;
    spec.basis1 = ReadoutBasis::Y;
    spec.basis2 = ReadoutBasis::Z;
    auto back = ProtocolSpec::from_json(spec.to_json());
    EXPECT_EQ(back.kind, spec.kind);
    EXPECT_EQ(back.m, spec.m);
    EXPECT_EQ(back.n, spec.n);
    EXPECT_DOUBLE_EQ(back.theta, spec.theta);
    EXPECT_DOUBLE_EQ(back.phi, spec.phi);
    EXPECT_EQ(back.basis1, spec.basis1);
    EXPECT_EQ(back.basis2, spec.basis2);
}
