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

#include "splitsim/frame_sampler.hpp"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "splitsim/evaluate.hpp"
#include "splitsim/noise.hpp"
#include "splitsim/tableau.hpp"

using namespace splitsim;

namespace {

DeviceParameters test_device() {
    return DeviceParameters::load(std::string(SPLITSIM_SOURCE_DIR) + "/data/device_surface17.json");
}

}  // namespace

TEST(ReferenceSample, all_zero_for_z_memory_and_reproducible) {
    auto sc = build_memory(ProtocolKind::REPETITION_MEMORY, 2, ReadoutBasis::Z, "++");
    auto ref1 = reference_sample(sc.circuit);
    auto ref2 = reference_sample(sc.circuit);
    EXPECT_EQ(ref1.record, ref2.record);
    EXPECT_EQ(ref1.nondeterministic, ref2.nondeterministic);
    for (bool bit : ref1.record) {
        EXPECT_FALSE(bit);
    }
}

TEST(ReferenceSample, split_reference_has_zero_detectors_despite_random_x_bits) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto ref = reference_sample(sc.circuit);
    bool any_nondet = false;
    for (bool flag : ref.nondeterministic) {
        any_nondet |= flag;
    }
    EXPECT_TRUE(any_nondet);  // the X-stabilizer bits are individually random
    auto compiled = compile_detectors(sc);
    std::vector<uint64_t> words((ref.record.size() + 63) / 64, 0);
    for (size_t k = 0; k < ref.record.size(); k++) {
        if (ref.record[k]) {
            words[k >> 6] |= uint64_t{1} << (k & 63);
        }
    }
    DetectorMaskSet masks(compiled, ref.record.size());
    for (size_t d = 0; d < compiled.detectors.size(); d++) {
        EXPECT_FALSE(masks.eval(words.data(), d)) << compiled.detectors[d].id;
    }
}

TEST(SampleShots, zero_noise_reproduces_reference_detectors) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto shots = sample_shots(sc.circuit, 256, 3);
    auto compiled = compile_detectors(sc);
    auto dets = compute_detector_matrix(shots, compiled);
    for (size_t s = 0; s < dets.n_shots; s++) {
        for (size_t d = 0; d < dets.n_columns; d++) {
            ASSERT_FALSE(dets.get(s, d));
        }
    }
}

TEST(SampleShots, z_flip_invisible_x_flip_fires_detector) {
    // Qubit A prepared in |+> with a certain Z flip: the repeated-measurement
    // detector {a1, a2} stays quiet. Qubit B prepared in |0> with a certain
    // X flip before its readout: the preparation detector {b} fires on every
    // shot.
    Circuit c(2);
    c.append_reset_z(0);
    c.append_reset_z(1);
    c.append_gate(CliffordGate::single(GateKind::SQRT_Y, 0));
    NoiseChannel zch;
    zch.kind = NoiseKind::IDLE_PAULI;
    zch.q0 = 0;
    zch.pz = 1.0;
    c.append_noise(zch);
    NoiseChannel xch;
    xch.kind = NoiseKind::FLIP_X;
    xch.q0 = 1;
    xch.p = 1.0;
    c.append_noise(xch);
    c.append_measure_z(0, "a1");
    c.append_measure_z(0, "a2");
    c.append_measure_z(1, "b");
    auto shots = sample_shots(c, 512, 9);
    for (size_t s = 0; s < shots.n_shots; s++) {
        ASSERT_EQ(shots.get(s, 0), shots.get(s, 1));  // Z flip invisible
        ASSERT_TRUE(shots.get(s, 2));                 // X flip fires every shot
    }
}

TEST(SampleShots, plus_state_statistics_are_unbiased) {
    Circuit c(1);
    c.append_reset_z(0);
    c.append_gate(CliffordGate::single(GateKind::SQRT_Y, 0));
    c.append_measure_z(0, "m");
    auto shots = sample_shots(c, 100000, 17);
    size_t ones = 0;
    for (size_t s = 0; s < shots.n_shots; s++) {
        ones += shots.get(s, 0);
    }
    EXPECT_NEAR(static_cast<double>(ones) / 100000.0, 0.5, 0.006);
}

TEST(SampleShots, deterministic_and_thread_invariant) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto binding = attach_noise(sc, test_device(), 2.0);
    auto a = sample_shots(binding.noisy, 1000, 42, 1);
    auto b = sample_shots(binding.noisy, 1000, 42, 4);
    EXPECT_EQ(a.words, b.words);
    auto c = sample_shots(binding.noisy, 1000, 43, 1);
    EXPECT_NE(a.words, c.words);
}

TEST(SampleShots, detector_marginals_match_exact_simulation) {
    ProtocolSpec spec;
    auto sc = build_split(spec);
    auto binding = attach_noise(sc, test_device(), 1.0);
    auto compiled = compile_detectors(sc);

    const size_t frame_shots = 40000;
    auto shots = sample_shots(binding.noisy, frame_shots, 7);
    auto dets = compute_detector_matrix(shots, compiled);

    const size_t exact_shots = 8000;
    DetectorMaskSet masks(compiled, binding.noisy.num_measurements());
    std::vector<uint64_t> exact_counts(compiled.detectors.size(), 0);
    for (size_t s = 0; s < exact_shots; s++) {
        auto record = run_exact_shot(binding.noisy, 7, s);
        std::vector<uint64_t> words((record.size() + 63) / 64, 0);
        for (size_t k = 0; k < record.size(); k++) {
            if (record[k]) {
                words[k >> 6] |= uint64_t{1} << (k & 63);
            }
        }
        for (size_t d = 0; d < exact_counts.size(); d++) {
            exact_counts[d] += masks.eval(words.data(), d);
        }
    }
    for (size_t d = 0; d < compiled.detectors.size(); d++) {
        uint64_t frame_count = 0;
        for (size_t s = 0; s < frame_shots; s++) {
            frame_count += dets.get(s, d);
        }
        double p1 = static_cast<double>(frame_count) / frame_shots;
        double p2 = static_cast<double>(exact_counts[d]) / exact_shots;
        double se = std::sqrt(p1 * (1 - p1) / frame_shots + p2 * (1 - p2) / exact_shots + 1e-12);
        EXPECT_NEAR(p1, p2, 5 * se) << compiled.detectors[d].id;
    }
}

TEST(ShotArchive, round_trip_bit_exact) {
    ShotBuffer shots(77, 37);
    uint64_t state = 12345;
    for (size_t s = 0; s < shots.n_shots; s++) {
        for (size_t c = 0; c < shots.n_columns; c++) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            shots.set(s, c, (state >> 60) & 1);
        }
    }
    std::vector<std::string> labels;
    for (size_t c = 0; c < shots.n_columns; c++) {
        labels.push_back("m" + std::to_string(c));
    }
    std::stringstream ss;
    write_shot_archive(ss, shots, labels);
    auto back = read_shot_archive(ss);
    EXPECT_EQ(back.labels, labels);
    ASSERT_EQ(back.shots.n_shots, shots.n_shots);
    ASSERT_EQ(back.shots.n_columns, shots.n_columns);
    EXPECT_EQ(back.shots.words, shots.words);
}
