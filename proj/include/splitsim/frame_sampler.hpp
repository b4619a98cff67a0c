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

#ifndef SPLITSIM_FRAME_SAMPLER_HPP
#define SPLITSIM_FRAME_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "splitsim/circuit.hpp"
#include "splitsim/shot_archive.hpp"

namespace splitsim {

/// One noiseless exact-simulation record, taken with a fixed internal seed,
/// plus a per-measurement flag marking outcomes that were not forced by the
/// preceding stabilizer group. Every detector evaluates to zero on it.
/// For nondeterministic measurements, branch_x/branch_z hold the Pauli that
/// maps the reference branch onto the opposite-outcome branch (the
/// stabilizer row that anticommuted with the measurement).
struct ReferenceSample {
    std::vector<bool> record;
    std::vector<bool> nondeterministic;
    std::vector<uint64_t> branch_x;
    std::vector<uint64_t> branch_z;
};

ReferenceSample reference_sample(const Circuit &noiseless);

/// Samples `n_shots` measurement records of the noisy circuit by Pauli-frame
/// propagation against the noiseless reference. Each nondeterministic
/// measurement receives an independent 50/50 sign randomization injected
/// into the frame, which reproduces the true outcome distribution while
/// leaving detectors untouched. Streams are keyed by
/// (seed, shot index, instruction index), so results are independent of
/// `threads`.
ShotBuffer sample_shots(const Circuit &noisy, size_t n_shots, uint64_t seed, int threads = 0);

}  // namespace splitsim

#endif
