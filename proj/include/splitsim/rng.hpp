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

#ifndef SPLITSIM_RNG_HPP
#define SPLITSIM_RNG_HPP

#include <cstdint>

namespace splitsim {

/// Counter-based random stream. Every value is a pure function of
/// (seed, shot, slot, draw), so shots can be sampled in any order and on any
/// number of threads while producing bit-identical results.
///
/// The mixer is two rounds of the SplitMix64 finalizer over a Weyl-style
/// combination of the counters.
struct CounterRng {
    uint64_t seed;

    static constexpr uint64_t mix64(uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    uint64_t word(uint64_t shot, uint64_t slot, uint64_t draw = 0) const {
        uint64_t h = seed;
        h = mix64(h ^ (shot * 0xd1342543de82ef95ULL));
        h = mix64(h ^ (slot * 0xaf251af3b0f025b5ULL) ^ (draw * 0x9e6c63d0a48d9a4fULL));
        return h;
    }

    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform(uint64_t shot, uint64_t slot, uint64_t draw = 0) const {
        return static_cast<double>(word(shot, slot, draw) >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p, uint64_t shot, uint64_t slot, uint64_t draw = 0) const {
        return uniform(shot, slot, draw) < p;
    }
};

}  // namespace splitsim

#endif
