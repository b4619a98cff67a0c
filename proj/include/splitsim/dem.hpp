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

#ifndef SPLITSIM_DEM_HPP
#define SPLITSIM_DEM_HPP

#include <string>
#include <vector>

#include "splitsim/detectors.hpp"
#include "splitsim/noise.hpp"
#include "splitsim/protocol.hpp"

namespace splitsim {

/// An independent error mechanism: with `probability` it fires and flips the
/// listed detectors and elementary observables. The Z/X parts split the
/// flips by detector type for the two decoding subproblems, with observable
/// flips assigned to the part of matching type.
struct ErrorMechanism {
    double probability = 0;
    std::vector<uint32_t> detectors;     // indices into the detector catalog
    std::vector<uint32_t> observables;   // indices into the elementary catalog
    std::vector<uint32_t> z_detectors, x_detectors;
    std::vector<uint32_t> z_observables, x_observables;
    // Provenance of one representative contributor.
    int32_t instruction_index = -1;
    uint32_t pauli_code = 0;  // packed (x0, z0, x1, z1)
};

struct DetectorErrorModel {
    std::vector<DetectorDefinition> detectors;
    std::vector<ObservableDefinition> observables;  // the elementary catalog
    std::vector<ErrorMechanism> mechanisms;         // merged, canonical order
    /// GF(2) span of observable-flip signatures of state-trivial errors
    /// (stabilizer-valued frames). Such flips map measurement outcomes onto
    /// equally likely ones; mechanism signatures are reduced to canonical
    /// coset representatives modulo this group, and decoding is correct up
    /// to it.
    std::vector<uint32_t> gauge_basis;
    uint32_t gauge_canonical(uint32_t observable_mask) const;
    /// Mechanisms whose decomposed part flips more than two same-type
    /// detectors (not representable as a matching-graph edge).
    std::vector<std::string> non_graphlike;
    /// Mechanisms that flip an observable without flipping any detector of
    /// the matching type (undetectable logical errors). The Z list must be
    /// empty for the fault-tolerant protocols; the X list is expected to be
    /// populated after the split, where phase flips go unseen.
    std::vector<std::string> undetectable_z;
    std::vector<std::string> undetectable_x;
};

/// Propagates every outcome of every noise channel through the remainder of
/// the circuit, maps its measurement-flip footprint onto detectors and
/// elementary observables, and merges mechanisms with identical flip sets
/// via p <- p1 (1-p2) + p2 (1-p1).
DetectorErrorModel derive_dem(const ScheduledCircuit &sc, const Circuit &noisy,
                              const CompiledDetectors &compiled);

}  // namespace splitsim

#endif
