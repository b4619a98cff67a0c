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

#ifndef SPLITSIM_NOISE_HPP
#define SPLITSIM_NOISE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "splitsim/protocol.hpp"

namespace splitsim {

struct QubitParams {
    double t1_s;
    double t2e_s;
    double sq_error;  // randomized-benchmarking average single-qubit error
    double ro_error;  // two-state readout assignment error
};

struct DeviceParameters {
    std::map<uint32_t, QubitParams> qubits;
    std::map<std::pair<uint32_t, uint32_t>, double> cz_error;  // keyed min,max

    double cz(uint32_t a, uint32_t b) const;
    void validate() const;

    std::string to_json() const;
    static DeviceParameters from_json(const std::string &text);
    static DeviceParameters load(const std::string &path);
};

/// 1/T_phi = 1/T2E - 1/(2 T1). Returns +infinity when T2E = 2 T1.
/// Throws when T2E > 2 T1.
double pure_dephasing_time(double t1_s, double t2e_s);

struct IdleProbs {
    double px, py, pz;
};

/// p_i = 1 - exp(-t/T_i) with T_X = T_Y = 4 T1 and T_Z = T_phi.
IdleProbs idle_pauli_probs(double t_s, double t1_s, double tphi_s);

/// One inserted channel with its provenance.
struct NoiseBindingEntry {
    size_t noise_instruction;    // index in the noisy circuit
    int32_t source_instruction;  // annotated instruction index (noisy circuit), -1 for idles
    NoiseChannel channel;
};

struct NoiseBinding {
    Circuit noisy;
    double improvement_factor;
    std::vector<NoiseBindingEntry> entries;
};

/// Inserts the circuit-level Pauli noise model: a depolarizing channel after
/// every gate (the RB error r maps to total depolarizing probability
/// r*d/(d-1)), an X flip before every measurement and after every reset, and
/// per-tick idle Pauli channels on inactive qubits. All probabilities are
/// divided by the improvement factor x.
NoiseBinding attach_noise(const ScheduledCircuit &sc, const DeviceParameters &params,
                          double improvement_factor);

/// Removes every noise channel; inverse of attach_noise up to channel order.
Circuit strip_noise(const Circuit &noisy);

}  // namespace splitsim

#endif
