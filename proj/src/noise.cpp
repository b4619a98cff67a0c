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

#include "splitsim/noise.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace splitsim {

double DeviceParameters::cz(uint32_t a, uint32_t b) const {
    auto it = cz_error.find({std::min(a, b), std::max(a, b)});
    if (it == cz_error.end()) {
        throw std::invalid_argument("no CZ error parameter for pair " +
                                    QubitLayout::qubit_name(a) + "-" + QubitLayout::qubit_name(b));
    }
    return it->second;
}

void DeviceParameters::validate() const {
    for (const auto &[q, p] : qubits) {
        if (p.t1_s <= 0 || p.t2e_s <= 0) {
            throw std::invalid_argument("coherence times must be positive");
        }
        if (p.t2e_s > 2 * p.t1_s + 1e-12) {
            throw std::invalid_argument("T2E exceeds 2*T1 for " + QubitLayout::qubit_name(q));
        }
        if (p.sq_error < 0 || p.sq_error >= 1 || p.ro_error < 0 || p.ro_error >= 1) {
            throw std::invalid_argument("error rates must lie in [0, 1)");
        }
    }
    for (const auto &[pair, e] : cz_error) {
        if (e < 0 || e >= 1) {
            throw std::invalid_argument("CZ error out of range");
        }
    }
}

namespace {

uint32_t qubit_from_name(const std::string &name) {
    for (uint32_t q = 0; q < QubitLayout::kNumQubits; q++) {
        if (QubitLayout::qubit_name(q) == name) {
            return q;
        }
    }
    throw std::invalid_argument("unknown qubit name '" + name + "'");
}

}  // namespace

std::string DeviceParameters::to_json() const {
    nlohmann::json j;
    for (const auto &[q, p] : qubits) {
        nlohmann::json jp;
        jp["t1_us"] = p.t1_s * 1e6;
        jp["t2e_us"] = p.t2e_s * 1e6;
        jp["sq_error"] = p.sq_error;
        jp["ro_error"] = p.ro_error;
        j["qubits"][QubitLayout::qubit_name(q)] = jp;
    }
    for (const auto &[pair, e] : cz_error) {
        std::string key = QubitLayout::qubit_name(pair.first) + "-" +
                          QubitLayout::qubit_name(pair.second);
        j["pairs"][key]["cz_error"] = e;
    }
    return j.dump(2);
}

DeviceParameters DeviceParameters::from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    DeviceParameters out;
    for (const auto &[name, jp] : j.at("qubits").items()) {
        QubitParams p;
        p.t1_s = jp.at("t1_us").get<double>() * 1e-6;
        p.t2e_s = jp.at("t2e_us").get<double>() * 1e-6;
        p.sq_error = jp.at("sq_error").get<double>();
        p.ro_error = jp.at("ro_error").get<double>();
        out.qubits[qubit_from_name(name)] = p;
    }
    for (const auto &[key, jp] : j.at("pairs").items()) {
        auto dash = key.find('-');
        if (dash == std::string::npos) {
            throw std::invalid_argument("pair key must be 'A-B'");
        }
        uint32_t a = qubit_from_name(key.substr(0, dash));
        uint32_t b = qubit_from_name(key.substr(dash + 1));
        out.cz_error[{std::min(a, b), std::max(a, b)}] = jp.at("cz_error").get<double>();
    }
    out.validate();
    return out;
}

DeviceParameters DeviceParameters::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open device file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json(ss.str());
}

double pure_dephasing_time(double t1_s, double t2e_s) {
    if (t1_s <= 0 || t2e_s <= 0) {
        throw std::invalid_argument("coherence times must be positive");
    }
    if (t2e_s > 2 * t1_s + 1e-12) {
        throw std::invalid_argument("T2E > 2*T1");
    }
    double rate = 1.0 / t2e_s - 1.0 / (2 * t1_s);
    if (rate <= 0) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / rate;
}

IdleProbs idle_pauli_probs(double t_s, double t1_s, double tphi_s) {
    if (t_s < 0) {
        throw std::invalid_argument("negative idle duration");
    }
    IdleProbs p;
    p.px = p.py = 1.0 - std::exp(-t_s / (4 * t1_s));
    p.pz = std::isinf(tphi_s) ? 0.0 : 1.0 - std::exp(-t_s / tphi_s);
    return p;
}

NoiseBinding attach_noise(const ScheduledCircuit &sc, const DeviceParameters &params,
                          double improvement_factor) {
    if (improvement_factor < 1.0) {
        throw std::invalid_argument("improvement factor must be >= 1");
    }
    if (sc.circuit.has_noise()) {
        throw std::invalid_argument("circuit already carries noise channels");
    }
    params.validate();
    const Circuit &src = sc.circuit;
    const double inv_x = 1.0 / improvement_factor;

    // Active qubits: everything the circuit touches.
    uint64_t active_mask = 0;
    for (const auto &inst : src.instructions) {
        switch (inst.kind) {
            case InstructionKind::GATE:
                active_mask |= uint64_t{1} << inst.gate.q0;
                if (gate_is_two_qubit(inst.gate.kind)) {
                    active_mask |= uint64_t{1} << inst.gate.q1;
                }
                break;
            case InstructionKind::MEASURE_Z:
            case InstructionKind::RESET_Z:
                active_mask |= uint64_t{1} << inst.qubit;
                break;
            default:
                break;
        }
    }
    for (uint32_t q = 0; q < src.n_qubits; q++) {
        if ((active_mask >> q) & 1) {
            if (!params.qubits.count(q)) {
                throw std::invalid_argument("missing device parameters for " +
                                            QubitLayout::qubit_name(q));
            }
        }
    }

    NoiseBinding binding;
    binding.improvement_factor = improvement_factor;
    Circuit &out = binding.noisy;
    out = Circuit(src.n_qubits);

    auto emit_noise = [&](NoiseChannel ch, int32_t source) {
        ch.source_instruction = source;
        binding.entries.push_back({out.instructions.size(), source, ch});
        out.append_noise(ch);
    };

    // Walk tick groups; insert per-qubit idle channels at each tick's end.
    size_t i = 0;
    const size_t n_inst = src.instructions.size();
    bool in_tick = false;
    double tick_duration = 0;
    uint64_t tick_busy = 0;

    auto flush_tick = [&]() {
        if (!in_tick || tick_duration <= 0) {
            in_tick = false;
            return;
        }
        for (uint32_t q = 0; q < src.n_qubits; q++) {
            if (!((active_mask >> q) & 1) || ((tick_busy >> q) & 1)) {
                continue;
            }
            const auto &qp = params.qubits.at(q);
            IdleProbs probs =
                idle_pauli_probs(tick_duration, qp.t1_s, pure_dephasing_time(qp.t1_s, qp.t2e_s));
            NoiseChannel ch;
            ch.kind = NoiseKind::IDLE_PAULI;
            ch.q0 = q;
            ch.px = probs.px * inv_x;
            ch.py = probs.py * inv_x;
            ch.pz = probs.pz * inv_x;
            if (ch.px > 0 || ch.py > 0 || ch.pz > 0) {
                emit_noise(ch, -1);
            }
        }
        in_tick = false;
    };

    for (i = 0; i < n_inst; i++) {
        const Instruction &inst = src.instructions[i];
        switch (inst.kind) {
            case InstructionKind::TICK:
                flush_tick();
                out.instructions.push_back(inst);
                in_tick = true;
                tick_duration = inst.tick_duration;
                tick_busy = inst.tick_busy_mask;
                break;
            case InstructionKind::GATE: {
                out.append_gate(inst.gate);
                int32_t source = static_cast<int32_t>(out.instructions.size() - 1);
                NoiseChannel ch;
                if (gate_is_two_qubit(inst.gate.kind)) {
                    ch.kind = NoiseKind::DEPOLARIZE2;
                    ch.q0 = inst.gate.q0;
                    ch.q1 = inst.gate.q1;
                    // RB average error to total depolarizing probability,
                    // p = r * d / (d - 1) with d = 4.
                    ch.p = params.cz(inst.gate.q0, inst.gate.q1) * (4.0 / 3.0) * inv_x;
                    tick_busy |= uint64_t{1} << inst.gate.q1;
                } else {
                    ch.kind = NoiseKind::DEPOLARIZE1;
                    ch.q0 = inst.gate.q0;
                    ch.p = params.qubits.at(inst.gate.q0).sq_error * 2.0 * inv_x;
                }
                tick_busy |= uint64_t{1} << inst.gate.q0;
                if (ch.p > 0) {
                    emit_noise(ch, source);
                }
                break;
            }
            case InstructionKind::MEASURE_Z: {
                // Readout error: an X flip before a perfect measurement.
                NoiseChannel ch;
                ch.kind = NoiseKind::FLIP_X;
                ch.q0 = inst.qubit;
                ch.p = params.qubits.at(inst.qubit).ro_error * inv_x;
                int32_t source = static_cast<int32_t>(out.instructions.size() + 1);
                if (ch.p > 0) {
                    emit_noise(ch, source);
                }
                out.instructions.push_back(inst);
                tick_busy |= uint64_t{1} << inst.qubit;
                break;
            }
            case InstructionKind::RESET_Z: {
                out.instructions.push_back(inst);
                int32_t source = static_cast<int32_t>(out.instructions.size() - 1);
                // Initialization error: an imperfect readout applied to an
                // ideal ground state.
                NoiseChannel ch;
                ch.kind = NoiseKind::FLIP_X;
                ch.q0 = inst.qubit;
                ch.p = params.qubits.at(inst.qubit).ro_error * inv_x;
                if (ch.p > 0) {
                    emit_noise(ch, source);
                }
                tick_busy |= uint64_t{1} << inst.qubit;
                break;
            }
            case InstructionKind::NOISE:
                throw std::logic_error("unreachable");
        }
    }
    flush_tick();
    out.record_labels = src.record_labels;
    out.label_to_record = src.label_to_record;
    out.validate();
    return binding;
}

Circuit strip_noise(const Circuit &noisy) {
    return noisy.without_noise();
}

}  // namespace splitsim
