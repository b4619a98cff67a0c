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

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace splitsim {

namespace {

const QubitLayout &layout() {
    static const QubitLayout instance;
    return instance;
}

constexpr double kPi = 3.14159265358979323846;

std::string cycle_label(StabType type, int stab, int cycle) {
    return QubitLayout::stab_name(type, stab) + ":c" + std::to_string(cycle);
}

/// Emits the circuit half-block by half-block. A half-block is the
/// eight-step stabilizer measurement schedule of one type; readout (step
/// eight) overlaps the first three steps of the following half-block, which
/// the tick busy masks express.
class ScheduleEngine {
  public:
    ScheduleEngine(ScheduledCircuit &out, std::vector<uint32_t> active_data)
        : out_(out), c_(out.circuit), active_data_(std::move(active_data)) {}

    void prep(const std::map<uint32_t, std::string> &labels,
              const std::vector<uint32_t> &active_aux) {
        std::vector<uint32_t> qubits;
        for (const auto &[q, label] : labels) {
            qubits.push_back(q);
        }
        qubits.insert(qubits.end(), active_aux.begin(), active_aux.end());
        std::sort(qubits.begin(), qubits.end());
        c_.append_tick(0.0);
        for (uint32_t q : qubits) {
            c_.append_reset_z(q);
        }
        std::vector<CliffordGate> gates;
        for (const auto &[q, label] : labels) {
            auto for_qubit = cardinal_prep_gates(label, q);
            gates.insert(gates.end(), for_qubit.begin(), for_qubit.end());
        }
        if (!gates.empty()) {
            c_.append_tick(ScheduleTimes::kSingleQubit);
            for (const auto &g : gates) {
                c_.append_gate(g);
            }
        }
    }

    /// One stabilizer half-block. `stabs` are (type, index) pairs measured
    /// together; `supports` gives each one's data qubits this half.
    /// `extra_measures` are data qubits read out in parallel with the
    /// auxiliary readout (mid-circuit or final); `rotations` are basis
    /// changes placed in step seven.
    void half_block(StabType type,
                    int cycle,
                    const std::vector<std::pair<StabType, int>> &stabs,
                    const std::vector<std::pair<uint32_t, std::string>> &extra_measures,
                    const std::vector<CliffordGate> &rotations) {
        bool x_type = type == StabType::X;
        std::vector<uint32_t> auxes;
        // slot -> list of CZ pairs
        std::array<std::vector<std::pair<uint32_t, uint32_t>>, 4> slots;
        for (auto [t, idx] : stabs) {
            const auto &st = layout().stab(t, idx);
            auxes.push_back(st.auxiliary);
            auto key = std::make_pair(t, idx);
            const auto &support = out_.measurement_support.at(key);
            for (size_t k = 0; k < st.support.size(); k++) {
                uint32_t d = st.support[k];
                if (std::find(support.begin(), support.end(), d) == support.end()) {
                    continue;
                }
                slots[st.cz_slot[k]].emplace_back(st.auxiliary, d);
            }
        }

        // Step one: pi/2 rotations on auxiliaries (and data for X-type).
        tick(ScheduleTimes::kSingleQubit);
        for (uint32_t a : auxes) {
            c_.append_gate(CliffordGate::single(GateKind::SQRT_Y, a));
        }
        if (x_type) {
            for (uint32_t d : active_data_) {
                c_.append_gate(CliffordGate::single(GateKind::SQRT_Y, d));
            }
        }
        // Steps two and three: first two CZ slots.
        for (int s = 0; s < 2; s++) {
            tick(ScheduleTimes::kCz);
            for (auto [a, d] : slots[s]) {
                c_.append_gate(CliffordGate::cz(a, d));
            }
        }
        // Step four: dynamical-decoupling echoes on the data qubits. Emitted
        // as self-cancelling X pairs so the circuit algebra is untouched
        // while the qubits count as active and pick up gate noise.
        tick(ScheduleTimes::kSingleQubit);
        for (uint32_t d : active_data_) {
            c_.append_gate(CliffordGate::single(GateKind::X, d));
            c_.append_gate(CliffordGate::single(GateKind::X, d));
        }
        // Steps five and six: remaining CZ slots.
        for (int s = 2; s < 4; s++) {
            tick(ScheduleTimes::kCz);
            for (auto [a, d] : slots[s]) {
                c_.append_gate(CliffordGate::cz(a, d));
            }
        }
        // Step seven: closing rotations (plus any readout basis changes).
        tick(ScheduleTimes::kSingleQubit);
        for (uint32_t a : auxes) {
            c_.append_gate(CliffordGate::single(GateKind::SQRT_Y_DAG, a));
        }
        if (x_type) {
            for (uint32_t d : active_data_) {
                c_.append_gate(CliffordGate::single(GateKind::SQRT_Y_DAG, d));
            }
        }
        for (const auto &g : rotations) {
            c_.append_gate(g);
        }
        // Step eight: readout. The measurement pulses extend into the next
        // half-block's first three steps.
        tick(ScheduleTimes::kPad);
        pending_readout_ = 0;
        for (auto [t, idx] : stabs) {
            const auto &st = layout().stab(t, idx);
            c_.append_measure_z(st.auxiliary, cycle_label(t, idx, cycle));
            out_.aux_records[{t, idx, cycle}] = c_.record(cycle_label(t, idx, cycle));
            pending_readout_ |= uint64_t{1} << st.auxiliary;
        }
        for (const auto &[d, label] : extra_measures) {
            c_.append_measure_z(d, label);
            pending_readout_ |= uint64_t{1} << d;
        }
    }

    /// A half-period with no stabilizer measurement (Z-only protocols and
    /// the post-split idle halves); keeps the same-type cycle period fixed.
    void empty_half() {
        tick(ScheduleTimes::kSingleQubit);
        tick(ScheduleTimes::kCz);
        tick(ScheduleTimes::kCz);
        tick(ScheduleTimes::kSingleQubit);
        tick(ScheduleTimes::kCz);
        tick(ScheduleTimes::kCz);
        tick(ScheduleTimes::kSingleQubit);
        tick(ScheduleTimes::kPad);
        pending_readout_ = 0;
    }

    void set_active_data(std::vector<uint32_t> data) { active_data_ = std::move(data); }

  private:
    void tick(double duration) {
        // Readout occupancy covers the pad tick (where the measurement sits)
        // plus the next three ticks, rounded to tick boundaries.
        uint64_t busy = ticks_into_half_ < 3 ? pending_readout_ : 0;
        c_.append_tick(duration, busy);
        ticks_into_half_ = (ticks_into_half_ + 1) % 8;
    }

    ScheduledCircuit &out_;
    Circuit &c_;
    std::vector<uint32_t> active_data_;
    uint64_t pending_readout_ = 0;
    int ticks_into_half_ = 0;
};

std::map<std::pair<StabType, int>, bool> reference_from_prep(
    const std::map<uint32_t, std::string> &prep_labels,
    const std::vector<std::pair<StabType, int>> &stabs,
    const std::map<std::pair<StabType, int>, std::vector<uint32_t>> &supports) {
    std::map<std::pair<StabType, int>, bool> refs;
    for (auto key : stabs) {
        char want = key.first == StabType::X ? 'X' : 'Z';
        bool defined = true;
        bool ref = false;  // parity bit; 1 <=> stabilizer value -1
        for (uint32_t q : supports.at(key)) {
            auto it = prep_labels.find(q);
            if (it == prep_labels.end() || it->second[1] != want) {
                defined = false;
                break;
            }
            ref ^= it->second[0] == '-';
        }
        if (defined) {
            refs[key] = ref;
        }
    }
    return refs;
}

CliffordGate basis_rotation(ReadoutBasis b, uint32_t q) {
    // Measuring O requires U with U O U^dag = Z applied before the Z
    // readout; X uses sqrt(Y)^dag and Y uses sqrt(X).
    if (b == ReadoutBasis::X) {
        return CliffordGate::single(GateKind::SQRT_Y_DAG, q);
    }
    return CliffordGate::single(GateKind::SQRT_X, q);
}

std::string fin_label(uint32_t q) {
    return QubitLayout::qubit_name(q) + ":fin";
}

std::string mid_label(uint32_t q) {
    return QubitLayout::qubit_name(q) + ":mid";
}

}  // namespace

const char *protocol_kind_name(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::SURFACE_MEMORY:
            return "surface_memory";
        case ProtocolKind::REPETITION_MEMORY:
            return "repetition_memory";
        case ProtocolKind::SPLIT:
            return "split";
        case ProtocolKind::SPLIT_ARBITRARY:
            return "split_arbitrary";
        case ProtocolKind::DISTANCE_ONE:
            return "distance_one";
    }
    return "?";
}

char basis_letter(ReadoutBasis b) {
    return b == ReadoutBasis::X ? 'X' : b == ReadoutBasis::Y ? 'Y' : 'Z';
}

uint32_t ScheduledCircuit::aux_record(StabType type, int stab, int cycle) const {
    return aux_records.at({type, stab, cycle});
}

std::string ScheduledCircuit::label(StabType type, int stab, int cycle) const {
    return cycle_label(type, stab, cycle);
}

std::vector<CliffordGate> cardinal_prep_gates(const std::string &label, uint32_t qubit) {
    if (label == "+Z") {
        return {};
    }
    if (label == "-Z") {
        return {CliffordGate::single(GateKind::X, qubit)};
    }
    if (label == "+X") {
        return {CliffordGate::single(GateKind::SQRT_Y, qubit)};
    }
    if (label == "-X") {
        return {CliffordGate::single(GateKind::SQRT_Y_DAG, qubit)};
    }
    if (label == "+Y") {
        return {CliffordGate::single(GateKind::SQRT_X_DAG, qubit)};
    }
    if (label == "-Y") {
        return {CliffordGate::single(GateKind::SQRT_X, qubit)};
    }
    throw std::invalid_argument("unknown cardinal state label '" + label + "'");
}

std::optional<std::string> cardinal_label(double theta, double phi) {
    auto near = [](double a, double b) { return std::abs(a - b) < 1e-9; };
    double phi_mod = std::fmod(std::fmod(phi, 2 * kPi) + 2 * kPi, 2 * kPi);
    if (near(theta, 0)) {
        return "+Z";
    }
    if (near(theta, kPi)) {
        return "-Z";
    }
    if (near(theta, kPi / 2)) {
        if (near(phi_mod, 0)) {
            return "+X";
        }
        if (near(phi_mod, kPi / 2)) {
            return "+Y";
        }
        if (near(phi_mod, kPi)) {
            return "-X";
        }
        if (near(phi_mod, 3 * kPi / 2)) {
            return "-Y";
        }
    }
    return std::nullopt;
}

void ProtocolSpec::validate() const {
    if (kind == ProtocolKind::SPLIT || kind == ProtocolKind::SPLIT_ARBITRARY) {
        if (m < 1 || n < 1) {
            throw std::invalid_argument("split requires m >= 1 and n >= 1");
        }
    } else if (kind == ProtocolKind::DISTANCE_ONE) {
        if (m + 1 < 1 || m + 1 > 6) {
            throw std::invalid_argument("distance-one supports 1 <= m+1 <= 6 cycles");
        }
    } else if (m < 1) {
        throw std::invalid_argument("memory requires m >= 1");
    }
    if (kind == ProtocolKind::SPLIT_ARBITRARY) {
        if (theta < 0 || theta > kPi || phi < 0 || phi >= 2 * kPi) {
            throw std::invalid_argument("injection angles out of range");
        }
    }
}

std::string ProtocolSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = protocol_kind_name(kind);
    j["m"] = m;
    j["n"] = n;
    j["initial_state"] = initial_state;
    j["theta"] = theta;
    j["phi"] = phi;
    j["bases"] = std::string(1, basis_letter(basis1)) + std::string(1, basis_letter(basis2));
    return j.dump();
}

ProtocolSpec ProtocolSpec::from_json(const std::string &text) {
    auto j = nlohmann::json::parse(text);
    ProtocolSpec spec;
    std::string kind = j.at("kind");
    if (kind == "surface_memory") {
        spec.kind = ProtocolKind::SURFACE_MEMORY;
    } else if (kind == "repetition_memory") {
        spec.kind = ProtocolKind::REPETITION_MEMORY;
    } else if (kind == "split") {
        spec.kind = ProtocolKind::SPLIT;
    } else if (kind == "split_arbitrary") {
        spec.kind = ProtocolKind::SPLIT_ARBITRARY;
    } else if (kind == "distance_one") {
        spec.kind = ProtocolKind::DISTANCE_ONE;
    } else {
        throw std::invalid_argument("unknown protocol kind '" + kind + "'");
    }
    spec.m = j.at("m");
    spec.n = j.at("n");
    spec.initial_state = j.at("initial_state");
    spec.theta = j.at("theta");
    spec.phi = j.at("phi");
    std::string bases = j.at("bases");
    auto parse_basis = [](char c) {
        return c == 'X' ? ReadoutBasis::X : c == 'Y' ? ReadoutBasis::Y : ReadoutBasis::Z;
    };
    spec.basis1 = parse_basis(bases.at(0));
    spec.basis2 = parse_basis(bases.at(1));
    spec.validate();
    return spec;
}

ScheduledCircuit build_split(const ProtocolSpec &spec) {
    spec.validate();
    if (spec.kind != ProtocolKind::SPLIT && spec.kind != ProtocolKind::SPLIT_ARBITRARY) {
        throw std::invalid_argument("build_split requires a split protocol kind");
    }
    const auto &lay = layout();
    ScheduledCircuit sc;
    sc.circuit = Circuit(QubitLayout::kNumQubits);
    sc.spec = spec;
    sc.injection = spec.kind == ProtocolKind::SPLIT_ARBITRARY;
    sc.x_cycles = spec.m + 1;
    sc.z_cycles = spec.m + spec.n;
    sc.split_cycle = spec.m + 1;

    std::vector<std::pair<StabType, int>> x_stabs, z_stabs;
    for (int i = 1; i <= 4; i++) {
        x_stabs.emplace_back(StabType::X, i);
        z_stabs.emplace_back(StabType::Z, i);
        sc.active_stabs.emplace_back(StabType::X, i);
        sc.active_stabs.emplace_back(StabType::Z, i);
    }
    for (auto key : x_stabs) {
        sc.measurement_support[key] = lay.stab(key.first, key.second).support;
        sc.final_support[key] = {};
    }
    for (auto key : z_stabs) {
        sc.measurement_support[key] = lay.stab(key.first, key.second).support;
        sc.final_support[key] = lay.stab(key.first, key.second).post_split_support;
    }

    // Preparation pattern.
    std::map<uint32_t, std::string> prep;
    if (sc.injection) {
        auto label = cardinal_label(spec.theta, spec.phi);
        if (!label) {
            throw std::invalid_argument(
                "build_split: non-cardinal injection angles have no Clifford preparation; "
                "evaluate them as linear combinations over cardinal runs");
        }
        prep[QubitLayout::D(5)] = *label;
        for (uint32_t q : {QubitLayout::D(2), QubitLayout::D(3), QubitLayout::D(7), QubitLayout::D(8)}) {
            prep[q] = "+X";
        }
        for (uint32_t q : {QubitLayout::D(1), QubitLayout::D(4), QubitLayout::D(6), QubitLayout::D(9)}) {
            prep[q] = "+Z";
        }
    } else {
        if (spec.initial_state != "+Z" && spec.initial_state != "-Z") {
            throw std::invalid_argument("split supports fault-tolerant preparation of +Z/-Z only");
        }
        bool flip = spec.initial_state == "-Z";
        for (int j = 1; j <= 9; j++) {
            bool middle = j == 2 || j == 5 || j == 8;
            prep[QubitLayout::D(j)] = (flip && middle) ? "-Z" : "+Z";
        }
    }
    sc.prep_reference = reference_from_prep(prep, sc.active_stabs, sc.measurement_support);

    std::vector<uint32_t> all_data, aux;
    for (int j = 1; j <= 9; j++) {
        all_data.push_back(QubitLayout::D(j));
    }
    for (int i = 1; i <= 4; i++) {
        aux.push_back(QubitLayout::XA(i));
        aux.push_back(QubitLayout::ZA(i));
    }

    ScheduleEngine engine(sc, all_data);
    engine.prep(prep, aux);

    // Pre-split: m+1 X-type cycles interleaved with m Z-type cycles.
    for (int k = 1; k <= spec.m; k++) {
        engine.half_block(StabType::X, k, x_stabs, {}, {});
        engine.half_block(StabType::Z, k, z_stabs, {}, {});
    }
    // Final X cycle; the middle column is read out with its auxiliaries.
    std::vector<std::pair<uint32_t, std::string>> mid;
    for (uint32_t q : QubitLayout::middle_column()) {
        mid.emplace_back(q, mid_label(q));
    }
    engine.half_block(StabType::X, spec.m + 1, x_stabs, mid, {});
    for (uint32_t q : QubitLayout::middle_column()) {
        sc.mid_records[q] = sc.circuit.record(mid_label(q));
    }

    // Post-split Z-only cycles on the repetition codes.
    std::vector<uint32_t> post_data;
    for (uint32_t q : QubitLayout::code1_data()) {
        post_data.push_back(q);
    }
    for (uint32_t q : QubitLayout::code2_data()) {
        post_data.push_back(q);
    }
    std::sort(post_data.begin(), post_data.end());
    engine.set_active_data(post_data);
    for (auto key : z_stabs) {
        sc.measurement_support[key] = lay.stab(key.first, key.second).post_split_support;
    }

    for (int j = 1; j <= spec.n; j++) {
        int cycle = spec.m + j;
        bool last = j == spec.n;
        std::vector<std::pair<uint32_t, std::string>> finals;
        std::vector<CliffordGate> rotations;
        if (last) {
            for (uint32_t q : post_data) {
                bool code1 = q == QubitLayout::D(1) || q == QubitLayout::D(4) ||
                             q == QubitLayout::D(7);
                ReadoutBasis code_basis = code1 ? spec.basis1 : spec.basis2;
                // A code read in Y measures only its middle-row qubit in Y
                // and the rest in X (Y_Lc = X Y X on the column).
                ReadoutBasis b = code_basis;
                if (code_basis == ReadoutBasis::Y &&
                    q != QubitLayout::D(4) && q != QubitLayout::D(6)) {
                    b = ReadoutBasis::X;
                }
                sc.final_basis[q] = b;
                finals.emplace_back(q, fin_label(q));
                if (b != ReadoutBasis::Z) {
                    rotations.push_back(basis_rotation(b, q));
                }
            }
        }
        engine.half_block(StabType::Z, cycle, z_stabs, finals, rotations);
        if (last) {
            for (uint32_t q : post_data) {
                sc.final_records[q] = sc.circuit.record(fin_label(q));
            }
        } else {
            engine.empty_half();
        }
    }
    sc.circuit.validate();
    return sc;
}

ScheduledCircuit build_memory(ProtocolKind kind, int m, ReadoutBasis basis,
                              const std::string &initial_state) {
    if (kind != ProtocolKind::SURFACE_MEMORY && kind != ProtocolKind::REPETITION_MEMORY) {
        throw std::invalid_argument("build_memory requires a memory protocol kind");
    }
    if (m < 1) {
        throw std::invalid_argument("memory requires m >= 1");
    }
    const auto &lay = layout();
    ScheduledCircuit sc;
    sc.circuit = Circuit(QubitLayout::kNumQubits);
    sc.spec.kind = kind;
    sc.spec.m = m;
    sc.spec.n = 0;
    sc.spec.initial_state = initial_state;
    sc.spec.basis1 = sc.spec.basis2 = basis;

    bool surface = kind == ProtocolKind::SURFACE_MEMORY;
    bool injection = initial_state.rfind("inj:", 0) == 0;
    sc.injection = injection;

    std::vector<std::pair<StabType, int>> x_stabs, z_stabs;
    for (int i = 1; i <= 4; i++) {
        if (surface) {
            x_stabs.emplace_back(StabType::X, i);
            sc.active_stabs.emplace_back(StabType::X, i);
        }
        z_stabs.emplace_back(StabType::Z, i);
        sc.active_stabs.emplace_back(StabType::Z, i);
    }
    std::vector<uint32_t> data, aux;
    if (surface) {
        for (int j = 1; j <= 9; j++) {
            data.push_back(QubitLayout::D(j));
        }
    } else {
        for (int j : {1, 3, 4, 6, 7, 9}) {
            data.push_back(QubitLayout::D(j));
        }
    }
    for (auto key : x_stabs) {
        sc.measurement_support[key] = lay.stab(key.first, key.second).support;
        sc.final_support[key] = lay.stab(key.first, key.second).support;
    }
    for (auto key : z_stabs) {
        const auto &st = lay.stab(key.first, key.second);
        sc.measurement_support[key] = surface ? st.support : st.post_split_support;
        sc.final_support[key] = sc.measurement_support[key];
        aux.push_back(st.auxiliary);
    }
    for (auto key : x_stabs) {
        aux.push_back(lay.stab(key.first, key.second).auxiliary);
    }

    // Preparation pattern.
    std::map<uint32_t, std::string> prep;
    if (injection) {
        std::string label = initial_state.substr(4);
        prep[QubitLayout::D(5)] = label;
        for (uint32_t q : {QubitLayout::D(2), QubitLayout::D(3), QubitLayout::D(7), QubitLayout::D(8)}) {
            prep[q] = "+X";
        }
        for (uint32_t q : {QubitLayout::D(1), QubitLayout::D(4), QubitLayout::D(6), QubitLayout::D(9)}) {
            prep[q] = "+Z";
        }
    } else if (surface) {
        if (initial_state.size() != 2 || (initial_state[1] != 'Z' && initial_state[1] != 'X')) {
            throw std::invalid_argument("surface memory initial state must be +Z/-Z/+X/-X");
        }
        bool flip = initial_state[0] == '-';
        char prep_basis = initial_state[1];
        for (int j = 1; j <= 9; j++) {
            bool on_logical = prep_basis == 'Z' ? (j == 2 || j == 5 || j == 8)   // X_L flip
                                                : (j == 4 || j == 5 || j == 6);  // Z_L flip
            std::string base = prep_basis == 'Z' ? "+Z" : "+X";
            std::string flipped = prep_basis == 'Z' ? "-Z" : "-X";
            prep[QubitLayout::D(j)] = (flip && on_logical) ? flipped : base;
        }
    } else {
        if (initial_state.size() != 2 ||
            (initial_state[0] != '+' && initial_state[0] != '-') ||
            (initial_state[1] != '+' && initial_state[1] != '-')) {
            throw std::invalid_argument("repetition memory initial state must be ++/+-/-+/--");
        }
        bool flip1 = initial_state[0] == '-';
        bool flip2 = initial_state[1] == '-';
        for (int j : {1, 3, 4, 6, 7, 9}) {
            bool code1 = j == 1 || j == 4 || j == 7;
            bool flip = code1 ? flip1 : flip2;
            std::string label;
            switch (basis) {
                case ReadoutBasis::Z:
                    // X_Lc flips every qubit of the code.
                    label = flip ? "-Z" : "+Z";
                    break;
                case ReadoutBasis::X:
                    // Z_Lc flips only the middle-row qubit.
                    label = (flip && (j == 4 || j == 6)) ? "-X" : "+X";
                    break;
                case ReadoutBasis::Y:
                    if (j == 4 || j == 6) {
                        label = flip ? "-Y" : "+Y";
                    } else {
                        label = "+X";
                    }
                    break;
            }
            prep[QubitLayout::D(j)] = label;
        }
    }
    sc.prep_reference = reference_from_prep(prep, sc.active_stabs, sc.measurement_support);

    ScheduleEngine engine(sc, data);
    engine.prep(prep, aux);

    // Final readout basis per data qubit.
    auto final_basis_of = [&](uint32_t q) -> ReadoutBasis {
        if (surface) {
            if (basis == ReadoutBasis::Y) {
                // Code-deformation readout: weight-two X support in X,
                // weight-two Z support in Z, D5 in Y.
                if (q == QubitLayout::D(5)) {
                    return ReadoutBasis::Y;
                }
                if (q == QubitLayout::D(2) || q == QubitLayout::D(3) ||
                    q == QubitLayout::D(7) || q == QubitLayout::D(8)) {
                    return ReadoutBasis::X;
                }
                return ReadoutBasis::Z;
            }
            return basis;
        }
        if (basis == ReadoutBasis::Y) {
            // Middle row in Y, the rest in X.
            return (q == QubitLayout::D(4) || q == QubitLayout::D(6)) ? ReadoutBasis::Y
                                                                      : ReadoutBasis::X;
        }
        return basis;
    };

    sc.x_cycles = surface ? m : 0;
    sc.z_cycles = m;
    bool x_last = surface && basis == ReadoutBasis::X;

    for (int k = 1; k <= m; k++) {
        bool last = k == m;
        std::vector<std::pair<uint32_t, std::string>> finals;
        std::vector<CliffordGate> rotations;
        if (last) {
            for (uint32_t q : data) {
                ReadoutBasis b = final_basis_of(q);
                sc.final_basis[q] = b;
                finals.emplace_back(q, fin_label(q));
                if (b != ReadoutBasis::Z) {
                    rotations.push_back(basis_rotation(b, q));
                }
            }
        }
        if (surface) {
            StabType first = x_last ? StabType::Z : StabType::X;
            StabType second = x_last ? StabType::X : StabType::Z;
            const auto &first_stabs = x_last ? z_stabs : x_stabs;
            const auto &second_stabs = x_last ? x_stabs : z_stabs;
            engine.half_block(first, k, first_stabs, {}, {});
            engine.half_block(second, k, second_stabs, last ? finals : decltype(finals){},
                              last ? rotations : decltype(rotations){});
        } else {
            engine.half_block(StabType::Z, k, z_stabs, last ? finals : decltype(finals){},
                              last ? rotations : decltype(rotations){});
            if (!last) {
                engine.empty_half();
            }
        }
    }
    for (uint32_t q : data) {
        sc.final_records[q] = sc.circuit.record(fin_label(q));
    }
    sc.circuit.validate();
    return sc;
}

ScheduledCircuit build_distance_one(int m, ReadoutBasis basis1, ReadoutBasis basis2) {
    if (m + 1 < 1 || m + 1 > 6) {
        throw std::invalid_argument("distance-one supports 1 <= m+1 <= 6 cycles");
    }
    const auto &lay = layout();
    ScheduledCircuit sc;
    sc.circuit = Circuit(QubitLayout::kNumQubits);
    sc.spec.kind = ProtocolKind::DISTANCE_ONE;
    sc.spec.m = m;
    sc.spec.n = 0;
    sc.spec.basis1 = basis1;
    sc.spec.basis2 = basis2;
    sc.x_cycles = m + 1;
    sc.z_cycles = 0;

    std::vector<std::pair<StabType, int>> stabs = {{StabType::X, 3}, {StabType::X, 4}};
    sc.active_stabs = stabs;
    // X3 is restricted to its {D8, D9} corner; X4 is {D7, D8} natively.
    sc.measurement_support[{StabType::X, 3}] = {QubitLayout::D(8), QubitLayout::D(9)};
    sc.measurement_support[{StabType::X, 4}] = lay.stab(StabType::X, 4).support;
    sc.final_support[{StabType::X, 3}] = {};
    sc.final_support[{StabType::X, 4}] = {};

    std::vector<uint32_t> data = {QubitLayout::D(7), QubitLayout::D(8), QubitLayout::D(9)};
    std::vector<uint32_t> aux = {QubitLayout::XA(3), QubitLayout::XA(4)};
    std::map<uint32_t, std::string> prep;
    for (uint32_t q : data) {
        prep[q] = "+Z";
    }
    sc.prep_reference = reference_from_prep(prep, stabs, sc.measurement_support);

    ScheduleEngine engine(sc, data);
    engine.prep(prep, aux);

    for (int k = 1; k <= m + 1; k++) {
        bool last = k == m + 1;
        std::vector<std::pair<uint32_t, std::string>> extra;
        std::vector<CliffordGate> rotations;
        if (last) {
            extra.emplace_back(QubitLayout::D(8), mid_label(QubitLayout::D(8)));
            sc.final_basis[QubitLayout::D(7)] = basis1;
            sc.final_basis[QubitLayout::D(9)] = basis2;
            extra.emplace_back(QubitLayout::D(7), fin_label(QubitLayout::D(7)));
            extra.emplace_back(QubitLayout::D(9), fin_label(QubitLayout::D(9)));
            if (basis1 != ReadoutBasis::Z) {
                rotations.push_back(basis_rotation(basis1, QubitLayout::D(7)));
            }
            if (basis2 != ReadoutBasis::Z) {
                rotations.push_back(basis_rotation(basis2, QubitLayout::D(9)));
            }
        }
        engine.half_block(StabType::X, k, stabs, extra, rotations);
        if (!last) {
            engine.empty_half();
        }
    }
    sc.mid_records[QubitLayout::D(8)] = sc.circuit.record(mid_label(QubitLayout::D(8)));
    sc.final_records[QubitLayout::D(7)] = sc.circuit.record(fin_label(QubitLayout::D(7)));
    sc.final_records[QubitLayout::D(9)] = sc.circuit.record(fin_label(QubitLayout::D(9)));
    sc.circuit.validate();
    return sc;
}

int logical_observable_value(const ObservableDefinition &obs, const std::vector<bool> &record) {
    bool bit = false;
    for (uint32_t r : obs.parity_records) {
        bit ^= record.at(r);
    }
    for (uint32_t r : obs.frame_records) {
        bit ^= record.at(r);
    }
    return bit ? -1 : +1;
}

std::map<std::string, int> logical_observable_values(const CompiledDetectors &compiled,
                                                     const std::vector<bool> &record) {
    std::map<std::string, int> out;
    for (const auto &obs : compiled.observables) {
        if (obs.parity_records.empty()) {
            continue;  // not measured in this basis configuration
        }
        out[obs.id] = logical_observable_value(obs, record);
    }
    return out;
}

}  // namespace splitsim
