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

#include "splitsim/evaluate.hpp"

#include <cmath>
#include <stdexcept>

namespace splitsim {

const char *eval_mode_name(EvalMode mode) {
    switch (mode) {
        case EvalMode::RAW:
            return "raw";
        case EvalMode::DECODED:
            return "decoded";
        case EvalMode::POSTSELECTED:
            return "postselected";
    }
    return "?";
}

Evaluator::Evaluator(const CompiledDetectors &compiled, size_t n_records,
                     const SyndromeGraph *z_graph, const SyndromeGraph *x_graph)
    : compiled_(compiled),
      det_masks_(compiled, n_records),
      words_((n_records + 63) / 64) {
    for (const auto &obs : compiled_.observables) {
        std::vector<uint64_t> mask(words_, 0);
        for (uint32_t r : obs.parity_records) {
            mask[r >> 6] ^= uint64_t{1} << (r & 63);
        }
        for (uint32_t r : obs.frame_records) {
            mask[r >> 6] ^= uint64_t{1} << (r & 63);
        }
        obs_masks_.push_back(std::move(mask));

        uint32_t components = 0;
        for (uint32_t e = 0; e < compiled_.elementary.size(); e++) {
            const auto &el = compiled_.elementary[e];
            if (el.code != obs.code) {
                continue;
            }
            if (obs.basis == 'Z' && el.basis == 'Z') {
                components |= 1u << e;
            } else if (obs.basis == 'X' && el.basis == 'X') {
                components |= 1u << e;
            } else if (obs.basis == 'Y') {
                components |= 1u << e;  // Y = Z- and X-type flips combined
            }
        }
        component_mask_.push_back(components);
    }

    det_to_znode_.assign(compiled_.detectors.size(), -1);
    det_to_xnode_.assign(compiled_.detectors.size(), -1);
    if (z_graph) {
        z_matcher_.emplace(*z_graph);
        for (size_t n = 0; n < z_graph->node_detectors.size(); n++) {
            det_to_znode_[z_graph->node_detectors[n]] = static_cast<int32_t>(n);
        }
    }
    if (x_graph) {
        x_matcher_.emplace(*x_graph);
        for (size_t n = 0; n < x_graph->node_detectors.size(); n++) {
            det_to_xnode_[x_graph->node_detectors[n]] = static_cast<int32_t>(n);
        }
        // An observable with X components that no unambiguous edge can flip
        // degrades to raw for the X-graph part.
        for (size_t o = 0; o < compiled_.observables.size(); o++) {
            const auto &obs = compiled_.observables[o];
            if (obs.basis == 'Z') {
                continue;
            }
            uint32_t x_components = 0;
            for (uint32_t e = 0; e < compiled_.elementary.size(); e++) {
                if (compiled_.elementary[e].basis == 'X' && (component_mask_[o] >> e) & 1) {
                    x_components |= 1u << e;
                }
            }
            bool correctable = false;
            bool ambiguous_present = false;
            for (const auto &edge : x_graph->edges) {
                if (edge.ambiguous) {
                    ambiguous_present = true;
                } else if (__builtin_popcount(edge.logical_mask & x_components) % 2 == 1) {
                    correctable = true;
                }
            }
            if (!correctable && ambiguous_present) {
                degraded_.push_back(obs.id);
            }
        }
    }
}

std::vector<bool> Evaluator::detector_bits(const uint64_t *record_words) const {
    std::vector<bool> bits(compiled_.detectors.size());
    for (size_t d = 0; d < bits.size(); d++) {
        bits[d] = det_masks_.eval(record_words, d);
    }
    return bits;
}

Evaluator::ShotResult Evaluator::process_shot(const uint64_t *record_words) const {
    ShotResult result;
    std::vector<uint32_t> z_fired, x_fired;
    for (size_t d = 0; d < compiled_.detectors.size(); d++) {
        if (!det_masks_.eval(record_words, d)) {
            continue;
        }
        result.all_quiet = false;
        const auto &det = compiled_.detectors[d];
        if (det.injection_postselect) {
            result.injection_ok = false;
        }
        if (det_to_znode_[d] >= 0) {
            z_fired.push_back(static_cast<uint32_t>(det_to_znode_[d]));
        }
        if (det_to_xnode_[d] >= 0) {
            x_fired.push_back(static_cast<uint32_t>(det_to_xnode_[d]));
        }
    }

    for (size_t o = 0; o < obs_masks_.size(); o++) {
        uint64_t acc = 0;
        for (size_t w = 0; w < words_; w++) {
            acc ^= record_words[w] & obs_masks_[o][w];
        }
        if (__builtin_popcountll(acc) & 1) {
            result.raw_bits |= 1u << o;
        }
    }
    result.decoded_bits = result.raw_bits;

    uint32_t elementary_flips = 0;
    if (z_matcher_ && !z_fired.empty()) {
        auto match = z_matcher_->decode_mwpm(z_fired);
        elementary_flips ^= match.logical_flips;
        result.used_ambiguous |= match.used_ambiguous;
    }
    if (x_matcher_ && !x_fired.empty()) {
        auto match = x_matcher_->decode_mwpm(x_fired);
        elementary_flips ^= match.logical_flips;
        result.used_ambiguous |= match.used_ambiguous;
    }
    if (elementary_flips) {
        for (size_t o = 0; o < component_mask_.size(); o++) {
            if (__builtin_popcount(elementary_flips & component_mask_[o]) & 1) {
                result.decoded_bits ^= 1u << o;
            }
        }
    }
    return result;
}

double ObservableStats::mean() const {
    if (n_total == 0) {
        return 0;
    }
    return 1.0 - 2.0 * static_cast<double>(n_minus) / static_cast<double>(n_total);
}

double ObservableStats::std_err() const {
    if (n_total == 0) {
        return 0;
    }
    double p = static_cast<double>(n_minus) / static_cast<double>(n_total);
    return 2.0 * std::sqrt(std::max(p * (1 - p), 1e-300) / static_cast<double>(n_total));
}

const ObservableStats &EvaluationSummary::find(const std::string &id) const {
    for (const auto &s : stats) {
        if (s.id == id) {
            return s;
        }
    }
    for (const auto &s : product_stats) {
        if (s.id == id) {
            return s;
        }
    }
    throw std::invalid_argument("no stats for observable " + id);
}

EvaluationSummary evaluate_outcomes(const ShotBuffer &shots, const Evaluator &evaluator,
                                    EvalMode mode) {
    EvaluationSummary summary;
    summary.mode = mode;
    const auto &measured = evaluator.measured();
    for (const auto &obs : measured) {
        summary.stats.push_back({obs.id, 0, 0});
    }
    bool pair_product = measured.size() == 2;
    if (pair_product) {
        summary.product_stats.push_back({measured[0].id + measured[1].id, 0, 0});
    }
    for (size_t s = 0; s < shots.n_shots; s++) {
        auto r = evaluator.process_shot(shots.row(s));
        summary.shots_in++;
        if (!r.injection_ok) {
            continue;
        }
        if (mode == EvalMode::POSTSELECTED && !r.all_quiet) {
            continue;
        }
        summary.shots_retained++;
        uint32_t bits = mode == EvalMode::DECODED ? r.decoded_bits : r.raw_bits;
        for (size_t o = 0; o < measured.size(); o++) {
            summary.stats[o].n_total++;
            summary.stats[o].n_minus += (bits >> o) & 1;
        }
        if (pair_product) {
            summary.product_stats[0].n_total++;
            summary.product_stats[0].n_minus += ((bits >> 0) ^ (bits >> 1)) & 1;
        }
    }
    if (mode == EvalMode::DECODED) {
        for (const auto &id : evaluator.degraded_observables()) {
            summary.flags.push_back(id + ": only ambiguous X-graph corrections; raw value used");
        }
    }
    return summary;
}

ShotBuffer compute_detector_matrix(const ShotBuffer &shots, const CompiledDetectors &compiled) {
    DetectorMaskSet masks(compiled, shots.n_columns);
    ShotBuffer out(shots.n_shots, compiled.detectors.size());
    for (size_t s = 0; s < shots.n_shots; s++) {
        const uint64_t *row = shots.row(s);
        for (size_t d = 0; d < compiled.detectors.size(); d++) {
            if (masks.eval(row, d)) {
                out.set(s, d, true);
            }
        }
    }
    return out;
}

}  // namespace splitsim
