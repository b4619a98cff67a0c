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

#ifndef SPLITSIM_EVALUATE_HPP
#define SPLITSIM_EVALUATE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "splitsim/detectors.hpp"
#include "splitsim/matching.hpp"
#include "splitsim/shot_archive.hpp"

namespace splitsim {

enum class EvalMode : uint8_t { RAW, DECODED, POSTSELECTED };

const char *eval_mode_name(EvalMode mode);

/// Per-shot evaluation of logical observables in the three analysis modes.
///
/// raw: Pauli-frame-updated readout products. decoded: raw XOR the matched
/// logical flips (Z graph always; X graph corrections only through
/// unambiguous edge classes). postselected: raw, restricted to shots with
/// every detector at zero. State-injection runs additionally discard shots
/// with a nonzero first-cycle detector in every mode.
class Evaluator {
  public:
    Evaluator(const CompiledDetectors &compiled, size_t n_records,
              const SyndromeGraph *z_graph, const SyndromeGraph *x_graph);

    struct ShotResult {
        bool injection_ok = true;   // first-cycle postselection gate
        bool all_quiet = true;      // every detector zero
        uint32_t raw_bits = 0;      // bit per measured observable: 1 <=> -1
        uint32_t decoded_bits = 0;
        bool used_ambiguous = false;
    };

    ShotResult process_shot(const uint64_t *record_words) const;

    const std::vector<ObservableDefinition> &measured() const { return compiled_.observables; }
    const CompiledDetectors &compiled() const { return compiled_; }
    /// Observables whose X-type corrections are blocked by ambiguity.
    const std::vector<std::string> &degraded_observables() const { return degraded_; }

    /// Detector bits of one shot, in catalog order.
    std::vector<bool> detector_bits(const uint64_t *record_words) const;

  private:
    CompiledDetectors compiled_;
    DetectorMaskSet det_masks_;
    std::vector<std::vector<uint64_t>> obs_masks_;  // per measured observable
    size_t words_;
    std::optional<Matcher> z_matcher_, x_matcher_;
    std::vector<int32_t> det_to_znode_, det_to_xnode_;
    // Per measured observable: mask over elementary observables feeding it.
    std::vector<uint32_t> component_mask_;
    std::vector<std::string> degraded_;
};

struct ObservableStats {
    std::string id;
    uint64_t n_total = 0;
    uint64_t n_minus = 0;
    double mean() const;
    double std_err() const;
};

struct EvaluationSummary {
    EvalMode mode;
    uint64_t shots_in = 0;
    uint64_t shots_retained = 0;
    std::vector<ObservableStats> stats;        // per-code observables
    std::vector<ObservableStats> product_stats;  // pairwise products
    std::vector<std::string> flags;
    double retention() const {
        return shots_in ? static_cast<double>(shots_retained) / static_cast<double>(shots_in) : 0.0;
    }
    const ObservableStats &find(const std::string &id) const;
};

/// Evaluates all shots of a buffer in one mode.
EvaluationSummary evaluate_outcomes(const ShotBuffer &shots, const Evaluator &evaluator,
                                    EvalMode mode);

/// Detector matrix (catalog order) of all shots.
ShotBuffer compute_detector_matrix(const ShotBuffer &shots, const CompiledDetectors &compiled);

}  // namespace splitsim

#endif
