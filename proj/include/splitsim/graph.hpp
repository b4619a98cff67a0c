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

#ifndef SPLITSIM_GRAPH_HPP
#define SPLITSIM_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "splitsim/dem.hpp"
#include "splitsim/shot_archive.hpp"

namespace splitsim {

/// w = -log(p / (1 - p)); requires 0 < p <= 0.5.
double edge_weight(double p);

/// XOR-composition of independent flip probabilities.
inline double xor_compose(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

struct GraphEdge {
    int32_t u, v;  // node indices; -1 is the boundary node
    double p = 0;
    double weight = 0;
    uint32_t logical_mask = 0;  // bits over the elementary observable catalog
    bool ambiguous = false;

    bool is_boundary() const { return u < 0 || v < 0; }
};

struct SyndromeGraph {
    StabType type;
    std::vector<uint32_t> node_detectors;  // node index -> detector catalog index
    std::vector<std::string> node_names;
    std::vector<GraphEdge> edges;
    std::vector<std::string> reports;  // classification conflicts and drops

    int32_t node_of_detector(uint32_t det) const;

    /// JSON exchange format {nodes[], edges[{u,v,p,w,logicals[]}]} with the
    /// boundary as node id -1.
    std::string to_json() const;
    static SyndromeGraph from_json(const std::string &text,
                                   const std::vector<std::string> &logical_names);
};

/// Builds the matching graph of one type from the decomposed error model.
/// Mechanism parts become edges (same-endpoint parts merge by
/// XOR-composition); classification comes from the observable flip sets,
/// with conflicting boundary-edge classes marked ambiguous. Non-graphlike
/// parts throw unless `permissive` collects them as reports instead.
SyndromeGraph graph_from_dem(const DetectorErrorModel &dem, StabType type,
                             bool permissive = false);

struct PairEstimate {
    uint32_t i, j;  // detector-matrix column indices
    double p = 0;
    double se = 0;
    bool unstable = false;  // negative radicand or degenerate denominator
};

struct BoundaryEstimate {
    uint32_t i;
    double p = 0;
    double se = 0;
};

struct CorrelationEstimates {
    size_t n_shots = 0;
    double significance = 5.0;  // zeroing threshold in units of the standard error
    std::vector<PairEstimate> pairs;        // all i < j
    std::vector<BoundaryEstimate> boundary;

    const PairEstimate &pair(uint32_t i, uint32_t j) const;
};

/// Estimates pairwise and boundary error probabilities from detector
/// correlations:
///   p_ij = 1/2 - 1/2 sqrt(1 - 4 (<xi xj> - <xi><xj>)
///                           / (1 - 2<xi> - 2<xj> + 4<xi xj>)),
/// with boundary probabilities solved from the marginals after removing the
/// pairwise contributions under XOR-composition. Estimates whose magnitude
/// is below `significance` standard errors are zeroed.
CorrelationEstimates estimate_edge_probabilities(const ShotBuffer &detector_matrix,
                                                 double significance = 5.0);

/// Builds a matching graph from correlation estimates; edge classification
/// is inherited from a model-derived reference graph over the same nodes.
SyndromeGraph graph_from_correlations(const CorrelationEstimates &est,
                                      const SyndromeGraph &reference);

}  // namespace splitsim

#endif
