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

#ifndef SPLITSIM_MATCHING_HPP
#define SPLITSIM_MATCHING_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "splitsim/graph.hpp"

namespace splitsim {

struct WeightedEdge {
    int u, v;
    double weight;
};

/// Maximum-weight matching on a general graph (primal-dual method with
/// blossom shrinking, Galil's formulation). Returns mate[v] (-1 unmatched).
/// With `max_cardinality`, cardinality takes precedence over weight.
std::vector<int> max_weight_matching(int n_vertices, const std::vector<WeightedEdge> &edges,
                                     bool max_cardinality);

struct MatchingResult {
    // Matched pairs as detector catalog indices; -1 stands for the boundary.
    std::vector<std::pair<int32_t, int32_t>> pairs;
    double total_weight = 0;
    uint32_t logical_flips = 0;  // XOR of edge classes along matched paths
    bool used_ambiguous = false;
};

/// Per-graph decoder: precomputes all-pairs shortest paths (with the
/// boundary as an extra node) and answers minimum-weight perfect matchings
/// of fired detector sets. Equal-weight path ties break lexicographically
/// on the sorted edge index lists, making decoding deterministic.
class Matcher {
  public:
    explicit Matcher(const SyndromeGraph &graph);

    /// `fired` holds node indices of the graph. Throws std::runtime_error
    /// when no perfect matching exists (odd component with no boundary).
    MatchingResult decode_mwpm(const std::vector<uint32_t> &fired) const;

    /// Exhaustive minimum-weight pairing oracle; requires <= 14 fired nodes.
    MatchingResult decode_exhaustive(const std::vector<uint32_t> &fired) const;

    const SyndromeGraph &graph() const { return graph_; }

  private:
    struct PathInfo {
        double dist;
        uint32_t logical_mask;
        bool ambiguous;
        std::vector<uint32_t> edge_ids;  // sorted, for tie-breaking
    };

    MatchingResult assemble(const std::vector<uint32_t> &fired,
                            const std::vector<std::pair<int, int>> &pairing) const;
    const PathInfo &path(int32_t u, int32_t v) const;  // -1 = boundary

    SyndromeGraph graph_;
    size_t n_nodes_ = 0;  // excluding boundary
    // (n_nodes+1) x (n_nodes+1) table; index n_nodes_ is the boundary.
    std::vector<PathInfo> paths_;
};

}  // namespace splitsim

#endif
