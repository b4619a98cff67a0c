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

#include "splitsim/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace splitsim {

double edge_weight(double p) {
    if (!(p > 0.0) || p > 0.5) {
        throw std::invalid_argument("edge_weight requires 0 < p <= 0.5");
    }
    return -std::log(p / (1.0 - p));
}

int32_t SyndromeGraph::node_of_detector(uint32_t det) const {
    for (size_t k = 0; k < node_detectors.size(); k++) {
        if (node_detectors[k] == det) {
            return static_cast<int32_t>(k);
        }
    }
    return -1;
}

std::string SyndromeGraph::to_json() const {
    nlohmann::json j;
    j["type"] = type == StabType::Z ? "Z" : "X";
    j["nodes"] = node_names;
    j["edges"] = nlohmann::json::array();
    for (const auto &e : edges) {
        nlohmann::json je;
        je["u"] = e.u;
        je["v"] = e.v;
        je["p"] = e.p;
        je["w"] = e.weight;
        std::vector<int> logicals;
        for (int b = 0; b < 32; b++) {
            if ((e.logical_mask >> b) & 1) {
                logicals.push_back(b);
            }
        }
        je["logicals"] = logicals;
        je["ambiguous"] = e.ambiguous;
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

SyndromeGraph SyndromeGraph::from_json(const std::string &text,
                                       const std::vector<std::string> &logical_names) {
    (void)logical_names;
    auto j = nlohmann::json::parse(text);
    SyndromeGraph g;
    g.type = j.at("type") == "Z" ? StabType::Z : StabType::X;
    g.node_names = j.at("nodes").get<std::vector<std::string>>();
    g.node_detectors.resize(g.node_names.size());
    for (size_t k = 0; k < g.node_detectors.size(); k++) {
        g.node_detectors[k] = static_cast<uint32_t>(k);
    }
    for (const auto &je : j.at("edges")) {
        GraphEdge e;
        e.u = je.at("u");
        e.v = je.at("v");
        e.p = je.at("p");
        e.weight = je.at("w");
        for (int b : je.at("logicals").get<std::vector<int>>()) {
            e.logical_mask |= 1u << b;
        }
        e.ambiguous = je.value("ambiguous", false);
        g.edges.push_back(e);
    }
    return g;
}

SyndromeGraph graph_from_dem(const DetectorErrorModel &dem, StabType type, bool permissive) {
    SyndromeGraph g;
    g.type = type;
    std::map<uint32_t, int32_t> det_to_node;
    for (uint32_t d = 0; d < dem.detectors.size(); d++) {
        const auto &det = dem.detectors[d];
        if (det.type != type || det.injection_postselect) {
            continue;  // App. G first-cycle detectors gate postselection only
        }
        det_to_node[d] = static_cast<int32_t>(g.node_detectors.size());
        g.node_detectors.push_back(d);
        g.node_names.push_back(det.id);
    }

    struct Accum {
        double p = 0;
        bool have_class = false;
        uint32_t logical_mask = 0;
        bool ambiguous = false;
    };
    std::map<std::pair<int32_t, int32_t>, Accum> accum;

    for (const auto &mech : dem.mechanisms) {
        const auto &dets = type == StabType::Z ? mech.z_detectors : mech.x_detectors;
        const auto &obs = type == StabType::Z ? mech.z_observables : mech.x_observables;
        std::vector<int32_t> nodes;
        for (uint32_t d : dets) {
            auto it = det_to_node.find(d);
            if (it != det_to_node.end()) {
                nodes.push_back(it->second);
            }
        }
        uint32_t mask = 0;
        for (uint32_t o : obs) {
            mask |= 1u << o;
        }
        if (nodes.empty()) {
            if (mask != 0) {
                std::ostringstream ss;
                ss << "undetectable " << (type == StabType::Z ? "Z" : "X")
                   << "-part with observable flips (p=" << mech.probability << ")";
                g.reports.push_back(ss.str());
            }
            continue;
        }
        if (nodes.size() > 2) {
            std::ostringstream ss;
            ss << "non-graphlike " << (type == StabType::Z ? "Z" : "X") << "-part flipping "
               << nodes.size() << " detectors (p=" << mech.probability << ")";
            if (!permissive) {
                throw std::runtime_error(ss.str());
            }
            g.reports.push_back(ss.str());
            continue;
        }
        int32_t u = nodes[0];
        int32_t v = nodes.size() == 2 ? nodes[1] : -1;
        if (v >= 0 && v < u) {
            std::swap(u, v);
        }
        auto key = std::make_pair(std::min(u, v), std::max(u, v));
        Accum &a = accum[key];
        a.p = xor_compose(a.p, mech.probability);
        if (!a.have_class) {
            a.have_class = true;
            a.logical_mask = mask;
        } else if (a.logical_mask != mask) {
            bool boundary = key.first < 0;
            if (boundary) {
                // Multiple errors with different logical effects share this
                // boundary edge; no correction can be inferred from it.
                a.ambiguous = true;
            } else {
                std::ostringstream ss;
                ss << "conflicting logical classes on bulk edge (" << key.first << ","
                   << key.second << ")";
                if (!permissive) {
                    throw std::runtime_error(ss.str());
                }
                a.ambiguous = true;
                g.reports.push_back(ss.str());
            }
        }
    }

    for (const auto &[key, a] : accum) {
        if (a.p <= 0) {
            continue;
        }
        GraphEdge e;
        e.u = key.first;
        e.v = key.second;
        e.p = std::min(a.p, 0.5);
        e.weight = edge_weight(e.p);
        e.logical_mask = a.ambiguous ? 0 : a.logical_mask;
        e.ambiguous = a.ambiguous;
        g.edges.push_back(e);
    }
    return g;
}

const PairEstimate &CorrelationEstimates::pair(uint32_t i, uint32_t j) const {
    if (i > j) {
        std::swap(i, j);
    }
    for (const auto &pe : pairs) {
        if (pe.i == i && pe.j == j) {
            return pe;
        }
    }
    throw std::invalid_argument("no such pair estimate");
}

namespace {

double pair_probability(double mi, double mj, double mij, bool *unstable) {
    double num = mij - mi * mj;
    double den = 1 - 2 * mi - 2 * mj + 4 * mij;
    if (std::abs(den) < 1e-12) {
        *unstable = true;
        return 0;
    }
    double radicand = 1 - 4 * num / den;
    if (radicand < 0) {
        *unstable = true;
        return 0;
    }
    return 0.5 - 0.5 * std::sqrt(radicand);
}

}  // namespace

CorrelationEstimates estimate_edge_probabilities(const ShotBuffer &det, double significance) {
    size_t n = det.n_columns;
    size_t shots = det.n_shots;
    if (shots < 10000) {
        throw std::invalid_argument("correlation estimation needs at least 1e4 shots");
    }
    std::vector<uint64_t> singles(n, 0);
    std::vector<uint64_t> joints(n * n, 0);
    std::vector<uint32_t> fired;
    for (size_t s = 0; s < shots; s++) {
        fired.clear();
        const uint64_t *row = det.row(s);
        for (size_t w = 0; w < det.words_per_shot; w++) {
            uint64_t bits = row[w];
            while (bits) {
                uint32_t b = static_cast<uint32_t>(__builtin_ctzll(bits));
                bits &= bits - 1;
                fired.push_back(static_cast<uint32_t>(w * 64 + b));
            }
        }
        for (size_t a = 0; a < fired.size(); a++) {
            singles[fired[a]]++;
            for (size_t b = a + 1; b < fired.size(); b++) {
                joints[fired[a] * n + fired[b]]++;
            }
        }
    }

    CorrelationEstimates est;
    est.n_shots = shots;
    est.significance = significance;
    double inv = 1.0 / static_cast<double>(shots);

    for (uint32_t i = 0; i < n; i++) {
        for (uint32_t j = i + 1; j < n; j++) {
            double mi = singles[i] * inv;
            double mj = singles[j] * inv;
            double mij = joints[i * n + j] * inv;
            PairEstimate pe;
            pe.i = i;
            pe.j = j;
            pe.p = pair_probability(mi, mj, mij, &pe.unstable);

            // Delta-method standard error with a numeric gradient over the
            // three moments.
            double var_mi = mi * (1 - mi) * inv;
            double var_mj = mj * (1 - mj) * inv;
            double var_mij = mij * (1 - mij) * inv;
            double cov_ij = (mij - mi * mj) * inv;
            double cov_i_ij = mij * (1 - mi) * inv;
            double cov_j_ij = mij * (1 - mj) * inv;
            double h = 1e-7;
            bool scratch = false;
            double gi =
                (pair_probability(mi + h, mj, mij, &scratch) - pair_probability(mi - h, mj, mij, &scratch)) /
                (2 * h);
            double gj =
                (pair_probability(mi, mj + h, mij, &scratch) - pair_probability(mi, mj - h, mij, &scratch)) /
                (2 * h);
            double gij =
                (pair_probability(mi, mj, mij + h, &scratch) - pair_probability(mi, mj, mij - h, &scratch)) /
                (2 * h);
            double var = gi * gi * var_mi + gj * gj * var_mj + gij * gij * var_mij +
                         2 * gi * gj * cov_ij + 2 * gi * gij * cov_i_ij + 2 * gj * gij * cov_j_ij;
            pe.se = var > 0 ? std::sqrt(var) : inv;
            if (pe.se <= 0) {
                pe.se = inv;
            }
            if (!pe.unstable && std::abs(pe.p) <= significance * pe.se) {
                pe.p = 0;  // below the significance threshold
            }
            est.pairs.push_back(pe);
        }
    }

    // Boundary probabilities from the marginals, removing pairwise
    // contributions under XOR-composition.
    for (uint32_t i = 0; i < n; i++) {
        double mi = singles[i] * inv;
        double composed = 0;
        for (const auto &pe : est.pairs) {
            if ((pe.i == i || pe.j == i) && pe.p > 0) {
                composed = xor_compose(composed, pe.p);
            }
        }
        BoundaryEstimate be;
        be.i = i;
        double den = 1 - 2 * composed;
        be.p = std::abs(den) < 1e-12 ? 0 : (mi - composed) / den;
        be.se = std::sqrt(std::max(mi * (1 - mi) * inv, inv * inv)) / std::max(std::abs(den), 1e-6);
        if (std::abs(be.p) <= significance * be.se) {
            be.p = 0;
        }
        est.boundary.push_back(be);
    }
    return est;
}

SyndromeGraph graph_from_correlations(const CorrelationEstimates &est,
                                      const SyndromeGraph &reference) {
    SyndromeGraph g;
    g.type = reference.type;
    g.node_detectors = reference.node_detectors;
    g.node_names = reference.node_names;

    std::map<std::pair<int32_t, int32_t>, const GraphEdge *> ref_edges;
    for (const auto &e : reference.edges) {
        ref_edges[{std::min(e.u, e.v), std::max(e.u, e.v)}] = &e;
    }
    auto classify = [&](int32_t u, int32_t v, GraphEdge &e) {
        auto it = ref_edges.find({std::min(u, v), std::max(u, v)});
        if (it != ref_edges.end()) {
            e.logical_mask = it->second->logical_mask;
            e.ambiguous = it->second->ambiguous;
        } else {
            e.ambiguous = true;
            g.reports.push_back("estimated edge (" + std::to_string(u) + "," + std::to_string(v) +
                                ") has no model classification");
        }
    };

    for (const auto &pe : est.pairs) {
        if (pe.p <= 0) {
            continue;
        }
        GraphEdge e;
        e.u = static_cast<int32_t>(pe.i);
        e.v = static_cast<int32_t>(pe.j);
        // Estimates above one half have no valid weight; clamp.
        e.p = std::min(pe.p, 0.5 - 1e-6);
        e.weight = edge_weight(e.p);
        classify(e.u, e.v, e);
        g.edges.push_back(e);
    }
    for (const auto &be : est.boundary) {
        if (be.p <= 0) {
            continue;
        }
        GraphEdge e;
        e.u = -1;
        e.v = static_cast<int32_t>(be.i);
        e.p = std::min(be.p, 0.5 - 1e-6);
        e.weight = edge_weight(e.p);
        classify(e.u, e.v, e);
        g.edges.push_back(e);
    }
    return g;
}

}  // namespace splitsim
