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

#include "splitsim/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace splitsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieEps = 1e-12;

/// Primal-dual maximum-weight matching with blossom shrinking. Vertices
/// 0..n-1; pseudo-vertices n..2n-1 are blossoms. `endpoint[p]` is the vertex
/// at edge p/2, side p%2; `mate[v]` stores an endpoint index during the
/// algorithm.
class BlossomMatcher {
  public:
    BlossomMatcher(int n, const std::vector<WeightedEdge> &edges, bool max_cardinality)
        : n_(n), edges_(edges), maxcard_(max_cardinality) {}

    std::vector<int> run() {
        int m = static_cast<int>(edges_.size());
        double maxweight = 0;
        for (const auto &e : edges_) {
            maxweight = std::max(maxweight, e.weight);
        }
        endpoint_.resize(2 * m);
        neighbend_.assign(n_, {});
        for (int k = 0; k < m; k++) {
            endpoint_[2 * k] = edges_[k].u;
            endpoint_[2 * k + 1] = edges_[k].v;
            neighbend_[edges_[k].u].push_back(2 * k + 1);
            neighbend_[edges_[k].v].push_back(2 * k);
        }
        mate_.assign(n_, -1);
        label_.assign(2 * n_, 0);
        labelend_.assign(2 * n_, -1);
        inblossom_.resize(n_);
        for (int v = 0; v < n_; v++) {
            inblossom_[v] = v;
        }
        blossomparent_.assign(2 * n_, -1);
        blossomchilds_.assign(2 * n_, {});
        blossombase_.assign(2 * n_, -1);
        for (int v = 0; v < n_; v++) {
            blossombase_[v] = v;
        }
        blossomendps_.assign(2 * n_, {});
        bestedge_.assign(2 * n_, -1);
        blossombestedges_.assign(2 * n_, {});
        has_bestedges_.assign(2 * n_, false);
        unusedblossoms_.clear();
        for (int b = n_; b < 2 * n_; b++) {
            unusedblossoms_.push_back(b);
        }
        dualvar_.assign(2 * n_, 0.0);
        for (int v = 0; v < n_; v++) {
            dualvar_[v] = maxweight;
        }
        allowedge_.assign(m, false);

        for (int stage = 0; stage < n_; stage++) {
            std::fill(label_.begin(), label_.end(), 0);
            std::fill(bestedge_.begin(), bestedge_.end(), -1);
            for (int b = n_; b < 2 * n_; b++) {
                has_bestedges_[b] = false;
                blossombestedges_[b].clear();
            }
            std::fill(allowedge_.begin(), allowedge_.end(), false);
            queue_.clear();
            for (int v = 0; v < n_; v++) {
                if (mate_[v] == -1 && label_[inblossom_[v]] == 0) {
                    assign_label(v, 1, -1);
                }
            }
            bool augmented = false;
            while (true) {
                while (!queue_.empty() && !augmented) {
                    int v = queue_.back();
                    queue_.pop_back();
                    for (int p : neighbend_[v]) {
                        int k = p / 2;
                        int w = endpoint_[p];
                        if (inblossom_[v] == inblossom_[w]) {
                            continue;
                        }
                        double kslack = 0;
                        if (!allowedge_[k]) {
                            kslack = slack(k);
                            if (kslack <= kTieEps) {
                                allowedge_[k] = true;
                            }
                        }
                        if (allowedge_[k]) {
                            if (label_[inblossom_[w]] == 0) {
                                assign_label(w, 2, p ^ 1);
                            } else if (label_[inblossom_[w]] == 1) {
                                int base = scan_blossom(v, w);
                                if (base >= 0) {
                                    add_blossom(base, k);
                                } else {
                                    augment_matching(k);
                                    augmented = true;
                                    break;
                                }
                            } else if (label_[w] == 0) {
                                label_[w] = 2;
                                labelend_[w] = p ^ 1;
                            }
                        } else if (label_[inblossom_[w]] == 1) {
                            int b = inblossom_[v];
                            if (bestedge_[b] == -1 || kslack < slack(bestedge_[b])) {
                                bestedge_[b] = k;
                            }
                        } else if (label_[w] == 0) {
                            if (bestedge_[w] == -1 || kslack < slack(bestedge_[w])) {
                                bestedge_[w] = k;
                            }
                        }
                    }
                }
                if (augmented) {
                    break;
                }
                // Choose the dual adjustment.
                int deltatype = -1;
                double delta = 0;
                int deltaedge = -1, deltablossom = -1;
                if (!maxcard_) {
                    deltatype = 1;
                    delta = std::max(0.0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
                }
                for (int v = 0; v < n_; v++) {
                    if (label_[inblossom_[v]] == 0 && bestedge_[v] != -1) {
                        double d = slack(bestedge_[v]);
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 2;
                            deltaedge = bestedge_[v];
                        }
                    }
                }
                for (int b = 0; b < 2 * n_; b++) {
                    if (blossomparent_[b] == -1 && label_[b] == 1 && bestedge_[b] != -1) {
                        double d = slack(bestedge_[b]) / 2.0;
                        if (deltatype == -1 || d < delta) {
                            delta = d;
                            deltatype = 3;
                            deltaedge = bestedge_[b];
                        }
                    }
                }
                for (int b = n_; b < 2 * n_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1 && label_[b] == 2 &&
                        (deltatype == -1 || dualvar_[b] < delta)) {
                        delta = dualvar_[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if (deltatype == -1) {
                    // No further progress possible: optimum at max cardinality.
                    deltatype = 1;
                    delta = std::max(0.0, *std::min_element(dualvar_.begin(), dualvar_.begin() + n_));
                }
                for (int v = 0; v < n_; v++) {
                    if (label_[inblossom_[v]] == 1) {
                        dualvar_[v] -= delta;
                    } else if (label_[inblossom_[v]] == 2) {
                        dualvar_[v] += delta;
                    }
                }
                for (int b = n_; b < 2 * n_; b++) {
                    if (blossombase_[b] >= 0 && blossomparent_[b] == -1) {
                        if (label_[b] == 1) {
                            dualvar_[b] += delta;
                        } else if (label_[b] == 2) {
                            dualvar_[b] -= delta;
                        }
                    }
                }
                if (deltatype == 1) {
                    break;
                } else if (deltatype == 2) {
                    allowedge_[deltaedge] = true;
                    int i = edges_[deltaedge].u;
                    if (label_[inblossom_[i]] == 0) {
                        i = edges_[deltaedge].v;
                    }
                    queue_.push_back(i);
                } else if (deltatype == 3) {
                    allowedge_[deltaedge] = true;
                    queue_.push_back(edges_[deltaedge].u);
                } else {
                    expand_blossom(deltablossom, false);
                }
            }
            if (!augmented) {
                break;
            }
            for (int b = n_; b < 2 * n_; b++) {
                if (blossomparent_[b] == -1 && blossombase_[b] >= 0 && label_[b] == 1 &&
                    dualvar_[b] <= kTieEps) {
                    expand_blossom(b, true);
                }
            }
        }
        std::vector<int> result(n_, -1);
        for (int v = 0; v < n_; v++) {
            if (mate_[v] >= 0) {
                result[v] = endpoint_[mate_[v]];
            }
        }
        return result;
    }

  private:
    double slack(int k) const {
        return dualvar_[edges_[k].u] + dualvar_[edges_[k].v] - 2 * edges_[k].weight;
    }

    void blossom_leaves(int b, std::vector<int> &out) const {
        if (b < n_) {
            out.push_back(b);
            return;
        }
        for (int t : blossomchilds_[b]) {
            blossom_leaves(t, out);
        }
    }

    void assign_label(int w, int t, int p) {
        int b = inblossom_[w];
        label_[w] = label_[b] = t;
        labelend_[w] = labelend_[b] = p;
        bestedge_[w] = bestedge_[b] = -1;
        if (t == 1) {
            std::vector<int> leaves;
            blossom_leaves(b, leaves);
            queue_.insert(queue_.end(), leaves.begin(), leaves.end());
        } else if (t == 2) {
            int base = blossombase_[b];
            assign_label(endpoint_[mate_[base]], 1, mate_[base] ^ 1);
        }
    }

    int scan_blossom(int v, int w) {
        std::vector<int> path;
        int base = -1;
        while (v != -1 || w != -1) {
            int b = inblossom_[v];
            if (label_[b] & 4) {
                base = blossombase_[b];
                break;
            }
            path.push_back(b);
            label_[b] = 5;
            if (labelend_[b] == -1) {
                v = -1;
            } else {
                v = endpoint_[labelend_[b]];
                b = inblossom_[v];
                v = endpoint_[labelend_[b]];
            }
            if (w != -1) {
                std::swap(v, w);
            }
        }
        for (int b : path) {
            label_[b] = 1;
        }
        return base;
    }

    void add_blossom(int base, int k) {
        int v = edges_[k].u;
        int w = edges_[k].v;
        int bb = inblossom_[base];
        int bv = inblossom_[v];
        int bw = inblossom_[w];
        int b = unusedblossoms_.back();
        unusedblossoms_.pop_back();
        blossombase_[b] = base;
        blossomparent_[b] = -1;
        blossomparent_[bb] = b;
        std::vector<int> path;
        std::vector<int> endps;
        while (bv != bb) {
            blossomparent_[bv] = b;
            path.push_back(bv);
            endps.push_back(labelend_[bv]);
            v = endpoint_[labelend_[bv]];
            bv = inblossom_[v];
        }
        path.push_back(bb);
        std::reverse(path.begin(), path.end());
        std::reverse(endps.begin(), endps.end());
        endps.push_back(2 * k);
        while (bw != bb) {
            blossomparent_[bw] = b;
            path.push_back(bw);
            endps.push_back(labelend_[bw] ^ 1);
            w = endpoint_[labelend_[bw]];
            bw = inblossom_[w];
        }
        blossomchilds_[b] = path;
        blossomendps_[b] = endps;
        label_[b] = 1;
        labelend_[b] = labelend_[bb];
        dualvar_[b] = 0;
        std::vector<int> leaves;
        blossom_leaves(b, leaves);
        for (int q : leaves) {
            if (label_[inblossom_[q]] == 2) {
                queue_.push_back(q);
            }
            inblossom_[q] = b;
        }
        std::vector<int> bestedgeto(2 * n_, -1);
        for (int child : path) {
            std::vector<std::vector<int>> nblists;
            if (!has_bestedges_[child]) {
                std::vector<int> child_leaves;
                blossom_leaves(child, child_leaves);
                for (int q : child_leaves) {
                    std::vector<int> ks;
                    ks.reserve(neighbend_[q].size());
                    for (int p : neighbend_[q]) {
                        ks.push_back(p / 2);
                    }
                    nblists.push_back(std::move(ks));
                }
            } else {
                nblists.push_back(blossombestedges_[child]);
            }
            for (const auto &nblist : nblists) {
                for (int kk : nblist) {
                    int i = edges_[kk].u;
                    int j = edges_[kk].v;
                    if (inblossom_[j] == b) {
                        std::swap(i, j);
                    }
                    int bj = inblossom_[j];
                    if (bj != b && label_[bj] == 1 &&
                        (bestedgeto[bj] == -1 || slack(kk) < slack(bestedgeto[bj]))) {
                        bestedgeto[bj] = kk;
                    }
                }
            }
            has_bestedges_[child] = false;
            blossombestedges_[child].clear();
            bestedge_[child] = -1;
        }
        blossombestedges_[b].clear();
        for (int kk : bestedgeto) {
            if (kk != -1) {
                blossombestedges_[b].push_back(kk);
            }
        }
        has_bestedges_[b] = true;
        bestedge_[b] = -1;
        for (int kk : blossombestedges_[b]) {
            if (bestedge_[b] == -1 || slack(kk) < slack(bestedge_[b])) {
                bestedge_[b] = kk;
            }
        }
    }

    void expand_blossom(int b, bool endstage) {
        for (int s : blossomchilds_[b]) {
            blossomparent_[s] = -1;
            if (s < n_) {
                inblossom_[s] = s;
            } else if (endstage && dualvar_[s] <= kTieEps) {
                expand_blossom(s, endstage);
            } else {
                std::vector<int> leaves;
                blossom_leaves(s, leaves);
                for (int q : leaves) {
                    inblossom_[q] = s;
                }
            }
        }
        if (!endstage && label_[b] == 2) {
            int entrychild = inblossom_[endpoint_[labelend_[b] ^ 1]];
            int nchilds = static_cast<int>(blossomchilds_[b].size());
            int j = 0;
            for (; j < nchilds; j++) {
                if (blossomchilds_[b][j] == entrychild) {
                    break;
                }
            }
            int jstep, endptrick;
            if (j & 1) {
                j -= nchilds;
                jstep = 1;
                endptrick = 0;
            } else {
                jstep = -1;
                endptrick = 1;
            }
            auto child_at = [&](int idx) {
                return blossomchilds_[b][(idx % nchilds + nchilds) % nchilds];
            };
            auto endp_at = [&](int idx) {
                return blossomendps_[b][(idx % nchilds + nchilds) % nchilds];
            };
            int p = labelend_[b];
            while (j != 0) {
                label_[endpoint_[p ^ 1]] = 0;
                label_[endpoint_[endp_at(j - endptrick) ^ endptrick ^ 1]] = 0;
                assign_label(endpoint_[p ^ 1], 2, p);
                allowedge_[endp_at(j - endptrick) / 2] = true;
                j += jstep;
                p = endp_at(j - endptrick) ^ endptrick;
                allowedge_[p / 2] = true;
                j += jstep;
            }
            int bv = child_at(j);
            label_[endpoint_[p ^ 1]] = label_[bv] = 2;
            labelend_[endpoint_[p ^ 1]] = labelend_[bv] = p;
            bestedge_[bv] = -1;
            j += jstep;
            while (child_at(j) != entrychild) {
                bv = child_at(j);
                if (label_[bv] == 1) {
                    j += jstep;
                    continue;
                }
                std::vector<int> leaves;
                blossom_leaves(bv, leaves);
                int labeled = -1;
                for (int q : leaves) {
                    if (label_[q] != 0) {
                        labeled = q;
                        break;
                    }
                }
                if (labeled >= 0) {
                    label_[labeled] = 0;
                    label_[endpoint_[mate_[blossombase_[bv]]]] = 0;
                    assign_label(labeled, 2, labelend_[labeled]);
                }
                j += jstep;
            }
        }
        label_[b] = 0;
        labelend_[b] = -1;
        blossomchilds_[b].clear();
        blossomendps_[b].clear();
        blossombase_[b] = -1;
        blossombestedges_[b].clear();
        has_bestedges_[b] = false;
        bestedge_[b] = -1;
        unusedblossoms_.push_back(b);
    }

    void augment_blossom(int b, int v) {
        int t = v;
        while (blossomparent_[t] != b) {
            t = blossomparent_[t];
        }
        if (t >= n_) {
            augment_blossom(t, v);
        }
        int nchilds = static_cast<int>(blossomchilds_[b].size());
        int i = 0;
        for (; i < nchilds; i++) {
            if (blossomchilds_[b][i] == t) {
                break;
            }
        }
        int j = i;
        int jstep, endptrick;
        if (i & 1) {
            j -= nchilds;
            jstep = 1;
            endptrick = 0;
        } else {
            jstep = -1;
            endptrick = 1;
        }
        auto child_at = [&](int idx) {
            return blossomchilds_[b][(idx % nchilds + nchilds) % nchilds];
        };
        auto endp_at = [&](int idx) {
            return blossomendps_[b][(idx % nchilds + nchilds) % nchilds];
        };
        while (j != 0) {
            j += jstep;
            int tt = child_at(j);
            int p = endp_at(j - endptrick) ^ endptrick;
            if (tt >= n_) {
                augment_blossom(tt, endpoint_[p]);
            }
            j += jstep;
            tt = child_at(j);
            if (tt >= n_) {
                augment_blossom(tt, endpoint_[p ^ 1]);
            }
            mate_[endpoint_[p]] = p ^ 1;
            mate_[endpoint_[p ^ 1]] = p;
        }
        std::rotate(blossomchilds_[b].begin(), blossomchilds_[b].begin() + i,
                    blossomchilds_[b].end());
        std::rotate(blossomendps_[b].begin(), blossomendps_[b].begin() + i,
                    blossomendps_[b].end());
        blossombase_[b] = blossombase_[blossomchilds_[b][0]];
    }

    void augment_matching(int k) {
        const std::pair<int, int> starts[2] = {{edges_[k].u, 2 * k + 1}, {edges_[k].v, 2 * k}};
        for (auto [s0, p0] : starts) {
            int s = s0, p = p0;
            while (true) {
                int bs = inblossom_[s];
                if (bs >= n_) {
                    augment_blossom(bs, s);
                }
                mate_[s] = p;
                if (labelend_[bs] == -1) {
                    break;
                }
                int t = endpoint_[labelend_[bs]];
                int bt = inblossom_[t];
                s = endpoint_[labelend_[bt]];
                int j = endpoint_[labelend_[bt] ^ 1];
                if (bt >= n_) {
                    augment_blossom(bt, j);
                }
                mate_[j] = labelend_[bt];
                p = labelend_[bt] ^ 1;
            }
        }
    }

    int n_;
    std::vector<WeightedEdge> edges_;
    bool maxcard_;
    std::vector<int> endpoint_;
    std::vector<std::vector<int>> neighbend_;
    std::vector<int> mate_;
    std::vector<int> label_;
    std::vector<int> labelend_;
    std::vector<int> inblossom_;
    std::vector<int> blossomparent_;
    std::vector<std::vector<int>> blossomchilds_;
    std::vector<int> blossombase_;
    std::vector<std::vector<int>> blossomendps_;
    std::vector<int> bestedge_;
    std::vector<std::vector<int>> blossombestedges_;
    std::vector<uint8_t> has_bestedges_;
    std::vector<int> unusedblossoms_;
    std::vector<double> dualvar_;
    std::vector<uint8_t> allowedge_;
    std::vector<int> queue_;
};

}  // namespace

std::vector<int> max_weight_matching(int n_vertices, const std::vector<WeightedEdge> &edges,
                                     bool max_cardinality) {
    if (edges.empty() || n_vertices == 0) {
        return std::vector<int>(n_vertices, -1);
    }
    BlossomMatcher matcher(n_vertices, edges, max_cardinality);
    return matcher.run();
}

Matcher::Matcher(const SyndromeGraph &graph) : graph_(graph), n_nodes_(graph.node_detectors.size()) {
    size_t n = n_nodes_ + 1;  // + boundary
    size_t boundary = n_nodes_;
    paths_.assign(n * n, PathInfo{kInf, 0, false, {}});

    struct Adj {
        uint32_t to;
        double w;
        uint32_t mask;
        bool ambiguous;
        uint32_t edge_id;
    };
    std::vector<std::vector<Adj>> adj(n);
    for (uint32_t e = 0; e < graph_.edges.size(); e++) {
        const auto &edge = graph_.edges[e];
        uint32_t u = edge.u < 0 ? boundary : static_cast<uint32_t>(edge.u);
        uint32_t v = edge.v < 0 ? boundary : static_cast<uint32_t>(edge.v);
        adj[u].push_back({v, edge.weight, edge.logical_mask, edge.ambiguous, e});
        adj[v].push_back({u, edge.weight, edge.logical_mask, edge.ambiguous, e});
    }

    // Dijkstra from every node. Ties (within kTieEps) break on the
    // lexicographically smaller sorted edge index list.
    auto better = [](double d_new, const std::vector<uint32_t> &e_new, double d_old,
                     const std::vector<uint32_t> &e_old) {
        if (d_new < d_old - kTieEps) {
            return true;
        }
        if (d_new > d_old + kTieEps) {
            return false;
        }
        return e_new < e_old;
    };

    for (size_t src = 0; src < n; src++) {
        std::vector<PathInfo> best(n, PathInfo{kInf, 0, false, {}});
        best[src].dist = 0;
        std::vector<char> done(n, 0);
        using QItem = std::pair<double, size_t>;
        std::priority_queue<QItem, std::vector<QItem>, std::greater<>> pq;
        pq.push({0.0, src});
        while (!pq.empty()) {
            auto [d, u] = pq.top();
            pq.pop();
            if (done[u]) {
                continue;
            }
            done[u] = 1;
            for (const auto &a : adj[u]) {
                if (done[a.to]) {
                    continue;
                }
                double nd = best[u].dist + a.w;
                std::vector<uint32_t> ne = best[u].edge_ids;
                ne.push_back(a.edge_id);
                std::sort(ne.begin(), ne.end());
                if (better(nd, ne, best[a.to].dist, best[a.to].edge_ids)) {
                    best[a.to].dist = nd;
                    best[a.to].logical_mask = best[u].logical_mask ^ (a.ambiguous ? 0 : a.mask);
                    best[a.to].ambiguous = best[u].ambiguous || a.ambiguous;
                    best[a.to].edge_ids = std::move(ne);
                    pq.push({nd, a.to});
                }
            }
        }
        for (size_t dst = 0; dst < n; dst++) {
            paths_[src * n + dst] = std::move(best[dst]);
        }
    }
}

const Matcher::PathInfo &Matcher::path(int32_t u, int32_t v) const {
    size_t n = n_nodes_ + 1;
    size_t a = u < 0 ? n_nodes_ : static_cast<size_t>(u);
    size_t b = v < 0 ? n_nodes_ : static_cast<size_t>(v);
    return paths_[a * n + b];
}

MatchingResult Matcher::assemble(const std::vector<uint32_t> &fired,
                                 const std::vector<std::pair<int, int>> &pairing) const {
    MatchingResult result;
    for (auto [a, b] : pairing) {
        int32_t u = a < 0 ? -1 : static_cast<int32_t>(fired[a]);
        int32_t v = b < 0 ? -1 : static_cast<int32_t>(fired[b]);
        const PathInfo &info = path(u, v);
        result.total_weight += info.dist;
        result.logical_flips ^= info.logical_mask;
        result.used_ambiguous |= info.ambiguous;
        int32_t du = u < 0 ? -1 : static_cast<int32_t>(graph_.node_detectors[u]);
        int32_t dv = v < 0 ? -1 : static_cast<int32_t>(graph_.node_detectors[v]);
        result.pairs.emplace_back(du, dv);
    }
    return result;
}

MatchingResult Matcher::decode_mwpm(const std::vector<uint32_t> &fired) const {
    if (fired.empty()) {
        return {};
    }
    size_t k = fired.size();
    // Derived graph: fired nodes 0..k-1 plus one virtual boundary copy per
    // fired node (k..2k-1); boundary copies pair up at zero weight.
    std::vector<WeightedEdge> edges;
    double wmax = 0;
    for (size_t a = 0; a < k; a++) {
        for (size_t b = a + 1; b < k; b++) {
            double d = path(static_cast<int32_t>(fired[a]), static_cast<int32_t>(fired[b])).dist;
            if (std::isfinite(d)) {
                edges.push_back({static_cast<int>(a), static_cast<int>(b), d});
                wmax = std::max(wmax, d);
            }
        }
        double d = path(static_cast<int32_t>(fired[a]), -1).dist;
        if (std::isfinite(d)) {
            edges.push_back({static_cast<int>(a), static_cast<int>(a + k), d});
            wmax = std::max(wmax, d);
        }
    }
    for (size_t a = 0; a < k; a++) {
        for (size_t b = a + 1; b < k; b++) {
            edges.push_back({static_cast<int>(a + k), static_cast<int>(b + k), 0.0});
        }
    }
    // Minimum weight via maximum weight on complemented weights.
    std::vector<WeightedEdge> flipped = edges;
    for (auto &e : flipped) {
        e.weight = wmax + 1.0 - e.weight;
    }
    auto mate = max_weight_matching(static_cast<int>(2 * k), flipped, true);
    std::vector<std::pair<int, int>> pairing;
    for (size_t a = 0; a < k; a++) {
        int m = mate[a];
        if (m < 0) {
            throw std::runtime_error(
                "no perfect matching: fired detector in an odd component with no boundary");
        }
        if (m >= static_cast<int>(k)) {
            pairing.emplace_back(static_cast<int>(a), -1);  // boundary
        } else if (m > static_cast<int>(a)) {
            pairing.emplace_back(static_cast<int>(a), m);
        }
    }
    return assemble(fired, pairing);
}

MatchingResult Matcher::decode_exhaustive(const std::vector<uint32_t> &fired) const {
    if (fired.size() > 14) {
        throw std::invalid_argument("decode_exhaustive capped at 14 fired detectors");
    }
    if (fired.empty()) {
        return {};
    }
    size_t k = fired.size();
    std::vector<int> partner(k, -2);
    std::vector<int> best_partner;
    double best = kInf;
    std::vector<std::pair<int, int>> best_pairs;

    std::vector<std::pair<int, int>> current;
    auto rec = [&](auto &&self, size_t idx, double acc) -> void {
        if (acc >= best + kTieEps) {
            return;
        }
        while (idx < k && partner[idx] != -2) {
            idx++;
        }
        if (idx == k) {
            if (acc < best - kTieEps || (acc < best + kTieEps && current < best_pairs)) {
                best = acc;
                best_pairs = current;
            }
            return;
        }
        partner[idx] = -1;
        double db = path(static_cast<int32_t>(fired[idx]), -1).dist;
        if (std::isfinite(db)) {
            current.emplace_back(static_cast<int>(idx), -1);
            self(self, idx + 1, acc + db);
            current.pop_back();
        }
        for (size_t j = idx + 1; j < k; j++) {
            if (partner[j] != -2) {
                continue;
            }
            double d = path(static_cast<int32_t>(fired[idx]), static_cast<int32_t>(fired[j])).dist;
            if (!std::isfinite(d)) {
                continue;
            }
            partner[j] = static_cast<int>(idx);
            current.emplace_back(static_cast<int>(idx), static_cast<int>(j));
            self(self, idx + 1, acc + d);
            current.pop_back();
            partner[j] = -2;
        }
        partner[idx] = -2;
    };
    rec(rec, 0, 0.0);
    if (!std::isfinite(best)) {
        throw std::runtime_error(
            "no perfect matching: fired detector in an odd component with no boundary");
    }
    return assemble(fired, best_pairs);
}

}  // namespace splitsim
