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

#ifndef SPLITSIM_TESTS_STATS_HPP
#define SPLITSIM_TESTS_STATS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

namespace splitsim::oracle {

/// Pearson chi-square p-value of observed counts against expected
/// probabilities. Bins with expected count below `min_expected` are pooled
/// into a common bucket.
inline double chi_square_p_value(const std::vector<uint64_t> &observed,
                                 const std::vector<double> &expected_probs,
                                 double min_expected = 5.0) {
    uint64_t total = 0;
    for (auto c : observed) {
        total += c;
    }
    double pooled_obs = 0, pooled_exp = 0;
    double stat = 0;
    int dof = -1;
    for (size_t k = 0; k < observed.size(); k++) {
        double e = expected_probs[k] * static_cast<double>(total);
        if (e < min_expected) {
            pooled_obs += static_cast<double>(observed[k]);
            pooled_exp += e;
            continue;
        }
        double d = static_cast<double>(observed[k]) - e;
        stat += d * d / e;
        dof++;
    }
    if (pooled_exp > 0) {
        double d = pooled_obs - pooled_exp;
        stat += d * d / pooled_exp;
        dof++;
    }
    if (dof < 1) {
        return 1.0;
    }
    boost::math::chi_squared dist(dof);
    return 1.0 - boost::math::cdf(dist, stat);
}

/// Two-sample chi-square homogeneity test over categorical counts keyed by
/// an arbitrary pattern id.
inline double chi_square_two_sample_p_value(const std::map<uint64_t, uint64_t> &counts_a,
                                            const std::map<uint64_t, uint64_t> &counts_b,
                                            double min_expected = 5.0) {
    double na = 0, nb = 0;
    std::map<uint64_t, std::pair<double, double>> merged;
    for (const auto &[k, v] : counts_a) {
        merged[k].first += static_cast<double>(v);
        na += static_cast<double>(v);
    }
    for (const auto &[k, v] : counts_b) {
        merged[k].second += static_cast<double>(v);
        nb += static_cast<double>(v);
    }
    double n = na + nb;
    double stat = 0;
    int dof = -1;
    double pool_a = 0, pool_b = 0, pool_t = 0;
    for (const auto &[k, ab] : merged) {
        double row = ab.first + ab.second;
        double ea = row * na / n;
        double eb = row * nb / n;
        if (ea < min_expected || eb < min_expected) {
            pool_a += ab.first;
            pool_b += ab.second;
            pool_t += row;
            continue;
        }
        stat += (ab.first - ea) * (ab.first - ea) / ea;
        stat += (ab.second - eb) * (ab.second - eb) / eb;
        dof++;
    }
    if (pool_t > 0) {
        double ea = pool_t * na / n;
        double eb = pool_t * nb / n;
        if (ea > 0 && eb > 0) {
            stat += (pool_a - ea) * (pool_a - ea) / ea;
            stat += (pool_b - eb) * (pool_b - eb) / eb;
            dof++;
        }
    }
    if (dof < 1) {
        return 1.0;
    }
    boost::math::chi_squared dist(dof);
    return 1.0 - boost::math::cdf(dist, stat);
}

}  // namespace splitsim::oracle

#endif
