//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_ORACLE_HPP_
#define AUGSCHED_ORACLE_HPP_

#include <functional>
#include <vector>

#include "augsched/graph.hpp"

namespace augsched {

// Brute force is only attempted on graphs with at most this many links.
inline constexpr int kDefaultEnumerationCap = 24;

struct OracleResult {
  Matching optimal_matching;
  Weight optimal_weight = 0;
};

// Calls visit once per matching of g (including the empty one), in
// lexicographic order of the sorted member-id sequences.
// Throws std::length_error when g has more than cap links.
void for_each_matching(const Graph &g,
                       const std::function<void(const Matching &)> &visit,
                       int cap = kDefaultEnumerationCap);
std::vector<Matching> enumerate_matchings(const Graph &g,
                                          int cap = kDefaultEnumerationCap);

// Maximum-weight matching by exhaustive search. Among optimal matchings the
// lexicographically smallest id set wins.
OracleResult max_weight_matching(const Graph &g, const QueueVector &q,
                                 int cap = kDefaultEnumerationCap);

// sum_e q(e)^2 + (max(0, beta * optimal - weight(current)))^2
double lyapunov_value(const Graph &g, const QueueVector &q,
                      const Matching &current, double beta,
                      int cap = kDefaultEnumerationCap);

// min{1, (p/(1-p))^n} * ((1-p)/(k*max_degree))^n
double delta_lower_bound(double p, int nodes, int k, int max_degree);

}  // namespace augsched

#endif  // AUGSCHED_ORACLE_HPP_
