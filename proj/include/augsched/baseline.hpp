//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_BASELINE_HPP_
#define AUGSCHED_BASELINE_HPP_

#include "augsched/graph.hpp"
#include "augsched/random.hpp"

namespace augsched {

// Centralized maximal matching over the links with a positive queue: greedy
// pass over a uniformly shuffled link order.
Matching maximal_matching(const Graph &g, const QueueVector &q,
                          RandomStream &rng);

// No positive-queue link can be added to m without a conflict.
bool is_maximal(const Graph &g, const Matching &m, const QueueVector &q);

}  // namespace augsched

#endif  // AUGSCHED_BASELINE_HPP_
