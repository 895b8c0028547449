//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_DECOMPOSITION_HPP_
#define AUGSCHED_DECOMPOSITION_HPP_

#include <vector>

#include "augsched/graph.hpp"
#include "augsched/oracle.hpp"

namespace augsched {

// One connected component of current XOR optimal. optimal_links and
// current_links partition links.
struct DifferenceComponent {
  AugmentationKind kind = AugmentationKind::kPath;
  std::vector<LinkId> links;
  std::vector<LinkId> optimal_links;
  std::vector<LinkId> current_links;

  int size() const noexcept { return static_cast<int>(optimal_links.size()); }
  Augmentation as_augmentation() const { return {kind, links}; }
};

// Paths start at the endpoint with the lower node id. Cycles start with their
// lowest link id and continue towards the lower-id neighbouring link.
std::vector<DifferenceComponent>
symmetric_difference_components(const Graph &g, const Matching &current,
                                 const Matching &optimal);

// Fragments left after deleting every (k+1)-th optimal link starting with the
// offset-th one (offset in 1..k+1). Exposed for the sum identity check.
std::vector<Augmentation> path_offset_set(const DifferenceComponent &path,
                                          int k, int offset);

std::vector<Augmentation> decompose_path(const Graph &g,
                                         const DifferenceComponent &path,
                                         const Matching &current,
                                         const QueueVector &q, int k);

std::vector<Augmentation> decompose_cycle(const Graph &g,
                                          const DifferenceComponent &cycle,
                                          const Matching &current,
                                          const QueueVector &q, int k);

// Disjoint augmentations of size <= k whose joint application reaches at
// least k/(k+2) of the maximum weight.
std::vector<Augmentation> build_target_set(const Graph &g,
                                           const Matching &current,
                                           const QueueVector &q, int k,
                                           int cap = kDefaultEnumerationCap);

// Same, against a caller-supplied optimum.
std::vector<Augmentation> build_target_set(const Graph &g,
                                           const Matching &current,
                                           const QueueVector &q, int k,
                                           const OracleResult &optimum);

}  // namespace augsched

#endif  // AUGSCHED_DECOMPOSITION_HPP_
