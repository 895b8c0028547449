//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_TESTS_TEST_SUPPORT_HPP_
#define AUGSCHED_TESTS_TEST_SUPPORT_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "augsched/graph.hpp"
#include "augsched/protocol.hpp"

namespace augsched::testing {

using Rng = std::mt19937_64;

// Connected graph: random spanning tree plus extra links with probability
// extra_p, never exceeding max_links (when the tree fits).
inline Graph random_connected_graph(Rng &rng, int n, double extra_p,
                                    int max_links = 1 << 30) {
  Graph g(n);
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    order[static_cast<std::size_t>(i)] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    g.add_link(order[static_cast<std::size_t>(pick(rng))],
               order[static_cast<std::size_t>(i)]);
  }
  std::vector<std::pair<NodeId, NodeId>> extra;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (g.find_link(u, v) == kNoLink)
        extra.push_back({u, v});
  std::shuffle(extra.begin(), extra.end(), rng);
  std::bernoulli_distribution coin(extra_p);
  for (auto [u, v] : extra) {
    if (g.link_count() >= max_links)
      break;
    if (coin(rng))
      g.add_link(u, v);
  }
  return g;
}

inline QueueVector random_queues(Rng &rng, const Graph &g, Weight lo,
                                 Weight hi) {
  std::uniform_int_distribution<Weight> w(lo, hi);
  std::vector<Weight> q(static_cast<std::size_t>(g.link_count()));
  for (auto &x : q)
    x = w(rng);
  return QueueVector(std::move(q));
}

// Greedy over a shuffled order, keeping each feasible link with probability
// keep_p; covers sparse and near-maximal matchings.
inline Matching random_matching(Rng &rng, const Graph &g, double keep_p) {
  std::vector<LinkId> order(static_cast<std::size_t>(g.link_count()));
  for (LinkId e = 0; e < g.link_count(); ++e)
    order[static_cast<std::size_t>(e)] = e;
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(keep_p);
  std::vector<char> busy(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<LinkId> chosen;
  for (LinkId e : order) {
    const Link &l = g.link(e);
    if (busy[static_cast<std::size_t>(l.u)] || busy[static_cast<std::size_t>(l.v)])
      continue;
    if (!coin(rng))
      continue;
    busy[static_cast<std::size_t>(l.u)] = busy[static_cast<std::size_t>(l.v)] = 1;
    chosen.push_back(e);
  }
  return Matching(std::move(chosen));
}

// Independent brute force over all 2^|E| link subsets.
inline Weight bitmask_max_weight(const Graph &g, const QueueVector &q) {
  const int m = g.link_count();
  if (m > 22)
    throw std::length_error("bitmask oracle limited to 22 links");
  Weight best = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::uint64_t nodes = 0;
    Weight w = 0;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1u))
        continue;
      const Link &l = g.link(e);
      const std::uint64_t bits = (1ull << l.u) | (1ull << l.v);
      if (nodes & bits)
        ok = false;
      nodes |= bits;
      w += q[e];
    }
    if (ok)
      best = std::max(best, w);
  }
  return best;
}

// Maximum matching weight by dynamic programming over node subsets; cost
// grows with 2^n instead of 2^|E|.
inline Weight node_subset_max_weight(const Graph &g, const QueueVector &q) {
  const int n = g.node_count();
  if (n > 20)
    throw std::length_error("node subset oracle limited to 20 nodes");
  std::vector<Weight> best(std::size_t{1} << n, 0);
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int u = __builtin_ctz(mask);
    const std::uint32_t rest = mask & ~(1u << u);
    Weight b = best[rest];
    for (const Neighbor &nb : g.neighbors(u))
      if (rest >> nb.node & 1u)
        b = std::max(b, q[nb.link] + best[rest & ~(1u << nb.node)]);
    best[mask] = b;
  }
  return best.back();
}

inline std::uint64_t bitmask_matching_count(const Graph &g) {
  const int m = g.link_count();
  std::uint64_t count = 0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::uint64_t nodes = 0;
    bool ok = true;
    for (int e = 0; e < m && ok; ++e) {
      if (!(mask >> e & 1u))
        continue;
      const Link &l = g.link(e);
      const std::uint64_t bits = (1ull << l.u) | (1ull << l.v);
      ok = !(nodes & bits);
      nodes |= bits;
    }
    count += ok ? 1 : 0;
  }
  return count;
}

// Alternating path with `links` links on shuffled node labels. Links at even
// positions are optimal when optimal_first holds; the rest form the current
// matching.
struct AlternatingPath {
  Graph graph;
  Matching current;
  Matching optimal;
};

inline AlternatingPath random_alternating_path(Rng &rng, int links,
                                               bool optimal_first) {
  const int n = links + 1;
  std::vector<NodeId> label(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    label[static_cast<std::size_t>(i)] = i;
  std::shuffle(label.begin(), label.end(), rng);
  AlternatingPath out{Graph(n), {}, {}};
  std::vector<LinkId> cur, opt;
  for (int i = 0; i < links; ++i) {
    const LinkId e = out.graph.add_link(label[static_cast<std::size_t>(i)],
                                        label[static_cast<std::size_t>(i + 1)]);
    ((i % 2 == 0) == optimal_first ? opt : cur).push_back(e);
  }
  out.current = Matching(std::move(cur));
  out.optimal = Matching(std::move(opt));
  return out;
}

// Independent post-condition check of one control part. Returns an empty
// string when every property holds, else a description of the first failure.
inline std::string check_control_outcome(const Graph &g, const QueueVector &q,
                                         const Matching &prev, int k,
                                         const ControlOutcome &out) {
  if (!is_matching(g, out.new_matching))
    return "new schedule is not a matching";
  std::vector<Augmentation> built, switched;
  Weight switched_gain = 0;
  for (const AugmentationBuild &a : out.augmentations) {
    const Augmentation aug = a.as_augmentation();
    if (!a.links.empty()) {
      if (!is_valid_augmentation(g, prev, aug))
        return "invalid or inconsistent augmentation";
      if (augmentation_size(aug, prev) > k)
        return "augmentation larger than k";
      built.push_back(aug);
    }
    const Weight gain = augmentation_gain_unchecked(aug, prev, q);
    if (a.switched() != (gain > 0))
      return "switch decision disagrees with gain";
    if (a.switched()) {
      switched.push_back(aug);
      switched_gain += gain;
    }
  }
  if (!pairwise_disjoint(g, built, prev))
    return "augmentations overlap";
  if (apply_augmentations(g, prev, switched) != out.new_matching)
    return "new schedule differs from the switched augmentations";
  const Weight before = matching_weight(prev, q);
  const Weight after = matching_weight(out.new_matching, q);
  if (after < before + switched_gain)
    return "weight increase below the switched gains";
  if (!switched.empty() && after <= before)
    return "switching did not raise the weight";
  if (out.trace.phase_count != 4 * k + 2)
    return "trace does not span 4k+2 phases";
  std::vector<int> sent(static_cast<std::size_t>(g.node_count()), 0);
  for (const PhaseMessage &m : out.trace.messages) {
    if (m.phase < 1 || m.phase > 2 * k + 1)
      return "handshake outside the growth phases";
    ++sent[static_cast<std::size_t>(m.from)];
  }
  for (const DecisionHop &h : out.trace.decisions) {
    if (h.phase < 2 * k + 2 || h.phase > 4 * k + 2)
      return "decision relay outside the back-propagation phases";
    ++sent[static_cast<std::size_t>(h.from)];
  }
  for (int c : sent)
    if (c > 3)
      return "node sent more than three control messages";
  return {};
}

// Single seed: path a-b-c-d-e with side links b-f and d-h; the previous
// schedule holds (a,b) and (c,d).
struct SingleSeedPath {
  enum : NodeId { a = 0, b, c, d, e, f, h };
  Graph graph{7};
  LinkId ab, bc, bf, cd, de, dh;
  Matching prev;

  SingleSeedPath() {
    ab = graph.add_link(a, b);
    bc = graph.add_link(b, c);
    bf = graph.add_link(b, f);
    cd = graph.add_link(c, d);
    de = graph.add_link(d, e);
    dh = graph.add_link(d, h);
    prev = Matching({ab, cd});
  }

  QueueVector queues(Weight q_ab, Weight q_bc, Weight q_cd, Weight q_de) const {
    std::vector<Weight> q(6, 1);
    q[static_cast<std::size_t>(ab)] = q_ab;
    q[static_cast<std::size_t>(bc)] = q_bc;
    q[static_cast<std::size_t>(cd)] = q_cd;
    q[static_cast<std::size_t>(de)] = q_de;
    return QueueVector(std::move(q));
  }

  // Seed a, intended size 2, b picks c and d picks e.
  ScriptedChoices choices() const {
    return ScriptedChoices({a}, {{a, 2}}, {{{2, b}, c}, {{4, d}, e}});
  }
};

// Four seeds with intended size 2 and k = 2. Two phase-2 REQs
// collide at node 8, the bottom augmentation hits its own seed in phase 4 and
// closes into a 4-cycle, the top augmentation stops at its intended size in
// phase 5. Link ids follow insertion order below.
struct FourSeedScenario {
  Graph graph{14};
  Matching prev;

  FourSeedScenario() {
    const std::pair<NodeId, NodeId> links[] = {
        {0, 1},   {1, 2},  {2, 3},  {3, 0},  {4, 5},  {6, 7},
        {5, 8},   {7, 8},  {9, 10}, {10, 11}, {11, 12}, {12, 13},
        {8, 9},   {1, 5},  {3, 13}, {7, 11}};
    for (auto [u, v] : links)
      graph.add_link(u, v);
    prev = Matching({0, 2, 4, 5, 9, 11});
  }

  QueueVector queues() const {
    std::vector<Weight> q(16, 2);
    q[0] = 1;
    q[1] = 5;
    q[2] = 1;
    q[3] = 5;
    q[4] = 3;
    q[5] = 3;
    q[8] = 4;
    q[9] = 1;
    q[10] = 4;
    q[11] = 1;
    return QueueVector(std::move(q));
  }

  ScriptedChoices choices() const {
    return ScriptedChoices({0, 4, 6, 9}, {{0, 2}, {4, 2}, {6, 2}, {9, 2}},
                           {{{1, 9}, 10},
                            {{2, 1}, 2},
                            {{2, 5}, 8},
                            {{2, 7}, 8},
                            {{3, 11}, 12},
                            {{4, 3}, 0}});
  }
};

}  // namespace augsched::testing

#endif  // AUGSCHED_TESTS_TEST_SUPPORT_HPP_
