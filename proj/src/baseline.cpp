//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/baseline.hpp"

#include <algorithm>
#include <stdexcept>

namespace augsched {

Matching maximal_matching(const Graph &g, const QueueVector &q,
                          RandomStream &rng) {
  if (q.size() != static_cast<std::size_t>(g.link_count()))
    throw std::invalid_argument("queue vector size does not match graph");
  std::vector<LinkId> order;
  for (LinkId e = 0; e < g.link_count(); ++e)
    if (q[e] > 0)
      order.push_back(e);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> busy(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<LinkId> chosen;
  for (LinkId e : order) {
    const Link &l = g.link(e);
    auto &a = busy[static_cast<std::size_t>(l.u)];
    auto &b = busy[static_cast<std::size_t>(l.v)];
    if (a || b)
      continue;
    a = b = 1;
    chosen.push_back(e);
  }
  return Matching(std::move(chosen));
}

bool is_maximal(const Graph &g, const Matching &m, const QueueVector &q) {
  if (!is_matching(g, m))
    return false;
  std::vector<char> busy(static_cast<std::size_t>(g.node_count()), 0);
  for (LinkId e : m.links()) {
    busy[static_cast<std::size_t>(g.link(e).u)] = 1;
    busy[static_cast<std::size_t>(g.link(e).v)] = 1;
  }
  for (LinkId e = 0; e < g.link_count(); ++e) {
    const Link &l = g.link(e);
    if (q[e] > 0 && !busy[static_cast<std::size_t>(l.u)] &&
        !busy[static_cast<std::size_t>(l.v)])
      return false;
  }
  return true;
}

}  // namespace augsched
