//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace augsched {

namespace {

void check_cap(const Graph &g, int cap) {
  if (g.link_count() > cap)
    throw std::length_error("graph has " + std::to_string(g.link_count()) +
                            " links, above the enumeration cap of " +
                            std::to_string(cap));
}

class MatchingWalker {
public:
  MatchingWalker(const Graph &g, const std::function<void(const Matching &)> &visit)
      : g_(g), visit_(visit),
        used_(static_cast<std::size_t>(g.node_count()), 0) {}

  void run() { extend(0); }

private:
  void extend(LinkId from) {
    visit_(Matching(chosen_));
    for (LinkId e = from; e < g_.link_count(); ++e) {
      const Link &l = g_.link(e);
      auto &a = used_[static_cast<std::size_t>(l.u)];
      auto &b = used_[static_cast<std::size_t>(l.v)];
      if (a || b)
        continue;
      a = b = 1;
      chosen_.push_back(e);
      extend(e + 1);
      chosen_.pop_back();
      a = b = 0;
    }
  }

  const Graph &g_;
  const std::function<void(const Matching &)> &visit_;
  std::vector<char> used_;
  std::vector<LinkId> chosen_;
};

}  // namespace

void for_each_matching(const Graph &g,
                       const std::function<void(const Matching &)> &visit,
                       int cap) {
  check_cap(g, cap);
  MatchingWalker(g, visit).run();
}

std::vector<Matching> enumerate_matchings(const Graph &g, int cap) {
  std::vector<Matching> out;
  for_each_matching(g, [&](const Matching &m) { out.push_back(m); }, cap);
  return out;
}

OracleResult max_weight_matching(const Graph &g, const QueueVector &q,
                                 int cap) {
  if (q.size() != static_cast<std::size_t>(g.link_count()))
    throw std::invalid_argument("queue vector size does not match graph");
  OracleResult best;
  bool have = false;
  // Visit order is lexicographic, so keeping the first strict maximum
  // implements the smallest-id-set tie-break.
  for_each_matching(
      g,
      [&](const Matching &m) {
        const Weight w = matching_weight(m, q);
        if (!have || w > best.optimal_weight) {
          best.optimal_matching = m;
          best.optimal_weight = w;
          have = true;
        }
      },
      cap);
  return best;
}

double lyapunov_value(const Graph &g, const QueueVector &q,
                      const Matching &current, double beta, int cap) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::domain_error("beta must lie in [0,1]");
  const OracleResult opt = max_weight_matching(g, q, cap);
  double v1 = 0.0;
  for (Weight w : q.values())
    v1 += static_cast<double>(w) * static_cast<double>(w);
  const double shortfall =
      std::max(0.0, beta * static_cast<double>(opt.optimal_weight) -
                        static_cast<double>(matching_weight(current, q)));
  return v1 + shortfall * shortfall;
}

double delta_lower_bound(double p, int nodes, int k, int max_degree) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("seed probability must lie in (0,1)");
  if (nodes < 1 || k < 1 || max_degree < 1)
    throw std::domain_error("nodes, k and max_degree must be at least 1");
  const double n = nodes;
  const double seeding = std::min(1.0, std::pow(p / (1.0 - p), n));
  return seeding * std::pow((1.0 - p) / (static_cast<double>(k) * max_degree), n);
}

}  // namespace augsched
