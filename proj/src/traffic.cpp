//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/traffic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace augsched {

GridGraph build_grid(int rows, int cols) {
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("grid dimensions must be at least 2x2");
  GridGraph grid;
  grid.rows = rows;
  grid.cols = cols;
  grid.graph = Graph(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) {
        grid.graph.add_link(grid.node(r, c), grid.node(r, c + 1));
        grid.horizontal.push_back(1);
      }
      if (r + 1 < rows) {
        grid.graph.add_link(grid.node(r, c), grid.node(r + 1, c));
        grid.horizontal.push_back(0);
      }
    }
  }
  return grid;
}

ArrivalProcess::ArrivalProcess(std::vector<double> rates)
    : rates_(std::move(rates)) {
  for (std::size_t e = 0; e < rates_.size(); ++e)
    if (!(rates_[e] >= 0.0 && rates_[e] <= 1.0))
      throw std::domain_error("arrival rate of link " + std::to_string(e) +
                              " is " + std::to_string(rates_[e]) +
                              ", outside [0,1]");
}

void sample_arrivals(const ArrivalProcess &proc, RandomStream &rng,
                     std::vector<Weight> &out) {
  out.resize(proc.size());
  const auto rates = proc.rates();
  for (std::size_t e = 0; e < rates.size(); ++e)
    out[e] = draw_bernoulli(rng, rates[e]) ? 1 : 0;
}

std::vector<Weight> sample_arrivals(const ArrivalProcess &proc,
                                    RandomStream &rng) {
  std::vector<Weight> out;
  sample_arrivals(proc, rng, out);
  return out;
}

QueueVector step_queues(const QueueVector &q, std::span<const Weight> arrivals,
                        std::span<const std::uint8_t> active) {
  if (arrivals.size() != q.size() || active.size() != q.size())
    throw std::invalid_argument("vector sizes do not match the queue vector");
  std::vector<Weight> next(q.size());
  for (std::size_t e = 0; e < q.size(); ++e) {
    const Weight v = q[static_cast<LinkId>(e)] + arrivals[e] - active[e];
    if (v < 0 || arrivals[e] < 0)
      throw std::logic_error("link " + std::to_string(e) +
                             " served with an empty queue");
    next[e] = v;
  }
  return QueueVector(std::move(next));
}

bool is_heavy_link(const GridGraph &grid, LinkId e) {
  if (!grid.horizontal.at(static_cast<std::size_t>(e)))
    return false;
  const Link &l = grid.graph.link(e);
  const int left_col = std::min(l.u, l.v) % grid.cols;
  return left_col % 2 == 0 && left_col + 1 < grid.cols;
}

ArrivalProcess grid_load_vector(const GridGraph &grid, LoadDirection dir,
                                double lambda) {
  std::vector<double> rates(static_cast<std::size_t>(grid.graph.link_count()));
  for (LinkId e = 0; e < grid.graph.link_count(); ++e) {
    double rel = dir.vertical;
    if (grid.horizontal[static_cast<std::size_t>(e)])
      rel = is_heavy_link(grid, e) ? dir.heavy : dir.light_horizontal;
    rates[static_cast<std::size_t>(e)] = rel * lambda;
  }
  return ArrivalProcess(std::move(rates));
}

ArrivalProcess uniform_load_vector(const Graph &g, double lambda) {
  const int delta = g.max_degree();
  if (delta == 0)
    throw std::invalid_argument("graph has no links");
  return ArrivalProcess(std::vector<double>(
      static_cast<std::size_t>(g.link_count()), lambda / delta));
}

}  // namespace augsched
