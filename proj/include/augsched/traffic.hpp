//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_TRAFFIC_HPP_
#define AUGSCHED_TRAFFIC_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "augsched/graph.hpp"
#include "augsched/random.hpp"

namespace augsched {

// Rows x cols lattice; node (r, c) has id r*cols + c. Links are added row by
// row: for each node its right link (if any) and then its down link (if any).
struct GridGraph {
  int rows = 0;
  int cols = 0;
  Graph graph;
  std::vector<std::uint8_t> horizontal;  // per link

  NodeId node(int r, int c) const { return r * cols + c; }
};

GridGraph build_grid(int rows, int cols);

// Per-link Bernoulli arrivals, at most one packet per link per slot.
class ArrivalProcess {
public:
  ArrivalProcess() = default;
  explicit ArrivalProcess(std::vector<double> rates);

  std::span<const double> rates() const noexcept { return rates_; }
  std::size_t size() const noexcept { return rates_.size(); }

private:
  std::vector<double> rates_;
};

std::vector<Weight> sample_arrivals(const ArrivalProcess &proc,
                                    RandomStream &rng);
void sample_arrivals(const ArrivalProcess &proc, RandomStream &rng,
                     std::vector<Weight> &out);

// q + arrivals - active. Throws std::logic_error if a link is served empty.
QueueVector step_queues(const QueueVector &q, std::span<const Weight> arrivals,
                        std::span<const std::uint8_t> active);

// Relative link loads for a grid sweep: heavy and light horizontal links and
// vertical links.
struct LoadDirection {
  double heavy;
  double light_horizontal;
  double vertical;
};

inline constexpr LoadDirection kFig5Direction{0.7, 0.1, 0.1};
inline constexpr LoadDirection kFig6Direction{0.89, 0.1, 0.01};

// Heavy links pair columns (0,1), (2,3), ... in every row so that no node
// touches two heavy links.
bool is_heavy_link(const GridGraph &grid, LinkId e);

ArrivalProcess grid_load_vector(const GridGraph &grid, LoadDirection dir,
                                double lambda);

// lambda / max_degree on every link, so no node carries more than lambda.
ArrivalProcess uniform_load_vector(const Graph &g, double lambda);

}  // namespace augsched

#endif  // AUGSCHED_TRAFFIC_HPP_
