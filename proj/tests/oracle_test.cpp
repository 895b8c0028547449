//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/oracle.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace augsched {
namespace {

Graph path_graph(int links) {
  Graph g(links + 1);
  for (int i = 0; i < links; ++i)
    g.add_link(i, i + 1);
  return g;
}

TEST(EnumerateMatchingsTest, SmallGraphs) {
  EXPECT_EQ(enumerate_matchings(path_graph(1)).size(), 2u);
  const auto two = enumerate_matchings(path_graph(2));
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two[0], Matching{});
  EXPECT_EQ(two[1], Matching({0}));
  EXPECT_EQ(two[2], Matching({1}));

  Graph tri(3);
  tri.add_link(0, 1);
  tri.add_link(1, 2);
  tri.add_link(2, 0);
  EXPECT_EQ(enumerate_matchings(tri).size(), 4u);
}

TEST(EnumerateMatchingsTest, RefusesAboveCap) {
  try {
    enumerate_matchings(path_graph(25));
    FAIL() << "expected length_error";
  } catch (const std::length_error &e) {
    EXPECT_NE(std::string(e.what()).find("24"), std::string::npos);
  }
  EXPECT_EQ(enumerate_matchings(path_graph(5), 5).size(), 13u);
  EXPECT_THROW(enumerate_matchings(path_graph(5), 4), std::length_error);
}

TEST(EnumerateMatchingsTest, CountsAgreeWithBitmaskEnumeration) {
  testing::Rng rng(3);
  for (int i = 0; i < 60; ++i) {
    const Graph g = testing::random_connected_graph(rng, 2 + i % 9, 0.4, 16);
    const auto all = enumerate_matchings(g);
    EXPECT_EQ(all.size(), testing::bitmask_matching_count(g));
    std::set<Matching> distinct(all.begin(), all.end());
    EXPECT_EQ(distinct.size(), all.size());
    for (const Matching &m : all)
      EXPECT_TRUE(is_matching(g, m));
  }
}

TEST(MaxWeightMatchingTest, Examples) {
  const Graph p2 = path_graph(2);
  auto zero = max_weight_matching(p2, QueueVector(std::vector<Weight>{0, 0}));
  EXPECT_EQ(zero.optimal_weight, 0);
  EXPECT_EQ(zero.optimal_matching, Matching{});

  Graph star(4);
  star.add_link(0, 1);
  star.add_link(0, 2);
  star.add_link(0, 3);
  EXPECT_EQ(max_weight_matching(star, QueueVector(std::vector<Weight>{2, 5, 3}))
                .optimal_weight,
            5);

  auto tie = max_weight_matching(p2, QueueVector(std::vector<Weight>{4, 4}));
  EXPECT_EQ(tie.optimal_weight, 4);
  EXPECT_EQ(tie.optimal_matching, Matching({0}));
}

TEST(MaxWeightMatchingTest, AgreesWithBitmaskOracle) {
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Graph g = testing::random_connected_graph(rng, 2 + i % 9, 0.4, 18);
    const QueueVector q = testing::random_queues(rng, g, 0, 20);
    const OracleResult r = max_weight_matching(g, q);
    ASSERT_EQ(r.optimal_weight, testing::bitmask_max_weight(g, q));
    ASSERT_EQ(matching_weight(r.optimal_matching, q), r.optimal_weight);
    ASSERT_TRUE(is_matching(g, r.optimal_matching));
    for (const Matching &m : enumerate_matchings(g))
      ASSERT_LE(matching_weight(m, q), r.optimal_weight);
  }
}

TEST(MaxWeightMatchingTest, IndependentOraclesAgree) {
  testing::Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const Graph g = testing::random_connected_graph(rng, 2 + i % 10, 0.3, 18);
    const QueueVector q = testing::random_queues(rng, g, 0, 20);
    ASSERT_EQ(testing::node_subset_max_weight(g, q), testing::bitmask_max_weight(g, q));
  }
}

TEST(LyapunovTest, Values) {
  Graph single(2);
  single.add_link(0, 1);
  EXPECT_DOUBLE_EQ(lyapunov_value(single, QueueVector(std::vector<Weight>{0}),
                                  Matching{}, 1.0),
                   0.0);
  EXPECT_DOUBLE_EQ(lyapunov_value(single, QueueVector(std::vector<Weight>{3}),
                                  Matching{}, 1.0),
                   18.0);

  const Graph p2 = path_graph(2);
  const QueueVector q(std::vector<Weight>{4, 6});
  EXPECT_DOUBLE_EQ(lyapunov_value(p2, q, Matching({1}), 1.0), 52.0);
  // Shortfall of beta*6 - 4 with beta = 0.5 is zero.
  EXPECT_DOUBLE_EQ(lyapunov_value(p2, q, Matching({0}), 0.5), 52.0);
  EXPECT_DOUBLE_EQ(lyapunov_value(p2, q, Matching({0}), 1.0), 56.0);
  EXPECT_THROW(lyapunov_value(p2, q, Matching{}, 1.5), std::domain_error);
}

TEST(DeltaLowerBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(delta_lower_bound(0.5, 1, 1, 1), 0.5);
  EXPECT_DOUBLE_EQ(delta_lower_bound(0.5, 2, 2, 2), 0.015625);
  // p < 1/2: (p/(1-p))^n (1-p)^n / (k D)^n = (p / (k D))^n
  EXPECT_NEAR(delta_lower_bound(0.2, 3, 2, 4), std::pow(0.2 / 8.0, 3), 1e-18);
  EXPECT_THROW(delta_lower_bound(0.0, 1, 1, 1), std::domain_error);
  EXPECT_THROW(delta_lower_bound(1.0, 1, 1, 1), std::domain_error);
  EXPECT_THROW(delta_lower_bound(0.5, 1, 0, 1), std::domain_error);
}

TEST(DeltaLowerBoundTest, PositiveAndMonotone) {
  for (double p : {0.05, 0.2, 0.5, 0.8, 0.95}) {
    for (int n = 1; n <= 12; ++n) {
      for (int k = 1; k <= 5; ++k) {
        for (int d = 1; d <= 6; ++d) {
          const double v = delta_lower_bound(p, n, k, d);
          ASSERT_GT(v, 0.0);
          ASSERT_LE(delta_lower_bound(p, n + 1, k, d), v);
          ASSERT_LE(delta_lower_bound(p, n, k + 1, d), v);
          ASSERT_LE(delta_lower_bound(p, n, k, d + 1), v);
        }
      }
    }
  }
}

}  // namespace
}  // namespace augsched
