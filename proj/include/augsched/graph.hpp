//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_GRAPH_HPP_
#define AUGSCHED_GRAPH_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace augsched {

using NodeId = std::int32_t;
using LinkId = std::int32_t;
using Weight = std::int64_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr LinkId kNoLink = -1;

struct Link {
  NodeId u;
  NodeId v;

  NodeId other(NodeId x) const noexcept { return x == u ? v : u; }
  bool touches(NodeId x) const noexcept { return x == u || x == v; }

  friend bool operator==(const Link &, const Link &) = default;
};

struct Neighbor {
  NodeId node;
  LinkId link;
};

// Undirected simple graph. Link ids are dense and follow insertion order.
class Graph {
public:
  Graph() = default;
  explicit Graph(NodeId node_count);

  // Throws std::invalid_argument on self-loops, duplicates or bad endpoints.
  LinkId add_link(NodeId u, NodeId v);

  NodeId node_count() const noexcept { return static_cast<NodeId>(adj_.size()); }
  LinkId link_count() const noexcept { return static_cast<LinkId>(links_.size()); }

  const Link &link(LinkId e) const { return links_.at(static_cast<std::size_t>(e)); }
  std::span<const Link> links() const noexcept { return links_; }
  std::span<const Neighbor> neighbors(NodeId v) const {
    return adj_.at(static_cast<std::size_t>(v));
  }
  int degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const noexcept;

  // kNoLink when u and v are not adjacent.
  LinkId find_link(NodeId u, NodeId v) const;

  bool valid_link(LinkId e) const noexcept { return e >= 0 && e < link_count(); }
  bool valid_node(NodeId v) const noexcept { return v >= 0 && v < node_count(); }

  // Round-trip check of adjacency against the link list.
  bool consistent() const;

private:
  std::vector<Link> links_;
  std::vector<std::vector<Neighbor>> adj_;
};

// Text format: "nodes <N>" header, then "link <u> <v>" lines. '#' starts a comment.
Graph parse_graph(std::istream &in);
Graph parse_graph(std::string_view text);
Graph load_graph(const std::filesystem::path &path);
std::string format_graph(const Graph &g);

// A set of link ids kept sorted and unique. Whether it is a matching is a
// property relative to a graph; see is_matching().
class Matching {
public:
  Matching() = default;
  explicit Matching(std::vector<LinkId> links);

  std::span<const LinkId> links() const noexcept { return links_; }
  std::size_t size() const noexcept { return links_.size(); }
  bool empty() const noexcept { return links_.empty(); }
  bool contains(LinkId e) const noexcept;

  friend bool operator==(const Matching &, const Matching &) = default;
  friend auto operator<=>(const Matching &, const Matching &) = default;

private:
  std::vector<LinkId> links_;
};

// Per-link backlog in packets.
class QueueVector {
public:
  QueueVector() = default;
  explicit QueueVector(std::size_t link_count) : q_(link_count, 0) {}
  explicit QueueVector(std::vector<Weight> q);

  std::size_t size() const noexcept { return q_.size(); }
  Weight operator[](LinkId e) const { return q_[static_cast<std::size_t>(e)]; }
  Weight at(LinkId e) const { return q_.at(static_cast<std::size_t>(e)); }
  void set(LinkId e, Weight value);
  std::span<const Weight> values() const noexcept { return q_; }
  Weight total() const noexcept;

  friend bool operator==(const QueueVector &, const QueueVector &) = default;

private:
  std::vector<Weight> q_;
};

enum class AugmentationKind { kPath, kCycle };

// Alternating path or cycle relative to some base matching. Links are stored
// in traversal order.
struct Augmentation {
  AugmentationKind kind = AugmentationKind::kPath;
  std::vector<LinkId> links;

  bool empty() const noexcept { return links.empty(); }
  friend bool operator==(const Augmentation &, const Augmentation &) = default;
};

// Throws std::invalid_argument for out-of-range ids.
bool is_matching(const Graph &g, std::span<const LinkId> links);
inline bool is_matching(const Graph &g, const Matching &m) {
  return is_matching(g, m.links());
}

// Per-node incident matched link, kNoLink for unmatched nodes.
std::vector<LinkId> matched_link_of_nodes(const Graph &g, const Matching &m);

Weight matching_weight(const Matching &m, const QueueVector &q);

// Throws std::logic_error with a reason when a is not an alternating path or
// cycle of base whose application yields a matching.
void validate_augmentation(const Graph &g, const Matching &base,
                           const Augmentation &a);
bool is_valid_augmentation(const Graph &g, const Matching &base,
                           const Augmentation &a);

Weight augmentation_gain(const Graph &g, const Augmentation &a,
                         const Matching &base, const QueueVector &q);
// Gain without structural validation; used on hot paths where the structure
// is already known.
Weight augmentation_gain_unchecked(const Augmentation &a, const Matching &base,
                                   const QueueVector &q);

Matching apply_augmentation(const Graph &g, const Matching &base,
                            const Augmentation &a);
// Applies a set of pairwise disjoint augmentations. Shared base links are
// removed once.
Matching apply_augmentations(const Graph &g, const Matching &base,
                             std::span<const Augmentation> set);

int augmentation_size(const Augmentation &a, const Matching &base);

bool are_disjoint(const Graph &g, const Augmentation &a1,
                  const Augmentation &a2, const Matching &base);
bool pairwise_disjoint(const Graph &g, std::span<const Augmentation> set,
                       const Matching &base);

// Ordered node sequence visited by a path (links+1 nodes) or cycle (links
// nodes). Throws std::logic_error if the links are not chained.
std::vector<NodeId> augmentation_nodes(const Graph &g, const Augmentation &a);

}  // namespace augsched

#endif  // AUGSCHED_GRAPH_HPP_
