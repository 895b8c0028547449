//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace augsched {

Graph::Graph(NodeId node_count) {
  if (node_count < 0)
    throw std::invalid_argument("node count must be nonnegative");
  adj_.resize(static_cast<std::size_t>(node_count));
}

LinkId Graph::add_link(NodeId u, NodeId v) {
  if (!valid_node(u) || !valid_node(v))
    throw std::invalid_argument("link endpoint out of range: (" +
                                std::to_string(u) + "," + std::to_string(v) +
                                ")");
  if (u == v)
    throw std::invalid_argument("self-loop at node " + std::to_string(u));
  if (find_link(u, v) != kNoLink)
    throw std::invalid_argument("duplicate link (" + std::to_string(u) + "," +
                                std::to_string(v) + ")");

  const auto id = static_cast<LinkId>(links_.size());
  links_.push_back({u, v});
  adj_[static_cast<std::size_t>(u)].push_back({v, id});
  adj_[static_cast<std::size_t>(v)].push_back({u, id});
  return id;
}

int Graph::max_degree() const noexcept {
  int best = 0;
  for (const auto &a : adj_)
    best = std::max(best, static_cast<int>(a.size()));
  return best;
}

LinkId Graph::find_link(NodeId u, NodeId v) const {
  if (!valid_node(u) || !valid_node(v))
    return kNoLink;
  const auto &a = adj_[static_cast<std::size_t>(u)];
  const auto &b = adj_[static_cast<std::size_t>(v)];
  const auto &shorter = a.size() <= b.size() ? a : b;
  const NodeId target = a.size() <= b.size() ? v : u;
  for (const Neighbor &n : shorter)
    if (n.node == target)
      return n.link;
  return kNoLink;
}

bool Graph::consistent() const {
  std::size_t entries = 0;
  for (NodeId v = 0; v < node_count(); ++v) {
    for (const Neighbor &n : neighbors(v)) {
      if (!valid_link(n.link))
        return false;
      const Link &l = link(n.link);
      if (!l.touches(v) || l.other(v) != n.node)
        return false;
      ++entries;
    }
  }
  for (const Link &l : links_)
    if (l.u == l.v || !valid_node(l.u) || !valid_node(l.v))
      return false;
  return entries == 2 * links_.size();
}

namespace {

[[noreturn]] void parse_error(int line_no, const std::string &msg) {
  throw std::invalid_argument("graph line " + std::to_string(line_no) + ": " +
                              msg);
}

}  // namespace

Graph parse_graph(std::istream &in) {
  Graph g;
  bool have_header = false;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word))
      continue;

    if (word == "nodes") {
      if (have_header)
        parse_error(line_no, "duplicate nodes header");
      long long n = -1;
      if (!(ls >> n) || n <= 0)
        parse_error(line_no, "expected positive node count");
      g = Graph(static_cast<NodeId>(n));
      have_header = true;
    } else if (word == "link") {
      if (!have_header)
        parse_error(line_no, "link before nodes header");
      long long u = -1;
      long long v = -1;
      if (!(ls >> u >> v))
        parse_error(line_no, "expected two node ids");
      try {
        g.add_link(static_cast<NodeId>(u), static_cast<NodeId>(v));
      } catch (const std::invalid_argument &e) {
        parse_error(line_no, e.what());
      }
    } else {
      parse_error(line_no, "unknown declaration '" + word + "'");
    }
    std::string extra;
    if (ls >> extra)
      parse_error(line_no, "trailing token '" + extra + "'");
  }
  if (!have_header)
    throw std::invalid_argument("graph: missing nodes header");
  return g;
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

Graph load_graph(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open graph file " + path.string());
  try {
    return parse_graph(in);
  } catch (const std::invalid_argument &e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

std::string format_graph(const Graph &g) {
  std::ostringstream out;
  out << "nodes " << g.node_count() << '\n';
  for (const Link &l : g.links())
    out << "link " << l.u << ' ' << l.v << '\n';
  return out.str();
}

Matching::Matching(std::vector<LinkId> links) : links_(std::move(links)) {
  std::sort(links_.begin(), links_.end());
  links_.erase(std::unique(links_.begin(), links_.end()), links_.end());
}

bool Matching::contains(LinkId e) const noexcept {
  return std::binary_search(links_.begin(), links_.end(), e);
}

QueueVector::QueueVector(std::vector<Weight> q) : q_(std::move(q)) {
  for (Weight w : q_)
    if (w < 0)
      throw std::invalid_argument("queue length must be nonnegative");
}

void QueueVector::set(LinkId e, Weight value) {
  if (value < 0)
    throw std::invalid_argument("queue length must be nonnegative");
  q_.at(static_cast<std::size_t>(e)) = value;
}

Weight QueueVector::total() const noexcept {
  return std::accumulate(q_.begin(), q_.end(), Weight{0});
}

bool is_matching(const Graph &g, std::span<const LinkId> links) {
  std::vector<char> used(static_cast<std::size_t>(g.node_count()), 0);
  bool ok = true;
  for (LinkId e : links) {
    if (!g.valid_link(e))
      throw std::invalid_argument("invalid link id " + std::to_string(e));
    const Link &l = g.link(e);
    auto &a = used[static_cast<std::size_t>(l.u)];
    auto &b = used[static_cast<std::size_t>(l.v)];
    if (a || b)
      ok = false;
    a = b = 1;
  }
  return ok;
}

std::vector<LinkId> matched_link_of_nodes(const Graph &g, const Matching &m) {
  std::vector<LinkId> out(static_cast<std::size_t>(g.node_count()), kNoLink);
  for (LinkId e : m.links()) {
    const Link &l = g.link(e);
    out[static_cast<std::size_t>(l.u)] = e;
    out[static_cast<std::size_t>(l.v)] = e;
  }
  return out;
}

Weight matching_weight(const Matching &m, const QueueVector &q) {
  Weight w = 0;
  for (LinkId e : m.links())
    w += q.at(e);
  return w;
}

namespace {

NodeId shared_node(const Link &a, const Link &b) {
  if (a.u == b.u || a.u == b.v)
    return a.u;
  if (a.v == b.u || a.v == b.v)
    return a.v;
  return kNoNode;
}

}  // namespace

std::vector<NodeId> augmentation_nodes(const Graph &g, const Augmentation &a) {
  std::vector<NodeId> nodes;
  const auto n = a.links.size();
  if (n == 0)
    return nodes;
  for (LinkId e : a.links)
    if (!g.valid_link(e))
      throw std::invalid_argument("invalid link id " + std::to_string(e));

  const Link &first = g.link(a.links[0]);
  if (a.kind == AugmentationKind::kCycle) {
    if (n < 3)
      throw std::logic_error("cycle needs at least three links");
    NodeId start = shared_node(g.link(a.links[n - 1]), first);
    if (start == kNoNode)
      throw std::logic_error("cycle does not close");
    // With two candidate shared nodes (impossible in a simple graph for n>=3)
    // the chain check below would fail.
    nodes.push_back(start);
  } else if (n == 1) {
    nodes.push_back(first.u);
  } else {
    NodeId mid = shared_node(first, g.link(a.links[1]));
    if (mid == kNoNode)
      throw std::logic_error("links 0 and 1 are not adjacent");
    nodes.push_back(first.other(mid));
  }

  NodeId cur = nodes.back();
  for (std::size_t i = 0; i < n; ++i) {
    const Link &l = g.link(a.links[i]);
    if (!l.touches(cur))
      throw std::logic_error("link " + std::to_string(a.links[i]) +
                             " does not continue the chain");
    cur = l.other(cur);
    nodes.push_back(cur);
  }
  if (a.kind == AugmentationKind::kCycle) {
    if (nodes.back() != nodes.front())
      throw std::logic_error("cycle does not return to its start");
    nodes.pop_back();
  }
  return nodes;
}

void validate_augmentation(const Graph &g, const Matching &base,
                           const Augmentation &a) {
  if (a.links.empty()) {
    if (a.kind == AugmentationKind::kCycle)
      throw std::logic_error("empty cycle");
    return;
  }
  std::vector<LinkId> sorted = a.links;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::logic_error("repeated link in augmentation");

  const std::vector<NodeId> nodes = augmentation_nodes(g, a);
  std::vector<NodeId> seen = nodes;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw std::logic_error("augmentation revisits a node");

  const auto n = a.links.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (base.contains(a.links[i]) == base.contains(a.links[i + 1]))
      throw std::logic_error("membership in base does not alternate at " +
                             std::to_string(i));
  if (a.kind == AugmentationKind::kCycle &&
      base.contains(a.links.front()) == base.contains(a.links.back()))
    throw std::logic_error("cycle does not alternate across its closure");

  // Applying must leave a matching: every endpoint of an added link may only
  // keep base links that the augmentation removes.
  for (LinkId e : a.links) {
    if (base.contains(e))
      continue;
    const Link &l = g.link(e);
    for (NodeId x : {l.u, l.v}) {
      for (const Neighbor &nb : g.neighbors(x)) {
        if (!base.contains(nb.link))
          continue;
        if (std::find(a.links.begin(), a.links.end(), nb.link) == a.links.end())
          throw std::logic_error("node " + std::to_string(x) +
                                 " keeps base link " + std::to_string(nb.link) +
                                 " outside the augmentation");
      }
    }
  }
}

bool is_valid_augmentation(const Graph &g, const Matching &base,
                           const Augmentation &a) {
  try {
    validate_augmentation(g, base, a);
    return true;
  } catch (const std::logic_error &) {
    return false;
  }
}

Weight augmentation_gain_unchecked(const Augmentation &a, const Matching &base,
                                   const QueueVector &q) {
  Weight gain = 0;
  for (LinkId e : a.links)
    gain += base.contains(e) ? -q.at(e) : q.at(e);
  return gain;
}

Weight augmentation_gain(const Graph &g, const Augmentation &a,
                         const Matching &base, const QueueVector &q) {
  validate_augmentation(g, base, a);
  return augmentation_gain_unchecked(a, base, q);
}

Matching apply_augmentations(const Graph &g, const Matching &base,
                             std::span<const Augmentation> set) {
  std::vector<char> removed(static_cast<std::size_t>(g.link_count()), 0);
  std::vector<LinkId> added;
  for (const Augmentation &a : set) {
    validate_augmentation(g, base, a);
    for (LinkId e : a.links) {
      if (base.contains(e))
        removed[static_cast<std::size_t>(e)] = 1;
      else
        added.push_back(e);
    }
  }
  std::vector<LinkId> out;
  for (LinkId e : base.links())
    if (!removed[static_cast<std::size_t>(e)])
      out.push_back(e);
  out.insert(out.end(), added.begin(), added.end());
  Matching result(std::move(out));
  if (!is_matching(g, result))
    throw std::logic_error("augmentation set does not yield a matching");
  return result;
}

Matching apply_augmentation(const Graph &g, const Matching &base,
                            const Augmentation &a) {
  return apply_augmentations(g, base, std::span<const Augmentation>(&a, 1));
}

int augmentation_size(const Augmentation &a, const Matching &base) {
  int size = 0;
  for (LinkId e : a.links)
    if (!base.contains(e))
      ++size;
  if (a.links.size() > static_cast<std::size_t>(2 * size + 1))
    throw std::logic_error("augmentation of size " + std::to_string(size) +
                           " has " + std::to_string(a.links.size()) +
                           " links");
  return size;
}

bool are_disjoint(const Graph &g, const Augmentation &a1,
                  const Augmentation &a2, const Matching &base) {
  std::vector<NodeId> touched;
  for (LinkId e : a1.links) {
    if (base.contains(e))
      continue;
    touched.push_back(g.link(e).u);
    touched.push_back(g.link(e).v);
  }
  for (LinkId e : a2.links) {
    if (base.contains(e))
      continue;
    const Link &l = g.link(e);
    if (std::find(touched.begin(), touched.end(), l.u) != touched.end() ||
        std::find(touched.begin(), touched.end(), l.v) != touched.end())
      return false;
  }
  return true;
}

bool pairwise_disjoint(const Graph &g, std::span<const Augmentation> set,
                       const Matching &base) {
  std::vector<int> owner(static_cast<std::size_t>(g.node_count()), -1);
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (LinkId e : set[i].links) {
      if (base.contains(e))
        continue;
      const Link &l = g.link(e);
      for (NodeId x : {l.u, l.v}) {
        int &o = owner[static_cast<std::size_t>(x)];
        if (o != -1 && o != static_cast<int>(i))
          return false;
        o = static_cast<int>(i);
      }
    }
  }
  return true;
}

}  // namespace augsched
