//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/decomposition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace augsched {

namespace {

Weight weight_of(std::span<const LinkId> links, const QueueVector &q) {
  Weight w = 0;
  for (LinkId e : links)
    w += q.at(e);
  return w;
}

Weight set_gain(std::span<const Augmentation> set, const Matching &current,
                const QueueVector &q) {
  Weight total = 0;
  for (const Augmentation &a : set)
    total += augmentation_gain_unchecked(a, current, q);
  return total;
}

void require_k(int k) {
  if (k < 1)
    throw std::domain_error("k must be at least 1");
}

// Walks the component starting with link `first` leaving node `from`.
std::vector<LinkId> walk(const Graph &g,
                         const std::vector<std::vector<LinkId>> &incident,
                         NodeId from, LinkId first, std::vector<char> &seen) {
  std::vector<LinkId> out;
  LinkId e = first;
  NodeId at = from;
  while (e != kNoLink && !seen[static_cast<std::size_t>(e)]) {
    seen[static_cast<std::size_t>(e)] = 1;
    out.push_back(e);
    at = g.link(e).other(at);
    LinkId next = kNoLink;
    for (LinkId f : incident[static_cast<std::size_t>(at)])
      if (f != e)
        next = f;
    e = next;
  }
  return out;
}

DifferenceComponent make_component(AugmentationKind kind,
                                   std::vector<LinkId> links,
                                   const Matching &current) {
  DifferenceComponent c;
  c.kind = kind;
  c.links = std::move(links);
  for (LinkId e : c.links)
    (current.contains(e) ? c.current_links : c.optimal_links).push_back(e);
  return c;
}

// Re-orients a path so that it starts at the endpoint with the lower node id.
std::vector<LinkId> orient_path(const Graph &g, std::vector<LinkId> links) {
  if (links.size() < 2) {
    return links;
  }
  const std::vector<NodeId> nodes =
      augmentation_nodes(g, {AugmentationKind::kPath, links});
  if (nodes.back() < nodes.front())
    std::reverse(links.begin(), links.end());
  return links;
}

}  // namespace

std::vector<DifferenceComponent>
symmetric_difference_components(const Graph &g, const Matching &current,
                                const Matching &optimal) {
  if (!is_matching(g, current) || !is_matching(g, optimal))
    throw std::invalid_argument("symmetric difference needs two matchings");

  std::vector<std::vector<LinkId>> incident(
      static_cast<std::size_t>(g.node_count()));
  for (LinkId e = 0; e < g.link_count(); ++e) {
    if (current.contains(e) == optimal.contains(e))
      continue;
    const Link &l = g.link(e);
    incident[static_cast<std::size_t>(l.u)].push_back(e);
    incident[static_cast<std::size_t>(l.v)].push_back(e);
  }
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (incident[static_cast<std::size_t>(v)].size() > 2)
      throw std::logic_error("node " + std::to_string(v) +
                             " has degree above 2 in the symmetric difference");

  std::vector<DifferenceComponent> out;
  std::vector<char> seen(static_cast<std::size_t>(g.link_count()), 0);

  // Paths, discovered from their lower-id endpoint.
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto &inc = incident[static_cast<std::size_t>(v)];
    if (inc.size() != 1 || seen[static_cast<std::size_t>(inc[0])])
      continue;
    out.push_back(make_component(AugmentationKind::kPath,
                                 walk(g, incident, v, inc[0], seen), current));
  }

  // Whatever is left lies on cycles.
  for (LinkId e = 0; e < g.link_count(); ++e) {
    if (seen[static_cast<std::size_t>(e)] ||
        current.contains(e) == optimal.contains(e))
      continue;
    const Link &l = g.link(e);
    auto other_at = [&](NodeId x) {
      for (LinkId f : incident[static_cast<std::size_t>(x)])
        if (f != e)
          return f;
      return kNoLink;
    };
    const LinkId via_u = other_at(l.u);
    const LinkId via_v = other_at(l.v);
    if (via_u == kNoLink || via_v == kNoLink)
      throw std::logic_error("open component left after path extraction");
    // Leave e through the endpoint whose next link has the lower id.
    const NodeId from = via_v < via_u ? l.u : l.v;
    auto links = walk(g, incident, from, e, seen);
    if (links.size() % 2 != 0)
      throw std::logic_error("odd cycle in symmetric difference");
    out.push_back(
        make_component(AugmentationKind::kCycle, std::move(links), current));
  }
  return out;
}

std::vector<Augmentation> path_offset_set(const DifferenceComponent &path,
                                          int k, int offset) {
  require_k(k);
  if (offset < 1 || offset > k + 1)
    throw std::domain_error("offset must lie in 1..k+1");
  const std::vector<LinkId> &optimal = path.optimal_links;
  auto is_optimal = [&](LinkId e) {
    return std::find(optimal.begin(), optimal.end(), e) != optimal.end();
  };

  std::vector<Augmentation> out;
  Augmentation fragment;
  int m = 0;
  for (LinkId e : path.links) {
    if (is_optimal(e)) {
      ++m;
      if (m >= offset && (m - offset) % (k + 1) == 0) {
        if (!fragment.empty())
          out.push_back(std::move(fragment));
        fragment = {};
        continue;
      }
    }
    fragment.links.push_back(e);
  }
  if (!fragment.empty())
    out.push_back(std::move(fragment));
  return out;
}

std::vector<Augmentation> decompose_path(const Graph &g,
                                         const DifferenceComponent &path,
                                         const Matching &current,
                                         const QueueVector &q, int k) {
  require_k(k);
  if (path.kind != AugmentationKind::kPath)
    throw std::invalid_argument("decompose_path needs a path component");
  if (path.size() <= k)
    return {path.as_augmentation()};

  std::vector<Augmentation> best;
  Weight best_gain = 0;
  for (int offset = 1; offset <= k + 1; ++offset) {
    auto candidate = path_offset_set(path, k, offset);
    const Weight gain = set_gain(candidate, current, q);
    if (offset == 1 || gain > best_gain) {
      best = std::move(candidate);
      best_gain = gain;
    }
  }

  const Weight c1 = weight_of(path.optimal_links, q);
  const Weight c2 = weight_of(path.current_links, q);
  if ((k + 1) * best_gain < k * c1 - (k + 1) * c2)
    throw std::logic_error("path decomposition misses the k/(k+1) gain bound");
  for (const Augmentation &a : best) {
    validate_augmentation(g, current, a);
    if (augmentation_size(a, current) > k)
      throw std::logic_error("path fragment exceeds size k");
  }
  return best;
}

std::vector<Augmentation> decompose_cycle(const Graph &g,
                                          const DifferenceComponent &cycle,
                                          const Matching &current,
                                          const QueueVector &q, int k) {
  require_k(k);
  if (cycle.kind != AugmentationKind::kCycle)
    throw std::invalid_argument("decompose_cycle needs a cycle component");
  if (cycle.size() <= k)
    return {cycle.as_augmentation()};

  LinkId cut = kNoLink;
  for (LinkId e : cycle.optimal_links)
    if (cut == kNoLink || q.at(e) < q.at(cut) ||
        (q.at(e) == q.at(cut) && e < cut))
      cut = e;

  const auto pos = static_cast<std::size_t>(
      std::find(cycle.links.begin(), cycle.links.end(), cut) -
      cycle.links.begin());
  std::vector<LinkId> rest;
  for (std::size_t i = 1; i < cycle.links.size(); ++i)
    rest.push_back(cycle.links[(pos + i) % cycle.links.size()]);

  const DifferenceComponent path =
      make_component(AugmentationKind::kPath, orient_path(g, std::move(rest)),
                     current);
  auto out = decompose_path(g, path, current, q, k);

  const Weight gain = set_gain(out, current, q);
  const Weight c1 = weight_of(cycle.optimal_links, q);
  const Weight c2 = weight_of(cycle.current_links, q);
  if ((k + 2) * gain < k * c1 - (k + 2) * c2)
    throw std::logic_error("cycle decomposition misses the k/(k+2) gain bound");
  return out;
}

std::vector<Augmentation> build_target_set(const Graph &g,
                                           const Matching &current,
                                           const QueueVector &q, int k,
                                           const OracleResult &optimum) {
  require_k(k);
  std::vector<Augmentation> out;
  for (const DifferenceComponent &c :
       symmetric_difference_components(g, current, optimum.optimal_matching)) {
    auto part = c.kind == AugmentationKind::kPath
                    ? decompose_path(g, c, current, q, k)
                    : decompose_cycle(g, c, current, q, k);
    for (auto &a : part)
      out.push_back(std::move(a));
  }

  for (const Augmentation &a : out)
    if (augmentation_size(a, current) > k)
      throw std::logic_error("target augmentation exceeds size k");
  if (!pairwise_disjoint(g, out, current))
    throw std::logic_error("target augmentations are not disjoint");
  const Weight augmented = matching_weight(apply_augmentations(g, current, out), q);
  if ((k + 2) * augmented < k * optimum.optimal_weight)
    throw std::logic_error("target set misses the k/(k+2) weight bound");
  return out;
}

std::vector<Augmentation> build_target_set(const Graph &g,
                                           const Matching &current,
                                           const QueueVector &q, int k,
                                           int cap) {
  return build_target_set(g, current, q, k, max_weight_matching(g, q, cap));
}

}  // namespace augsched
