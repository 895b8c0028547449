//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "augsched/protocol.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace augsched {

RandomChoices::RandomChoices(RandomStream &rng, double p) : rng_(rng), p_(p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("seed probability must lie in (0,1)");
}

bool RandomChoices::is_seed(NodeId) { return draw_bernoulli(rng_, p_); }

int RandomChoices::intended_size(NodeId, int k) {
  return static_cast<int>(draw_index(rng_, static_cast<std::size_t>(k))) + 1;
}

std::size_t RandomChoices::pick_neighbor(int, NodeId,
                                         std::span<const NodeId> candidates) {
  return draw_index(rng_, candidates.size());
}

ScriptedChoices::ScriptedChoices(std::vector<NodeId> seeds,
                                 std::map<NodeId, int> sizes,
                                 std::map<std::pair<int, NodeId>, NodeId> picks)
    : seeds_(std::move(seeds)), sizes_(std::move(sizes)),
      picks_(std::move(picks)) {}

bool ScriptedChoices::is_seed(NodeId v) {
  return std::find(seeds_.begin(), seeds_.end(), v) != seeds_.end();
}

int ScriptedChoices::intended_size(NodeId seed, int k) {
  auto it = sizes_.find(seed);
  return it == sizes_.end() ? k : it->second;
}

std::size_t ScriptedChoices::pick_neighbor(int phase, NodeId v,
                                           std::span<const NodeId> candidates) {
  auto it = picks_.find({phase, v});
  if (it == picks_.end())
    throw std::out_of_range("no scripted pick for node " + std::to_string(v) +
                            " in phase " + std::to_string(phase));
  auto pos = std::find(candidates.begin(), candidates.end(), it->second);
  if (pos == candidates.end())
    throw std::out_of_range("scripted pick " + std::to_string(it->second) +
                            " is not a new neighbour of " + std::to_string(v));
  return static_cast<std::size_t>(pos - candidates.begin());
}

std::vector<NodeId> elect_seeds(const Graph &g, double p, RandomStream &rng) {
  RandomChoices choices(rng, p);
  std::vector<NodeId> seeds;
  for (NodeId v = 0; v < g.node_count(); ++v)
    if (choices.is_seed(v))
      seeds.push_back(v);
  return seeds;
}

std::vector<Augmentation> ControlOutcome::built() const {
  std::vector<Augmentation> out;
  out.reserve(augmentations.size());
  for (const auto &a : augmentations)
    out.push_back(a.as_augmentation());
  return out;
}

std::vector<Augmentation> ControlOutcome::switched() const {
  std::vector<Augmentation> out;
  for (const auto &a : augmentations)
    if (a.switched())
      out.push_back(a.as_augmentation());
  return out;
}

namespace {

struct Request {
  int aug;
  NodeId from;
  NodeId to;
  LinkId link;
  bool base;
};

class ControlPart {
public:
  ControlPart(const Graph &g, const QueueVector &q, const Matching &prev,
              int k, ControlChoices &choices)
      : g_(g), q_(q), prev_(prev), k_(k), choices_(choices),
        matched_(matched_link_of_nodes(g, prev)),
        in_prev_(static_cast<std::size_t>(g.link_count()), 0),
        states_(static_cast<std::size_t>(g.node_count())),
        req_count_(static_cast<std::size_t>(g.node_count()), 0) {
    for (LinkId e : prev.links())
      in_prev_[static_cast<std::size_t>(e)] = 1;
  }

  ControlOutcome run() {
    elect();
    const int growth_phases = 2 * k_ + 1;
    for (int phase = 1; phase <= growth_phases; ++phase)
      grow(phase);

    // Phase budget exhausted: still-active nodes stop here.
    for (NodeId v = 0; v < g_.node_count(); ++v)
      if (state(v).role == NodeRole::kActive)
        make_terminus(v, nullptr);

    terminate();
    back_propagate();

    out_.trace.phase_count = 4 * k_ + 2;
    out_.trace.final_states = states_;
    out_.new_matching = apply_switch_decisions(g_, prev_, out_);
    return std::move(out_);
  }

private:
  NodeState &state(NodeId v) { return states_[static_cast<std::size_t>(v)]; }
  bool in_prev(LinkId e) const { return in_prev_[static_cast<std::size_t>(e)]; }
  static bool has_link(const AugmentationBuild &a, LinkId e) {
    return std::find(a.links.begin(), a.links.end(), e) != a.links.end();
  }

  void elect() {
    std::vector<NodeId> seeds;
    for (NodeId v = 0; v < g_.node_count(); ++v)
      if (choices_.is_seed(v))
        seeds.push_back(v);
    for (NodeId s : seeds) {
      const int size = choices_.intended_size(s, k_);
      if (size < 1 || size > k_)
        throw std::out_of_range("intended size outside 1..k");
      NodeState &st = state(s);
      st.is_seed = true;
      st.intended_size = size;
      st.role = NodeRole::kActive;
      st.aug_id = static_cast<int>(out_.augmentations.size());
      AugmentationBuild build;
      build.seed_node = s;
      build.intended_size = size;
      build.path_nodes.push_back(s);
      out_.augmentations.push_back(std::move(build));
    }
  }

  void add_link(AugmentationBuild &a, LinkId e) {
    a.links.push_back(e);
    if (in_prev(e)) {
      a.running_gain -= q_[e];
    } else {
      a.running_gain += q_[e];
      ++a.nonbase_count;
    }
  }

  void make_terminus(NodeId v, PhaseRecord *record) {
    NodeState &st = state(v);
    st.role = NodeRole::kTerminus;
    out_.augmentations[static_cast<std::size_t>(st.aug_id)].status =
        BuildStatus::kTerminated;
    if (record)
      record->new_termini.push_back(v);
  }

  void grow(int phase) {
    PhaseRecord record{phase, {}, {}};
    for (NodeId v = 0; v < g_.node_count(); ++v)
      if (state(v).role == NodeRole::kActive)
        record.active.push_back(v);

    requests_.clear();
    for (NodeId v : record.active) {
      const int id = state(v).aug_id;
      AugmentationBuild &a = out_.augmentations[static_cast<std::size_t>(id)];
      const bool needs_base = a.links.empty()
                                  ? matched_[static_cast<std::size_t>(v)] != kNoLink
                                  : !in_prev(a.links.back());

      if (needs_base) {
        const LinkId e = matched_[static_cast<std::size_t>(v)];
        if (e == kNoLink || has_link(a, e)) {
          make_terminus(v, &record);
          continue;
        }
        // Base links join before the REQ goes out.
        add_link(a, e);
        requests_.push_back({id, v, g_.link(e).other(v), e, true});
        continue;
      }

      if (!a.links.empty() && a.nonbase_count >= a.intended_size) {
        make_terminus(v, &record);
        continue;
      }
      candidates_.clear();
      candidate_links_.clear();
      for (const Neighbor &nb : g_.neighbors(v)) {
        if (has_link(a, nb.link))
          continue;
        candidates_.push_back(nb.node);
        candidate_links_.push_back(nb.link);
      }
      if (candidates_.empty()) {
        make_terminus(v, &record);
        continue;
      }
      const std::size_t pick = choices_.pick_neighbor(phase, v, candidates_);
      if (pick >= candidates_.size())
        throw std::out_of_range("neighbour pick out of range");
      requests_.push_back({id, v, candidates_[pick], candidate_links_[pick], false});
    }

    for (const Request &r : requests_) {
      ++req_count_[static_cast<std::size_t>(r.to)];
      out_.trace.messages.push_back({MessageKind::kReq, r.from, r.to, r.link, phase});
    }
    // All REQs of the phase are judged against the state at its start; a node
    // can only be claimed by a lone REQ, so ACKs below cannot interfere.
    for (const Request &r : requests_) {
      const bool collision = req_count_[static_cast<std::size_t>(r.to)] > 1;
      const bool used = state(r.to).aug_id != -1;
      if (collision || used) {
        make_terminus(r.from, &record);
        continue;
      }
      AugmentationBuild &a = out_.augmentations[static_cast<std::size_t>(r.aug)];
      if (!r.base)
        add_link(a, r.link);
      a.path_nodes.push_back(r.to);
      out_.trace.messages.push_back({MessageKind::kAck, r.to, r.from, r.link, phase});
      state(r.from).role = NodeRole::kUsed;
      NodeState &target = state(r.to);
      target.role = NodeRole::kActive;
      target.aug_id = r.aug;
    }
    for (const Request &r : requests_)
      req_count_[static_cast<std::size_t>(r.to)] = 0;

    out_.trace.growth_phases.push_back(std::move(record));
  }

  void terminate() {
    for (AugmentationBuild &a : out_.augmentations) {
      const NodeId seed = a.seed_node;
      const NodeId w = a.terminus();
      // The terminus must be the open end of the path: a trailing base link
      // whose REQ was refused leaves the terminus one node short of the end.
      const bool open_end = a.links.size() + 1 == a.path_nodes.size();
      if (w != seed && open_end && !a.links.empty() && in_prev(a.links.front()) &&
          in_prev(a.links.back()) && a.nonbase_count < a.intended_size) {
        const LinkId closing = g_.find_link(seed, w);
        if (closing != kNoLink && !has_link(a, closing)) {
          if (in_prev(closing))
            throw std::logic_error("closing link belongs to the previous matching");
          add_link(a, closing);
          a.kind = AugmentationKind::kCycle;
        }
      }
      const Weight recomputed =
          augmentation_gain_unchecked(a.as_augmentation(), prev_, q_);
      if (recomputed != a.running_gain)
        throw std::logic_error("running gain diverged from recomputed gain");
      a.switch_decision = a.running_gain > 0;
    }
  }

  void back_propagate() {
    const int first = 2 * k_ + 2;
    for (std::size_t id = 0; id < out_.augmentations.size(); ++id) {
      const AugmentationBuild &a = out_.augmentations[id];
      const auto &nodes = a.path_nodes;
      const std::size_t hops = nodes.size() - 1;
      for (std::size_t i = hops; i >= 1; --i) {
        const int phase = first + static_cast<int>(hops - i);
        if (phase > 4 * k_ + 2)
          throw std::logic_error("decision relay overruns the control part");
        out_.trace.decisions.push_back({phase, nodes[i], nodes[i - 1], a.links[i - 1],
                                        static_cast<int>(id)});
      }
    }
  }

  const Graph &g_;
  const QueueVector &q_;
  const Matching &prev_;
  const int k_;
  ControlChoices &choices_;
  std::vector<LinkId> matched_;
  std::vector<char> in_prev_;
  std::vector<NodeState> states_;
  std::vector<int> req_count_;
  std::vector<Request> requests_;
  std::vector<NodeId> candidates_;
  std::vector<LinkId> candidate_links_;
  ControlOutcome out_;
};

}  // namespace

ControlOutcome run_control_part(const Graph &g, const QueueVector &q,
                                const Matching &prev, int k,
                                ControlChoices &choices) {
  if (k < 1)
    throw std::domain_error("k must be at least 1");
  if (q.size() != static_cast<std::size_t>(g.link_count()))
    throw std::invalid_argument("queue vector size does not match graph");
  if (!is_matching(g, prev))
    throw std::invalid_argument("previous schedule is not a matching");
  return ControlPart(g, q, prev, k, choices).run();
}

ControlOutcome run_control_part(const Graph &g, const QueueVector &q,
                                const Matching &prev, int k, double p,
                                RandomStream &rng) {
  RandomChoices choices(rng, p);
  return run_control_part(g, q, prev, k, choices);
}

Matching apply_switch_decisions(const Graph &g, const Matching &prev,
                                const ControlOutcome &outcome) {
  return apply_augmentations(g, prev, outcome.switched());
}

std::vector<std::uint8_t> mask_zero_queues(const Matching &m,
                                           const QueueVector &q) {
  std::vector<std::uint8_t> active(q.size(), 0);
  for (LinkId e : m.links())
    if (q.at(e) > 0)
      active[static_cast<std::size_t>(e)] = 1;
  return active;
}

std::vector<int> control_transmissions(const ControlTrace &trace,
                                       NodeId node_count) {
  std::vector<int> sent(static_cast<std::size_t>(node_count), 0);
  for (const PhaseMessage &m : trace.messages)
    ++sent.at(static_cast<std::size_t>(m.from));
  for (const DecisionHop &h : trace.decisions)
    ++sent.at(static_cast<std::size_t>(h.from));
  return sent;
}

void verify_outcome(const Graph &g, const QueueVector &q, const Matching &prev,
                    int k, const ControlOutcome &outcome) {
  auto fail = [](const std::string &what) { throw std::logic_error(what); };

  if (!is_matching(g, outcome.new_matching))
    fail("new schedule is not a matching");
  if (outcome.trace.phase_count != 4 * k + 2)
    fail("trace does not span 4k+2 phases");
  for (const PhaseMessage &m : outcome.trace.messages)
    if (m.phase < 1 || m.phase > 2 * k + 1)
      fail("handshake outside the growth phases");
  for (const DecisionHop &h : outcome.trace.decisions)
    if (h.phase < 2 * k + 2 || h.phase > 4 * k + 2)
      fail("decision relay outside the back-propagation phases");

  const std::vector<Augmentation> built = outcome.built();
  Weight switched_gain = 0;
  for (std::size_t i = 0; i < built.size(); ++i) {
    const AugmentationBuild &b = outcome.augmentations[i];
    // Validity covers alternation and consistency: every node touched by a
    // new link has its previous link inside the same augmentation.
    validate_augmentation(g, prev, built[i]);
    const int size = augmentation_size(built[i], prev);
    if (size > k || size != b.nonbase_count || b.nonbase_count > b.intended_size)
      fail("augmentation size bookkeeping broken");
    if (augmentation_gain_unchecked(built[i], prev, q) != b.running_gain)
      fail("running gain mismatch");
    if (!b.switch_decision.has_value() || *b.switch_decision != (b.running_gain > 0))
      fail("switch decision does not follow the gain sign");
    if (b.switched())
      switched_gain += b.running_gain;
  }
  if (!pairwise_disjoint(g, built, prev))
    fail("augmentations are not disjoint");
  if (apply_augmentations(g, prev, outcome.switched()) != outcome.new_matching)
    fail("new schedule differs from the switched augmentations");
  const Weight before = matching_weight(prev, q);
  const Weight after = matching_weight(outcome.new_matching, q);
  if (after < before + switched_gain)
    fail("weight increase below the sum of switched gains");
  for (int sent : control_transmissions(outcome.trace, g.node_count()))
    if (sent > 3)
      fail("node sent more than three control messages");
}

std::string format_trace(const ControlTrace &trace) {
  std::ostringstream out;
  for (const PhaseMessage &m : trace.messages)
    out << "phase=" << m.phase
        << " kind=" << (m.kind == MessageKind::kReq ? "REQ" : "ACK")
        << " from=" << m.from << " to=" << m.to << " link=" << m.link << '\n';
  return out.str();
}

}  // namespace augsched
