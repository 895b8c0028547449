//
// Project augsched - Copyright 2026 The augsched Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef AUGSCHED_PROTOCOL_HPP_
#define AUGSCHED_PROTOCOL_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "augsched/graph.hpp"
#include "augsched/random.hpp"

namespace augsched {

// Phase-synchronous simulation of the distributed augmentation protocol.
//
// One control part runs 4k+2 phases. Phases 1..2k+1 grow augmentations from
// randomly elected seeds by REQ/ACK handshakes; a REQ is refused when its
// target is already used or when two REQs hit the same target in one phase.
// The terminus of each augmentation may close it into a cycle through the
// seed, then switches iff the gain is positive. Phases 2k+2..4k+2 carry the
// decision back to the seed and are only accounted for, not contended.

enum class NodeRole { kInactive, kActive, kUsed, kTerminus };

struct NodeState {
  NodeRole role = NodeRole::kInactive;
  int aug_id = -1;
  int intended_size = 0;  // seeds only
  bool is_seed = false;
};

enum class BuildStatus { kGrowing, kTerminated };

struct AugmentationBuild {
  NodeId seed_node = kNoNode;
  int intended_size = 0;
  AugmentationKind kind = AugmentationKind::kPath;
  std::vector<LinkId> links;
  // Nodes reached by a completed handshake, seed first. The terminus is
  // always the last entry.
  std::vector<NodeId> path_nodes;
  int nonbase_count = 0;
  Weight running_gain = 0;
  BuildStatus status = BuildStatus::kGrowing;
  std::optional<bool> switch_decision;

  NodeId terminus() const { return path_nodes.back(); }
  bool switched() const { return switch_decision.value_or(false); }
  Augmentation as_augmentation() const { return {kind, links}; }
};

enum class MessageKind { kReq, kAck };

struct PhaseMessage {
  MessageKind kind;
  NodeId from;
  NodeId to;
  LinkId link;
  int phase;

  friend bool operator==(const PhaseMessage &, const PhaseMessage &) = default;
};

// One decision relay during back-propagation.
struct DecisionHop {
  int phase;
  NodeId from;
  NodeId to;
  LinkId link;
  int aug_id;
};

struct PhaseRecord {
  int phase;
  std::vector<NodeId> active;       // active at the start of the phase
  std::vector<NodeId> new_termini;  // became terminus during the phase
};

struct ControlTrace {
  int phase_count = 0;  // always 4k+2
  std::vector<PhaseMessage> messages;
  std::vector<DecisionHop> decisions;
  std::vector<PhaseRecord> growth_phases;
  std::vector<NodeState> final_states;
};

struct ControlOutcome {
  std::vector<AugmentationBuild> augmentations;
  Matching new_matching;
  ControlTrace trace;

  std::vector<Augmentation> built() const;
  std::vector<Augmentation> switched() const;
};

// Source of every random decision the protocol makes. Calls happen in a fixed
// order: is_seed for nodes 0..n-1, intended_size for each seed in id order,
// then pick_neighbor per phase for active nodes in id order.
class ControlChoices {
public:
  virtual ~ControlChoices() = default;
  virtual bool is_seed(NodeId v) = 0;
  virtual int intended_size(NodeId seed, int k) = 0;
  // Index into candidates, which lists new neighbours in adjacency order.
  virtual std::size_t pick_neighbor(int phase, NodeId v,
                                    std::span<const NodeId> candidates) = 0;
};

class RandomChoices final : public ControlChoices {
public:
  RandomChoices(RandomStream &rng, double p);

  bool is_seed(NodeId v) override;
  int intended_size(NodeId seed, int k) override;
  std::size_t pick_neighbor(int phase, NodeId v,
                            std::span<const NodeId> candidates) override;

private:
  RandomStream &rng_;
  double p_;
};

// Fixed decisions for reproducing hand-worked scenarios. Unscripted picks
// throw std::out_of_range.
class ScriptedChoices final : public ControlChoices {
public:
  ScriptedChoices(std::vector<NodeId> seeds, std::map<NodeId, int> sizes,
                  std::map<std::pair<int, NodeId>, NodeId> picks);

  bool is_seed(NodeId v) override;
  int intended_size(NodeId seed, int k) override;
  std::size_t pick_neighbor(int phase, NodeId v,
                            std::span<const NodeId> candidates) override;

private:
  std::vector<NodeId> seeds_;
  std::map<NodeId, int> sizes_;
  std::map<std::pair<int, NodeId>, NodeId> picks_;
};

// Each node independently with probability p, drawn in node order. Consumes
// the stream exactly as the seeding step of run_control_part does.
std::vector<NodeId> elect_seeds(const Graph &g, double p, RandomStream &rng);

ControlOutcome run_control_part(const Graph &g, const QueueVector &q,
                                const Matching &prev, int k,
                                ControlChoices &choices);
ControlOutcome run_control_part(const Graph &g, const QueueVector &q,
                                const Matching &prev, int k, double p,
                                RandomStream &rng);

Matching apply_switch_decisions(const Graph &g, const Matching &prev,
                                const ControlOutcome &outcome);

// 1 exactly on member links with a positive queue.
std::vector<std::uint8_t> mask_zero_queues(const Matching &m,
                                           const QueueVector &q);

// REQ, ACK and decision relays sent by each node.
std::vector<int> control_transmissions(const ControlTrace &trace,
                                       NodeId node_count);

// Checks every post-condition of a control part and throws std::logic_error
// naming the first violation.
void verify_outcome(const Graph &g, const QueueVector &q, const Matching &prev,
                    int k, const ControlOutcome &outcome);

// One "phase=<n> kind=<REQ|ACK> from=<u> to=<v> link=<id>" line per message.
std::string format_trace(const ControlTrace &trace);

}  // namespace augsched

#endif  // AUGSCHED_PROTOCOL_HPP_
