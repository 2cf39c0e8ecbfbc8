#pragma once

#include "bscoop/bounds.hpp"
#include "bscoop/model.hpp"

#include <string>
#include <vector>

namespace bscoop {

struct FlowNode {
  enum class Kind { Source, BaseStation, In, Coop1, Coop2, Out, Collector };
  Kind kind = Kind::Source;
  int stage = -1;  // -1 source/BS, 0 initial, round index for newcomers
  int index = 0;   // device id for node vertices, layer for BS vertices
};

struct FlowEdge {
  int from = -1;
  int to = -1;
  Rat capacity;
  bool infinite = false;
};

// Vertex tuple of one device incarnation. Initial nodes have no Coop vertices.
struct NodeTuple {
  int node_id = 0;
  int in = -1;
  int coop1 = -1;
  int coop2 = -1;
  int out = -1;
};

struct RepairRound {
  std::vector<int> failed;                // node ids, exactly t
  std::vector<std::vector<int>> helpers;  // per newcomer (failed sorted ascending), d ids
  std::vector<std::vector<Rat>> bs_r;     // per newcomer; empty = inherit from variables
};

struct RepairHistory {
  std::vector<RepairRound> rounds;
};

struct FlowGraph {
  std::vector<FlowNode> nodes;
  std::vector<FlowEdge> edges;
  int source = -1;
  int n = 0;
  std::vector<int> bs_nodes;                         // layer l-1 -> vertex
  std::vector<NodeTuple> initial;                    // per device id
  std::vector<std::vector<NodeTuple>> round_tuples;  // per round, per newcomer
  std::vector<int> latest_out;                       // per device id -> current Out vertex

  int add_node(FlowNode::Kind kind, int stage, int index);
  void add_edge(int from, int to, const Rat& capacity);
  void add_infinite_edge(int from, int to);
};

// Builds the layered graph for a concrete repair history: source feeds initial
// stores and the BS chain; every repair round adds (In, Coop1, Coop2, Out)
// tuples wired with beta / beta' / r_l*beta / alpha capacities.
FlowGraph build_history_graph(const SystemParams& p, const RepairVariables& v,
                              const RepairHistory& h, const Rat& alpha);

// Exact max-flow from the source to a collector attached to the latest Out of
// k distinct devices. When edge_flows is given it receives the flow carried by
// each g.edges entry in order.
Rat max_flow(const FlowGraph& g, const std::vector<int>& collector_ids,
             std::vector<Rat>* edge_flows = nullptr);

// Minimum of max_flow over every k-subset of devices.
Rat min_cut_over_collectors(const FlowGraph& g, const SystemParams& p);

// A repair history in which round j's newcomers draw helpers from every
// previously selected device, so the collector below realizes the cut value
// of the given composition.
struct WorstCase {
  RepairHistory history;
  std::vector<int> collector;  // u0 preserved initial ids + selected newcomers
};
WorstCase canonical_worst_history(const SystemParams& p, const CompositionVector& comp);

// Total capacity crossing from the complement into `sink_side` (collector side).
// Throws if an infinite edge crosses.
Rat cut_capacity(const FlowGraph& g, const std::vector<bool>& sink_side);

// Debug export: node list plus capacity-labeled edge list in DOT format.
std::string graph_to_dot(const FlowGraph& g);

}  // namespace bscoop
