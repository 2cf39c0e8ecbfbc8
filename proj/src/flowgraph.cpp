#include "bscoop/flowgraph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bscoop {

int FlowGraph::add_node(FlowNode::Kind kind, int stage, int index) {
  nodes.push_back(FlowNode{kind, stage, index});
  return static_cast<int>(nodes.size()) - 1;
}

void FlowGraph::add_edge(int from, int to, const Rat& capacity) {
  if (capacity < 0) throw std::invalid_argument("negative edge capacity");
  if (capacity == 0) return;
  edges.push_back(FlowEdge{from, to, capacity, false});
}

void FlowGraph::add_infinite_edge(int from, int to) {
  edges.push_back(FlowEdge{from, to, Rat(0), true});
}

FlowGraph build_history_graph(const SystemParams& p, const RepairVariables& v,
                              const RepairHistory& h, const Rat& alpha) {
  FlowGraph g;
  g.n = p.n;
  g.source = g.add_node(FlowNode::Kind::Source, -1, 0);

  // BS chain: source feeds the top layer, each layer feeds the one below.
  g.bs_nodes.assign(p.M, -1);
  for (int l = p.M - 1; l >= 0; --l)
    g.bs_nodes[l] = g.add_node(FlowNode::Kind::BaseStation, -1, l + 1);
  if (p.M > 0) {
    g.add_edge(g.source, g.bs_nodes[p.M - 1], p.F);
    for (int l = p.M - 1; l >= 1; --l) g.add_edge(g.bs_nodes[l], g.bs_nodes[l - 1], p.F);
  }

  g.initial.resize(p.n);
  g.latest_out.assign(p.n, -1);
  for (int id = 1; id <= p.n; ++id) {
    NodeTuple tup;
    tup.node_id = id;
    tup.in = g.add_node(FlowNode::Kind::In, 0, id);
    tup.out = g.add_node(FlowNode::Kind::Out, 0, id);
    g.add_edge(g.source, tup.in, alpha);
    g.add_infinite_edge(tup.in, tup.out);
    g.initial[id - 1] = tup;
    g.latest_out[id - 1] = tup.out;
  }

  int stage = 0;
  for (const auto& round : h.rounds) {
    ++stage;
    if (static_cast<int>(round.failed.size()) != p.t)
      throw std::invalid_argument("history round must fail exactly t nodes");
    std::vector<int> failed = round.failed;
    std::sort(failed.begin(), failed.end());
    if (std::adjacent_find(failed.begin(), failed.end()) != failed.end())
      throw std::invalid_argument("history round repeats a failed node");
    for (int id : failed)
      if (id < 1 || id > p.n) throw std::invalid_argument("failed id out of range");
    if (static_cast<int>(round.helpers.size()) != p.t)
      throw std::invalid_argument("history round needs one helper set per newcomer");

    std::vector<NodeTuple> tuples(p.t);
    for (int i = 0; i < p.t; ++i) {
      NodeTuple tup;
      tup.node_id = failed[i];
      tup.in = g.add_node(FlowNode::Kind::In, stage, failed[i]);
      tup.coop1 = g.add_node(FlowNode::Kind::Coop1, stage, failed[i]);
      tup.coop2 = g.add_node(FlowNode::Kind::Coop2, stage, failed[i]);
      tup.out = g.add_node(FlowNode::Kind::Out, stage, failed[i]);
      tuples[i] = tup;
    }

    for (int i = 0; i < p.t; ++i) {
      const auto& helpers = round.helpers[i];
      if (static_cast<int>(helpers.size()) != p.d)
        throw std::invalid_argument("newcomer needs exactly d helpers");
      std::set<int> seen;
      for (int hid : helpers) {
        if (hid < 1 || hid > p.n) throw std::invalid_argument("helper id out of range");
        if (std::binary_search(failed.begin(), failed.end(), hid))
          throw std::invalid_argument("helper is failed in the same round");
        if (!seen.insert(hid).second) throw std::invalid_argument("duplicate helper");
        g.add_edge(g.latest_out[hid - 1], tuples[i].in, v.beta);
      }

      g.add_infinite_edge(tuples[i].in, tuples[i].coop1);
      g.add_infinite_edge(tuples[i].coop1, tuples[i].coop2);
      g.add_edge(tuples[i].coop2, tuples[i].out, alpha);

      const std::vector<Rat>& r =
          (i < static_cast<int>(round.bs_r.size()) && !round.bs_r[i].empty()) ? round.bs_r[i]
                                                                              : v.r;
      if (static_cast<int>(r.size()) != p.M)
        throw std::invalid_argument("BS usage vector must have length M");
      for (int l = 0; l < p.M; ++l) {
        if (v.selector.uses(l) && r[l] > 0) g.add_edge(g.bs_nodes[l], tuples[i].coop1, r[l] * v.beta);
      }
    }

    // cooperative exchange between newcomers of the same round
    for (int i = 0; i < p.t; ++i) {
      for (int j = 0; j < p.t; ++j) {
        if (i != j) g.add_edge(tuples[i].coop1, tuples[j].coop2, v.beta_prime);
      }
    }

    for (int i = 0; i < p.t; ++i) g.latest_out[failed[i] - 1] = tuples[i].out;
    g.round_tuples.push_back(std::move(tuples));
  }
  return g;
}

namespace {

// Dinic over rational capacities. Infinite capacities become a finite value
// strictly larger than any possible cut.
struct Dinic {
  struct Arc {
    int to;
    Rat cap;
    int rev;
  };
  std::vector<std::vector<Arc>> adj;
  std::vector<int> level, iter;

  explicit Dinic(int n) : adj(n), level(n), iter(n) {}

  void add(int from, int to, const Rat& cap) {
    adj[from].push_back(Arc{to, cap, static_cast<int>(adj[to].size())});
    adj[to].push_back(Arc{from, Rat(0), static_cast<int>(adj[from].size()) - 1});
  }

  bool bfs(int s, int t) {
    std::fill(level.begin(), level.end(), -1);
    std::queue<int> q;
    level[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (const Arc& a : adj[u]) {
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[u] + 1;
          q.push(a.to);
        }
      }
    }
    return level[t] >= 0;
  }

  Rat dfs(int u, int t, Rat pushed) {
    if (u == t) return pushed;
    for (int& i = iter[u]; i < static_cast<int>(adj[u].size()); ++i) {
      Arc& a = adj[u][i];
      if (a.cap > 0 && level[a.to] == level[u] + 1) {
        Rat got = dfs(a.to, t, std::min(pushed, a.cap));
        if (got > 0) {
          a.cap -= got;
          adj[a.to][a.rev].cap += got;
          return got;
        }
      }
    }
    return Rat(0);
  }

};

}  // namespace

Rat max_flow(const FlowGraph& g, const std::vector<int>& collector_ids,
             std::vector<Rat>* edge_flows) {
  std::set<int> distinct(collector_ids.begin(), collector_ids.end());
  if (distinct.size() != collector_ids.size())
    throw std::invalid_argument("collector ids must be distinct");
  for (int id : collector_ids)
    if (id < 1 || id > g.n) throw std::invalid_argument("collector id out of range");

  // a finite stand-in for infinity: larger than the sum of all finite capacities
  Rat infinity(1);
  for (const auto& e : g.edges)
    if (!e.infinite) infinity += e.capacity;

  int total = static_cast<int>(g.nodes.size()) + 1;
  int collector = total - 1;
  Dinic dinic(total);
  std::vector<std::pair<int, int>> arc_of_edge;  // (from-node, adjacency slot)
  for (const auto& e : g.edges) {
    arc_of_edge.emplace_back(e.from, static_cast<int>(dinic.adj[e.from].size()));
    dinic.add(e.from, e.to, e.infinite ? infinity : e.capacity);
  }
  for (int id : collector_ids) dinic.add(g.latest_out[id - 1], collector, infinity);

  Rat flow(0);
  while (dinic.bfs(g.source, collector)) {
    std::fill(dinic.iter.begin(), dinic.iter.end(), 0);
    for (;;) {
      Rat got = dinic.dfs(g.source, collector, infinity);
      if (got == 0) break;
      flow += got;
    }
  }
  if (edge_flows) {
    edge_flows->clear();
    for (size_t i = 0; i < g.edges.size(); ++i) {
      auto [node, slot] = arc_of_edge[i];
      Rat original = g.edges[i].infinite ? infinity : g.edges[i].capacity;
      edge_flows->push_back(original - dinic.adj[node][slot].cap);
    }
  }
  return flow;
}

Rat min_cut_over_collectors(const FlowGraph& g, const SystemParams& p) {
  if (g.n < p.k) throw std::invalid_argument("fewer than k devices");
  Rat best;
  bool first = true;
  // enumerate k-subsets of 1..n
  std::vector<int> idx(p.k);
  for (int i = 0; i < p.k; ++i) idx[i] = i + 1;
  for (;;) {
    Rat value = max_flow(g, idx);
    if (first || value < best) {
      best = value;
      first = false;
    }
    int pos = p.k - 1;
    while (pos >= 0 && idx[pos] == g.n - (p.k - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int j = pos + 1; j < p.k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return best;
}

WorstCase canonical_worst_history(const SystemParams& p, const CompositionVector& comp) {
  int total = comp.u0;
  for (int u : comp.groups) {
    if (u < 1 || u > p.t) throw std::invalid_argument("group size outside [1, t]");
    total += u;
  }
  if (comp.u0 < 0 || total != p.k) throw std::invalid_argument("composition does not sum to k");

  WorstCase wc;
  std::set<int> preserved;  // devices the collector will read; must stay alive
  for (int id = 1; id <= comp.u0; ++id) {
    preserved.insert(id);
    wc.collector.push_back(id);
  }
  std::vector<int> selected_so_far(wc.collector);

  for (int u_j : comp.groups) {
    RepairRound round;
    // fail the t smallest ids outside the preserved set
    for (int id = 1; id <= p.n && static_cast<int>(round.failed.size()) < p.t; ++id) {
      if (!preserved.count(id)) round.failed.push_back(id);
    }
    if (static_cast<int>(round.failed.size()) < p.t)
      throw std::invalid_argument("composition infeasible: not enough distinct nodes");

    std::set<int> failed_set(round.failed.begin(), round.failed.end());
    for (int i = 0; i < p.t; ++i) {
      std::vector<int> helpers = selected_so_far;  // every selected device helps
      for (int id = 1; id <= p.n && static_cast<int>(helpers.size()) < p.d; ++id) {
        if (failed_set.count(id)) continue;
        if (std::find(helpers.begin(), helpers.end(), id) != helpers.end()) continue;
        helpers.push_back(id);
      }
      if (static_cast<int>(helpers.size()) < p.d)
        throw std::invalid_argument("composition infeasible: not enough helpers");
      round.helpers.push_back(std::move(helpers));
    }

    for (int i = 0; i < u_j; ++i) {
      preserved.insert(round.failed[i]);
      selected_so_far.push_back(round.failed[i]);
      wc.collector.push_back(round.failed[i]);
    }
    wc.history.rounds.push_back(std::move(round));
  }
  return wc;
}

Rat cut_capacity(const FlowGraph& g, const std::vector<bool>& sink_side) {
  Rat total(0);
  for (const auto& e : g.edges) {
    if (!sink_side[e.from] && sink_side[e.to]) {
      if (e.infinite) throw std::logic_error("infinite edge crosses the cut");
      total += e.capacity;
    }
  }
  return total;
}

std::string graph_to_dot(const FlowGraph& g) {
  std::ostringstream out;
  out << "digraph flow {\n  rankdir=LR;\n";
  auto name = [&](int idx) {
    const FlowNode& node = g.nodes[idx];
    std::ostringstream n;
    switch (node.kind) {
      case FlowNode::Kind::Source: n << "S"; break;
      case FlowNode::Kind::BaseStation: n << "BS" << node.index; break;
      case FlowNode::Kind::In: n << "In" << node.index << "_s" << node.stage; break;
      case FlowNode::Kind::Coop1: n << "Coop1_" << node.index << "_s" << node.stage; break;
      case FlowNode::Kind::Coop2: n << "Coop2_" << node.index << "_s" << node.stage; break;
      case FlowNode::Kind::Out: n << "Out" << node.index << "_s" << node.stage; break;
      case FlowNode::Kind::Collector: n << "DC"; break;
    }
    return n.str();
  };
  for (size_t i = 0; i < g.nodes.size(); ++i) out << "  " << name(static_cast<int>(i)) << ";\n";
  for (const auto& e : g.edges) {
    out << "  " << name(e.from) << " -> " << name(e.to) << " [label=\""
        << (e.infinite ? std::string("inf") : rat_to_fraction(e.capacity)) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bscoop
