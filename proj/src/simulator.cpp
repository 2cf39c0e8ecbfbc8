#include "bscoop/simulator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bscoop {

namespace {

// bounded draw with plain modulo: bias is irrelevant here, determinism is not
uint64_t draw(std::mt19937_64& rng, uint64_t bound) { return rng() % bound; }

std::vector<int> sample_without_replacement(std::mt19937_64& rng, std::vector<int> pool,
                                            int count) {
  std::vector<int> picked;
  for (int i = 0; i < count && !pool.empty(); ++i) {
    size_t idx = static_cast<size_t>(draw(rng, pool.size()));
    picked.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  return picked;
}

}  // namespace

ClusterState::ClusterState(const Codec& codec, const std::vector<uint8_t>& file) : file_(file) {
  Codec::Encoded encoded = codec.encode(file);
  alive_ = std::move(encoded.nodes);
  stations_ = std::move(encoded.stations);
}

void ClusterState::mark_departed(int node_id) {
  auto it = std::find_if(alive_.begin(), alive_.end(),
                         [&](const Codec::NodeStore& s) { return s.node_id == node_id; });
  if (it == alive_.end()) throw std::invalid_argument("departure of a node that is not alive");
  alive_.erase(it);
  pending_.push_back(node_id);
  std::sort(pending_.begin(), pending_.end());
}

Codec::RepairSession ClusterState::repair_pending(const Codec& codec,
                                                  const std::vector<std::vector<int>>& helpers) {
  int t = codec.t();
  if (static_cast<int>(pending_.size()) < t)
    throw std::logic_error("repair_pending: fewer than t accumulated losses");
  std::vector<int> batch(pending_.begin(), pending_.begin() + t);
  Codec::RepairSession session = codec.repair(alive_, stations_, batch, helpers);
  pending_.erase(pending_.begin(), pending_.begin() + t);
  for (auto& store : session.rebuilt) alive_.push_back(store);
  std::sort(alive_.begin(), alive_.end(),
            [](const Codec::NodeStore& a, const Codec::NodeStore& b) {
              return a.node_id < b.node_id;
            });
  return session;
}

bool ClusterState::verify_durability(const Codec& codec, uint64_t sample_seed) const {
  int k = codec.k();
  int alive_count = static_cast<int>(alive_.size());
  if (alive_count < k) return false;

  auto check = [&](const std::vector<int>& subset_idx) {
    std::vector<Codec::NodeStore> stores;
    for (int idx : subset_idx) stores.push_back(alive_[idx]);
    try {
      return codec.collect(stores) == file_;
    } catch (const CodecError&) {
      return false;
    } catch (const SingularMatrixError&) {
      return false;
    }
  };

  if (codec.n() <= 6) {  // exhaustive
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      if (!check(idx)) return false;
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == alive_count - (k - pos)) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return true;
  }

  std::mt19937_64 rng(sample_seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<int> pool(alive_count);
  for (int i = 0; i < alive_count; ++i) pool[i] = i;
  for (int trial = 0; trial < 30; ++trial) {
    if (!check(sample_without_replacement(rng, pool, k))) return false;
  }
  return true;
}

SimulationTrace run_scenario(const Scenario& s) {
  const SystemParams& p = s.params;
  if (p.d != p.k) throw std::invalid_argument("the repair construction requires d = k");
  Codec codec(p.n, p.k, p.t, s.rho, Field::gf256());
  ClusterState state(codec, s.file);

  SimulationTrace trace;
  trace.seed = s.seed;
  trace.total_cost = 0;
  trace.cumulative.symbol_size = p.F / codec.chunk_count();
  trace.cumulative.bs_symbols.assign(std::max<size_t>(p.w.size(), s.rho), 0);

  std::mt19937_64 rng(s.seed);
  bool scripted = !s.script.empty();
  int total_rounds = scripted ? static_cast<int>(s.script.size()) : s.rounds;
  int per_round = s.departures_per_round > 0 ? s.departures_per_round : p.t;

  for (int round = 1; round <= total_rounds; ++round) {
    RoundRecord record;
    record.round = round;

    std::vector<int> departures;
    if (scripted) {
      departures = s.script[round - 1];
    } else {
      std::vector<int> alive_ids;
      for (const auto& store : state.alive()) alive_ids.push_back(store.node_id);
      departures = sample_without_replacement(rng, alive_ids, per_round);
      std::sort(departures.begin(), departures.end());
    }
    for (int id : departures) state.mark_departed(id);
    record.failed = departures;

    if (static_cast<int>(state.alive().size()) < p.k && !state.repair_due(p.t)) {
      trace.cluster_died = true;
      trace.death_reason = "fewer than k nodes alive with no repair due";
      trace.rounds.push_back(record);
      break;
    }

    record.round_cost = 0;
    record.cost_per_newcomer = 0;
    while (state.repair_due(p.t)) {
      // helpers: each newcomer contacts the k alive nodes with smallest ids
      std::vector<int> alive_ids;
      for (const auto& store : state.alive()) alive_ids.push_back(store.node_id);
      if (static_cast<int>(alive_ids.size()) < p.k) {
        trace.cluster_died = true;
        trace.death_reason = "not enough helpers for repair";
        break;
      }
      std::vector<std::vector<int>> helpers(
          p.t, std::vector<int>(alive_ids.begin(), alive_ids.begin() + p.k));
      Codec::RepairSession session = state.repair_pending(codec, helpers);

      record.local_chunks += session.local_chunks_per_newcomer * p.t;
      record.coop_chunks += session.coop_chunks_per_newcomer * p.t;
      record.bs_chunks += session.bs_chunks_per_newcomer * p.t;
      Rat per_newcomer = codec.ledger_cost(session, p.w, p.F);
      record.cost_per_newcomer = per_newcomer;
      record.round_cost += per_newcomer * p.t;

      CostLedger ledger = codec.session_ledger(session, p.w, p.F);
      trace.cumulative.local_symbols += ledger.local_symbols;
      trace.cumulative.coop_symbols += ledger.coop_symbols;
      for (size_t l = 0; l < ledger.bs_symbols.size(); ++l)
        trace.cumulative.bs_symbols[l] += ledger.bs_symbols[l];
    }
    if (trace.cluster_died) {
      trace.rounds.push_back(record);
      break;
    }

    trace.total_cost += record.round_cost;
    if (s.verify_every > 0 && round % s.verify_every == 0) {
      record.verified = true;
      record.durable = state.verify_durability(codec, s.seed + round);
    }
    trace.rounds.push_back(record);
  }

  trace.cumulative.total_cost = trace.cumulative.recompute(p.w);
  return trace;
}

}  // namespace bscoop
