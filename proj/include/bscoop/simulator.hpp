#pragma once

#include "bscoop/codec.hpp"
#include "bscoop/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bscoop {

// Multi-round lazy-repair lifecycle driver: departures accumulate until t are
// pending, then one cooperative regeneration round runs through the codec.
struct Scenario {
  SystemParams params;                        // d = k for the codec family
  int rho = 0;
  std::vector<uint8_t> file;                  // content stored by the cluster
  std::vector<std::vector<int>> script;       // explicit per-round departures
  uint64_t seed = 0;                          // used when script is empty
  int rounds = 0;                             // seeded mode round count
  int departures_per_round = 0;               // seeded mode, defaults to t
  int verify_every = 1;                       // durability check cadence, 0 = off
};

struct RoundRecord {
  int round = 0;
  std::vector<int> failed;
  long long local_chunks = 0;
  long long coop_chunks = 0;
  long long bs_chunks = 0;
  Rat round_cost;              // sum over newcomers
  Rat cost_per_newcomer;
  bool durable = true;
  bool verified = false;
};

struct SimulationTrace {
  uint64_t seed = 0;
  std::vector<RoundRecord> rounds;
  Rat total_cost;
  bool cluster_died = false;
  std::string death_reason;
  CostLedger cumulative;
};

class ClusterState {
 public:
  ClusterState(const Codec& codec, const std::vector<uint8_t>& file);

  const std::vector<Codec::NodeStore>& alive() const { return alive_; }
  const std::vector<Codec::BaseStationStore>& stations() const { return stations_; }
  const std::vector<int>& pending() const { return pending_; }

  void mark_departed(int node_id);
  bool repair_due(int t) const { return static_cast<int>(pending_.size()) >= t; }

  // Runs one codec repair over the first t pending failures with the given
  // helper choice; newcomers rejoin the alive set.
  Codec::RepairSession repair_pending(const Codec& codec,
                                      const std::vector<std::vector<int>>& helpers);

  // True iff every sampled k-subset reconstructs the original file
  // (exhaustive when n <= 6).
  bool verify_durability(const Codec& codec, uint64_t sample_seed = 0) const;

  const std::vector<uint8_t>& original_file() const { return file_; }

 private:
  std::vector<Codec::NodeStore> alive_;
  std::vector<Codec::BaseStationStore> stations_;
  std::vector<int> pending_;
  std::vector<uint8_t> file_;
};

// Deterministic given the scenario (script or seed). Cluster death is
// reported in the trace, never thrown.
SimulationTrace run_scenario(const Scenario& s);

}  // namespace bscoop
