#pragma once

#include "bscoop/rational.hpp"

#include <string>
#include <vector>

namespace bscoop {

// Deployment parameters: n storage nodes, any k reconstruct the file, each
// repair round regenerates t newcomers from d helpers, assisted by M backup
// layers with per-symbol cost weights w and link-capacity fractions b.
struct SystemParams {
  int n = 0;
  int k = 0;
  int d = 0;
  int t = 0;
  int M = 0;
  std::vector<Rat> w;  // per-layer cost weight, non-descending, each >= 1
  std::vector<Rat> b;  // per-layer link fraction, each >= 0
  Rat F;               // file size in symbols
};

// Prefix-of-ones layer activation: the first rho layers are used.
struct LayerSelector {
  int rho = 0;
  std::vector<int> s;  // length M, 1 for l < rho, 0 after

  bool uses(int layer_index) const {
    return layer_index < static_cast<int>(s.size()) && s[layer_index] == 1;
  }
};

// A candidate repair operating assignment.
struct RepairVariables {
  Rat beta;               // per-helper download
  Rat beta_prime;         // per-peer cooperative download
  std::vector<Rat> r;     // BS download fractions, beta''_l = r_l * beta
  LayerSelector selector;
};

struct OperatingPoint {
  Rat alpha;  // storage per node
  Rat gamma;  // repair bandwidth cost per failed node
  RepairVariables witness;
};

// Transfer accounting for one regeneration, in symbol counts.
struct CostLedger {
  long long local_symbols = 0;
  long long coop_symbols = 0;
  std::vector<long long> bs_symbols;  // per layer
  Rat symbol_size;                    // size of one symbol in file-size units
  Rat total_cost;

  Rat recompute(const std::vector<Rat>& w) const;
};

// Returns every violated invariant; an empty list means the parameters are valid.
std::vector<std::string> validate_params(const SystemParams& p);

// Validates an assignment against its parameters the same way.
std::vector<std::string> validate_variables(const SystemParams& p, const RepairVariables& v);

// The prefix-of-ones selector with rho active layers out of M.
LayerSelector selector(int rho, int M);

// Convenience builder used by the optimizer and tests: r_l = r_full_l for
// l < rho and 0 beyond, with the matching selector.
RepairVariables make_variables(const SystemParams& p, const Rat& beta, const Rat& beta_prime,
                               const std::vector<Rat>& r, int rho);

}  // namespace bscoop
