#pragma once

#include "bscoop/bounds.hpp"
#include "bscoop/flowgraph.hpp"
#include "bscoop/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace bscoop {

struct VerifyOptions {
  int max_k = 6;
  int max_t = 3;
  int max_m = 2;
  int bound_samples = 12;    // value draws per parameter set
  int flow_samples = 2;      // value draws per flow parameter set
  int random_histories = 2;  // soundness draws per flow sample
  uint64_t seed = 1;
  bool exhaustive = false;  // acceptance-scale sweep sizes
  PsiFn psi_hook;           // harness self-test: perturbs the closed form only
};

struct VerifyReport {
  long long bound_checks = 0;
  long long flow_tight_checks = 0;
  long long flow_sound_checks = 0;
  long long regime_rescales = 0;  // samples scaled into the BS-supply regime
  std::vector<std::string> counterexamples;

  bool ok() const { return counterexamples.empty(); }
  void merge(const VerifyReport& other);
};

// Exhaustive-grid equality check of the composition enumeration against the
// piecewise closed form.
VerifyReport verify_bound_equivalence(const VerifyOptions& options);

// Canonical-history tightness and random-history soundness of the flow-graph
// oracle against the composition bound.
VerifyReport verify_flowgraph(const VerifyOptions& options);

VerifyReport run_verification(const VerifyOptions& options);

// Shared random-instance helpers (deterministic given the generator state).
Rat random_fraction(std::mt19937_64& rng, int denominator = 100);  // in [0, 1]
SystemParams random_params(std::mt19937_64& rng, int max_k, int max_t, int max_m);

// Cut value of the canonical cut for a composition on its worst-case graph:
// selected tuples on the collector side, everything else on the source side.
Rat canonical_cut_value(const FlowGraph& g, const CompositionVector& comp);

}  // namespace bscoop
