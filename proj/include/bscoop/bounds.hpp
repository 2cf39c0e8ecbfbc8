#pragma once

#include "bscoop/model.hpp"

#include <functional>
#include <vector>

namespace bscoop {

// One cut structure behind the file-size bound: u0 nodes cut at their storage
// edge plus ordered repair groups, each group contacting 1..t newcomers.
// u0 + sum(groups) = k.
struct CompositionVector {
  int u0 = 0;
  std::vector<int> groups;
};

using PsiFn = std::function<Rat(int, int)>;

// Total repair bandwidth cost per failed node:
// d*beta + (t-1)*beta' + sum_l s_l * w_l * r_l * beta.
Rat repair_cost(const SystemParams& p, const RepairVariables& v);

// d' = d + sum_l s_l * r_l (real valued).
Rat effective_d(const SystemParams& p, const RepairVariables& v);

// psi_{g,t} = floor(g/t)*t^2 + (g - floor(g/t)*t)^2.
Rat psi(int g, int t);

// Phi_{g,s} = alpha*(k-g) + g*beta*(d' - k + g/2) + beta'*g*t.
Rat phi(int g, const Rat& alpha, const Rat& beta, const Rat& beta_prime, const Rat& d_prime,
        int k, int t);

// The g-th member of the piecewise bound family:
//   Phi + g*(beta/2 - beta')        when beta >= 2*beta'
//   Phi + psi_{g,t}*(beta/2 - beta') otherwise.
// psi_hook exists for the verification harness's mutation check; production
// callers leave it unset.
Rat bound_at_g(int g, const SystemParams& p, const RepairVariables& v, const Rat& alpha,
               const PsiFn& psi_hook = nullptr);

// min over g in 0..k of bound_at_g: the largest file size this configuration
// can guarantee to reconstruct. Feasible for file size F iff result >= F.
Rat max_recoverable_file(const SystemParams& p, const RepairVariables& v, const Rat& alpha,
                         const PsiFn& psi_hook = nullptr);

// The cut value of one composition:
// u0*alpha + sum_j [ u_j*(d' - sum_{i<j} u_i)*beta + u_j*(t - u_j)*beta' ].
Rat composition_value(const CompositionVector& c, const SystemParams& p,
                      const RepairVariables& v, const Rat& alpha);

// Brute-force minimum over all ordered compositions; independent oracle for
// max_recoverable_file. Guarded at k <= 12.
Rat bound_via_compositions(const SystemParams& p, const RepairVariables& v, const Rat& alpha);

// Same minimum, returning the minimizing composition as witness.
std::pair<Rat, CompositionVector> bound_via_compositions_argmin(const SystemParams& p,
                                                                const RepairVariables& v,
                                                                const Rat& alpha);

// Visits every composition of k with group sizes in [1, t].
void for_each_composition(int k, int t, const std::function<void(const CompositionVector&)>& fn);

}  // namespace bscoop
