#include "bscoop/bounds.hpp"

#include <stdexcept>

namespace bscoop {

Rat repair_cost(const SystemParams& p, const RepairVariables& v) {
  auto violations = validate_variables(p, v);
  if (!violations.empty())
    throw std::invalid_argument("repair_cost: invalid variables: " + violations.front());
  Rat cost = Rat(p.d) * v.beta + Rat(p.t - 1) * v.beta_prime;
  for (int l = 0; l < p.M; ++l) {
    if (v.selector.uses(l)) cost += p.w[l] * v.r[l] * v.beta;
  }
  return cost;
}

Rat effective_d(const SystemParams& p, const RepairVariables& v) {
  Rat d_prime(p.d);
  for (int l = 0; l < p.M; ++l) {
    if (v.selector.uses(l)) d_prime += v.r[l];
  }
  return d_prime;
}

Rat psi(int g, int t) {
  if (g < 0 || t < 1) throw std::invalid_argument("psi: needs g >= 0, t >= 1");
  long long full = g / t;
  long long rem = g - full * t;
  return Rat(full * t * t + rem * rem);
}

Rat phi(int g, const Rat& alpha, const Rat& beta, const Rat& beta_prime, const Rat& d_prime,
        int k, int t) {
  return alpha * (k - g) + Rat(g) * beta * (d_prime - k + Rat(g, 2)) + beta_prime * g * t;
}

Rat bound_at_g(int g, const SystemParams& p, const RepairVariables& v, const Rat& alpha,
               const PsiFn& psi_hook) {
  if (g < 0 || g > p.k) throw std::out_of_range("bound_at_g: g must be in [0, k]");
  Rat d_prime = effective_d(p, v);
  Rat base = phi(g, alpha, v.beta, v.beta_prime, d_prime, p.k, p.t);
  Rat half_gap = v.beta / 2 - v.beta_prime;
  if (v.beta >= 2 * v.beta_prime) return base + Rat(g) * half_gap;
  Rat correction = psi_hook ? psi_hook(g, p.t) : psi(g, p.t);
  return base + correction * half_gap;
}

Rat max_recoverable_file(const SystemParams& p, const RepairVariables& v, const Rat& alpha,
                         const PsiFn& psi_hook) {
  Rat best = bound_at_g(0, p, v, alpha, psi_hook);
  for (int g = 1; g <= p.k; ++g) {
    Rat candidate = bound_at_g(g, p, v, alpha, psi_hook);
    if (candidate < best) best = candidate;
  }
  return best;
}

Rat composition_value(const CompositionVector& c, const SystemParams& p,
                      const RepairVariables& v, const Rat& alpha) {
  Rat d_prime = effective_d(p, v);
  Rat value = alpha * c.u0;
  long long contacted = c.u0;
  for (int uj : c.groups) {
    value += Rat(uj) * (d_prime - contacted) * v.beta;
    value += Rat(uj) * Rat(p.t - uj) * v.beta_prime;
    contacted += uj;
  }
  return value;
}

void for_each_composition(int k, int t, const std::function<void(const CompositionVector&)>& fn) {
  CompositionVector c;
  for (int u0 = 0; u0 <= k; ++u0) {
    c.u0 = u0;
    c.groups.clear();
    // ordered compositions of k - u0 into parts in [1, t]
    int remaining = k - u0;
    std::function<void(int)> recurse = [&](int left) {
      if (left == 0) {
        fn(c);
        return;
      }
      for (int part = 1; part <= t && part <= left; ++part) {
        c.groups.push_back(part);
        recurse(left - part);
        c.groups.pop_back();
      }
    };
    recurse(remaining);
  }
}

std::pair<Rat, CompositionVector> bound_via_compositions_argmin(const SystemParams& p,
                                                                const RepairVariables& v,
                                                                const Rat& alpha) {
  if (p.k > 12) throw std::invalid_argument("bound_via_compositions: k > 12 enumeration guard");
  Rat best;
  CompositionVector best_comp;
  bool first = true;
  for_each_composition(p.k, p.t, [&](const CompositionVector& c) {
    Rat value = composition_value(c, p, v, alpha);
    if (first || value < best) {
      best = value;
      best_comp = c;
      first = false;
    }
  });
  return {best, best_comp};
}

Rat bound_via_compositions(const SystemParams& p, const RepairVariables& v, const Rat& alpha) {
  return bound_via_compositions_argmin(p, v, alpha).first;
}

}  // namespace bscoop
